#include "lipprint/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

#include "lipprint/error.hpp"

namespace lipprint {

namespace {

void check_dimensions(int width, int height) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "image dimensions must be positive, got " +
                    std::to_string(width) + "x" + std::to_string(height));
  }
}

// Cursor over a netpbm header: whitespace separated tokens, '#' comments.
class PnmHeaderReader {
 public:
  explicit PnmHeaderReader(std::span<const std::uint8_t> bytes)
      : bytes_(bytes) {}

  long next_number() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      throw Error(ErrorCode::kMalformedHeader, "PNM header: expected number");
    }
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000) {
        throw Error(ErrorCode::kMalformedHeader, "PNM header: value too large");
      }
      ++pos_;
    }
    return value;
  }

  // Exactly one whitespace byte separates the header from the raster.
  std::size_t raster_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw Error(ErrorCode::kMalformedHeader, "PNM header: missing separator");
    }
    return pos_ + 1;
  }

  void skip(std::size_t n) { pos_ += n; }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::uint32_t read_u32(std::span<const std::uint8_t> b, std::size_t off) {
  return static_cast<std::uint32_t>(b[off]) |
         (static_cast<std::uint32_t>(b[off + 1]) << 8) |
         (static_cast<std::uint32_t>(b[off + 2]) << 16) |
         (static_cast<std::uint32_t>(b[off + 3]) << 24);
}

std::uint16_t read_u16(std::span<const std::uint8_t> b, std::size_t off) {
  return static_cast<std::uint16_t>(b[off] | (b[off + 1] << 8));
}

}  // namespace

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
  check_dimensions(width, height);
  data_.assign(static_cast<std::size_t>(width) * height, fill);
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_dimensions(width, height);
  if (data_.size() != static_cast<std::size_t>(width) * height) {
    throw Error(ErrorCode::kDimensionMismatch,
                "pixel buffer length does not match width x height");
  }
}

std::uint8_t GrayImage::clamped(int x, int y) const noexcept {
  x = std::clamp(x, 0, width_ - 1);
  y = std::clamp(y, 0, height_ - 1);
  return data_[index(x, y)];
}

std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept {
  // Integer form of round(0.299R + 0.587G + 0.114B); exact for 8-bit inputs.
  const int weighted = 299 * r + 587 * g + 114 * b;
  return static_cast<std::uint8_t>((weighted + 500) / 1000);
}

GrayImage decode_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6')) {
    throw Error(ErrorCode::kMalformedHeader, "not a binary PGM/PPM file");
  }
  const bool colour = bytes[1] == '6';
  PnmHeaderReader reader(bytes);
  reader.skip(2);
  const long width = reader.next_number();
  const long height = reader.next_number();
  const long maxval = reader.next_number();
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kMalformedHeader, "PNM header: zero dimension");
  }
  if (maxval <= 0) {
    throw Error(ErrorCode::kMalformedHeader, "PNM header: bad maxval");
  }
  if (maxval > 255) {
    throw Error(ErrorCode::kUnsupportedBitDepth,
                "only 8-bit PNM is supported (maxval " + std::to_string(maxval) +
                    ")");
  }
  const std::size_t offset = reader.raster_offset();
  const std::size_t count = static_cast<std::size_t>(width) * height;
  const std::size_t channels = colour ? 3 : 1;
  if (bytes.size() < offset + count * channels) {
    throw Error(ErrorCode::kMalformedHeader, "PNM raster is truncated");
  }
  std::vector<std::uint8_t> data(count);
  const auto raster = bytes.subspan(offset);
  for (std::size_t i = 0; i < count; ++i) {
    data[i] = colour ? luma(raster[3 * i], raster[3 * i + 1], raster[3 * i + 2])
                     : raster[i];
  }
  return GrayImage(static_cast<int>(width), static_cast<int>(height),
                   std::move(data));
}

GrayImage decode_bmp(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 54 || bytes[0] != 'B' || bytes[1] != 'M') {
    throw Error(ErrorCode::kMalformedHeader, "not a BMP file");
  }
  const std::uint32_t data_offset = read_u32(bytes, 10);
  const std::uint32_t dib_size = read_u32(bytes, 14);
  if (dib_size < 40 || 14 + static_cast<std::size_t>(dib_size) > bytes.size()) {
    throw Error(ErrorCode::kMalformedHeader, "unsupported BMP info header");
  }
  const auto width = static_cast<std::int32_t>(read_u32(bytes, 18));
  const auto raw_height = static_cast<std::int32_t>(read_u32(bytes, 22));
  const std::uint16_t bpp = read_u16(bytes, 28);
  const std::uint32_t compression = read_u32(bytes, 30);
  std::uint32_t palette_size = read_u32(bytes, 46);

  if (width <= 0 || raw_height == 0) {
    throw Error(ErrorCode::kMalformedHeader, "BMP header: zero dimension");
  }
  if (bpp != 8 && bpp != 24) {
    throw Error(ErrorCode::kUnsupportedBitDepth,
                "BMP bit depth " + std::to_string(bpp) +
                    " unsupported (need 8 or 24)");
  }
  if (compression != 0) {
    throw Error(ErrorCode::kMalformedHeader, "compressed BMP is not supported");
  }
  const bool top_down = raw_height < 0;
  const int height = top_down ? -raw_height : raw_height;

  std::vector<std::uint8_t> palette_luma;
  if (bpp == 8) {
    if (palette_size == 0) palette_size = 256;
    if (palette_size > 256) {
      throw Error(ErrorCode::kMalformedHeader, "BMP palette too large");
    }
    const std::size_t palette_offset = 14 + dib_size;
    if (palette_offset + 4 * palette_size > bytes.size()) {
      throw Error(ErrorCode::kMalformedHeader, "BMP palette is truncated");
    }
    palette_luma.resize(256, 0);
    for (std::uint32_t i = 0; i < palette_size; ++i) {
      const std::size_t p = palette_offset + 4 * i;
      palette_luma[i] = luma(bytes[p + 2], bytes[p + 1], bytes[p]);  // BGRA
    }
  }

  const std::size_t row_bytes =
      (static_cast<std::size_t>(width) * (bpp / 8) + 3) / 4 * 4;
  if (static_cast<std::size_t>(data_offset) + row_bytes * height > bytes.size()) {
    throw Error(ErrorCode::kMalformedHeader, "BMP raster is truncated");
  }

  GrayImage img(width, height);
  for (int row = 0; row < height; ++row) {
    const int y = top_down ? row : height - 1 - row;
    const std::size_t base = data_offset + row_bytes * row;
    for (int x = 0; x < width; ++x) {
      if (bpp == 8) {
        img.at(x, y) = palette_luma[bytes[base + x]];
      } else {
        const std::size_t p = base + 3 * static_cast<std::size_t>(x);
        img.at(x, y) = luma(bytes[p + 2], bytes[p + 1], bytes[p]);
      }
    }
  }
  return img;
}

GrayImage decode_image(std::span<const std::uint8_t> bytes) {
  if (bytes.size() >= 2 && bytes[0] == 'P') return decode_pgm(bytes);
  if (bytes.size() >= 2 && bytes[0] == 'B' && bytes[1] == 'M') {
    return decode_bmp(bytes);
  }
  throw Error(ErrorCode::kMalformedHeader, "unrecognised image format");
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& img) {
  const std::string header = "P5\n" + std::to_string(img.width()) + " " +
                             std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.pixels().begin(), img.pixels().end());
  return out;
}

GrayImage load_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kUnreadableFile, "cannot open " + path.string());
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw Error(ErrorCode::kUnreadableFile, "read failed: " + path.string());
  }
  return decode_image(bytes);
}

void save_pgm(const GrayImage& img, const std::filesystem::path& path) {
  const auto bytes = encode_pgm(img);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

std::vector<double> gaussian_kernel(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::kInvalidArgument, "gaussian sigma must be > 0");
  }
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double w = std::exp(-(i * i) / (2.0 * sigma * sigma));
    kernel[i + radius] = w;
    sum += w;
  }
  for (double& w : kernel) w /= sum;
  return kernel;
}

GrayImage gaussian_smooth(const GrayImage& img, double sigma) {
  const auto kernel = gaussian_kernel(sigma);
  const int radius = static_cast<int>(kernel.size() / 2);
  const int w = img.width();
  const int h = img.height();

  std::vector<double> rows(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        acc += kernel[k + radius] * img.clamped(x + k, y);
      }
      rows[static_cast<std::size_t>(y) * w + x] = acc;
    }
  }

  GrayImage out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        const int yy = std::clamp(y + k, 0, h - 1);
        acc += kernel[k + radius] * rows[static_cast<std::size_t>(yy) * w + x];
      }
      out.at(x, y) =
          static_cast<std::uint8_t>(std::clamp(std::lround(acc), 0L, 255L));
    }
  }
  return out;
}

GrayImage rotate_clockwise(const GrayImage& img) {
  GrayImage out(img.height(), img.width());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      out.at(img.height() - 1 - y, x) = img.at(x, y);
    }
  }
  return out;
}

GrayImage crop(const GrayImage& img, int x0, int y0, int width, int height) {
  if (x0 < 0 || y0 < 0 || width <= 0 || height <= 0 ||
      x0 + width > img.width() || y0 + height > img.height()) {
    throw Error(ErrorCode::kInvalidArgument, "crop rectangle out of bounds");
  }
  GrayImage out(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) out.at(x, y) = img.at(x0 + x, y0 + y);
  }
  return out;
}

}  // namespace lipprint
