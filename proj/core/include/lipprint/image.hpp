#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace lipprint {

/// Row-major 8-bit grayscale raster. Width and height are always > 0.
class GrayImage {
 public:
  GrayImage(int width, int height, std::uint8_t fill = 0);
  GrayImage(int width, int height, std::vector<std::uint8_t> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }

  std::uint8_t at(int x, int y) const { return data_[index(x, y)]; }
  std::uint8_t& at(int x, int y) { return data_[index(x, y)]; }

  // Clamp-to-edge read; coordinates outside the raster replicate the border.
  std::uint8_t clamped(int x, int y) const noexcept;

  std::span<const std::uint8_t> pixels() const noexcept { return data_; }
  std::span<std::uint8_t> pixels() noexcept { return data_; }

  bool operator==(const GrayImage&) const = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::vector<std::uint8_t> data_;
};

/// Upper and lower lip imprints of one acquisition.
struct LipPrintPair {
  GrayImage upper;
  GrayImage lower;
  std::string subject_id;
};

// Luma conversion used for colour inputs: round(0.299R + 0.587G + 0.114B).
std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept;

// Decoders for in-memory files. Format is sniffed from the magic bytes.
GrayImage decode_image(std::span<const std::uint8_t> bytes);
GrayImage decode_pgm(std::span<const std::uint8_t> bytes);
GrayImage decode_bmp(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> encode_pgm(const GrayImage& img);

GrayImage load_image(const std::filesystem::path& path);
void save_pgm(const GrayImage& img, const std::filesystem::path& path);

/// Sampled, unit-sum 1-D Gaussian of radius ceil(3 * sigma).
std::vector<double> gaussian_kernel(double sigma);

/// Gaussian smoothing with clamp-to-edge borders. Separable, but the result
/// equals convolving with the normalised 2-D sampled kernel; it is rounded
/// only once at the end.
GrayImage gaussian_smooth(const GrayImage& img, double sigma);

// Quarter turn clockwise: out(H-1-y, x) = in(x, y).
GrayImage rotate_clockwise(const GrayImage& img);

GrayImage crop(const GrayImage& img, int x0, int y0, int width, int height);

}  // namespace lipprint
