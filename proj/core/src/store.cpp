#include "lipprint/store.hpp"

#include <openssl/evp.h>

#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include "lipprint/error.hpp"

namespace lipprint {

namespace {

constexpr std::string_view kTemplateMagic = "lipprint-template 1";
constexpr std::string_view kModelMagic = "lipprint-model 1";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    lines.push_back(text.substr(0, nl));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const auto pos = s.find(sep);
    out.push_back(s.substr(0, pos));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool parse_double(std::string_view s, double& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

/// Splits "key: value"; returns false when the separator is missing.
bool key_value(std::string_view line, std::string_view& key, std::string_view& value) {
  const auto colon = line.find(':');
  if (colon == std::string_view::npos) return false;
  key = trim(line.substr(0, colon));
  value = trim(line.substr(colon + 1));
  return true;
}

[[noreturn]] void malformed(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

std::vector<double> parse_row(std::string_view text, std::size_t expected, ErrorCode code) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos >= text.size()) break;
    auto end = text.find(' ', pos);
    if (end == std::string_view::npos) end = text.size();
    double v = 0.0;
    if (!parse_double(text.substr(pos, end - pos), v)) {
      malformed(code, "bad number '" + std::string(text.substr(pos, end - pos)) + "'");
    }
    out.push_back(v);
    pos = end;
  }
  if (out.size() != expected) {
    malformed(code, "expected " + std::to_string(expected) + " values, found " +
                        std::to_string(out.size()));
  }
  return out;
}

/// Body lines up to (not including) the checksum line, and the stated digest.
struct SignedBody {
  std::vector<std::string_view> lines;
  std::string body;
  std::string checksum;
};

SignedBody split_signed(std::string_view text, ErrorCode malformed_code,
                        std::string_view what) {
  SignedBody out;
  auto lines = split_lines(text);
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) malformed(malformed_code, std::string(what) + " is empty");
  std::string_view key, value;
  if (!key_value(lines.back(), key, value) || key != "checksum") {
    malformed(malformed_code, std::string(what) + " has no checksum line (truncated?)");
  }
  out.checksum = std::string(value);
  lines.pop_back();
  for (auto l : lines) {
    out.body.append(l);
    out.body.push_back('\n');
  }
  out.lines = std::move(lines);
  return out;
}

void verify_checksum(const SignedBody& s, std::string_view what) {
  if (sha256_hex(s.body) != s.checksum) {
    throw Error(ErrorCode::kDigestMismatch,
                std::string(what) + " checksum mismatch (file modified?)");
  }
}

}  // namespace

std::string sha256_hex(std::span<const std::uint8_t> bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw Error(ErrorCode::kIo, "SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

std::string sha256_hex(std::string_view text) {
  return sha256_hex(std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::string source_digest(const GrayImage& upper, const GrayImage& lower) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(upper.size() + lower.size() + 16);
  for (const GrayImage* img : {&upper, &lower}) {
    for (int dim : {img->width(), img->height()}) {
      for (int shift = 0; shift < 32; shift += 8) {
        bytes.push_back(static_cast<std::uint8_t>(static_cast<unsigned>(dim) >> shift));
      }
    }
    bytes.insert(bytes.end(), img->pixels().begin(), img->pixels().end());
  }
  return sha256_hex(bytes);
}

void validate_subject_id(std::string_view id) {
  if (id.empty()) throw Error(ErrorCode::kInvalidArgument, "subject id is empty");
  if (trim(id) != id) {
    throw Error(ErrorCode::kInvalidArgument, "subject id has surrounding whitespace");
  }
  for (unsigned char c : id) {
    if (c < 0x20 || c == 0x7f || c == ',') {
      throw Error(ErrorCode::kInvalidArgument,
                  "subject id '" + std::string(id) + "' contains a forbidden character");
    }
  }
}

std::int64_t current_timestamp() {
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    std::int64_t v = 0;
    const std::string_view s(epoch);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && ptr == s.data() + s.size()) return v;
  }
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::string serialize_template(const Template& t) {
  validate_subject_id(t.subject_id);
  std::string body;
  body += kTemplateMagic;
  body += "\nsubject_id: " + t.subject_id;
  body += "\nmode: " + std::string(to_string(t.mode()));
  body += "\nsource_hash: " + t.source_hash;
  body += "\ncreated_at: " + std::to_string(t.created_at) + "\n";
  auto append_row = [&](std::string_view key, const auto& row) {
    body += key;
    body += ':';
    for (double v : row) {
      body += ' ';
      body += format_double(v);
    }
    body += '\n';
  };
  if (const auto* fast = std::get_if<FastFeature>(&t.feature)) {
    append_row("values", fast->values);
  } else {
    for (const auto& row : std::get<AccurateFeature>(t.feature).values) append_row("row", row);
  }
  return body + "checksum: " + sha256_hex(body) + "\n";
}

Template parse_template(std::string_view text) {
  constexpr auto kBad = ErrorCode::kMalformedTemplate;
  const SignedBody signed_body = split_signed(text, kBad, "template");
  const auto& lines = signed_body.lines;
  if (lines.empty() || trim(lines.front()) != kTemplateMagic) {
    malformed(kBad, "missing template header");
  }

  Template t;
  std::optional<MatchMode> mode;
  bool have_subject = false, have_hash = false, have_time = false;
  std::vector<std::vector<double>> rows;
  std::optional<std::vector<double>> fast_values;

  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::string_view key, value;
    if (!key_value(lines[i], key, value)) {
      malformed(kBad, "line " + std::to_string(i + 1) + " is not 'key: value'");
    }
    if (key == "subject_id") {
      t.subject_id = std::string(value);
      have_subject = true;
    } else if (key == "mode") {
      try {
        mode = parse_mode(value);
      } catch (const Error&) {
        malformed(kBad, "unknown mode '" + std::string(value) + "'");
      }
    } else if (key == "source_hash") {
      t.source_hash = std::string(value);
      have_hash = true;
    } else if (key == "created_at") {
      const auto [ptr, ec] =
          std::from_chars(value.data(), value.data() + value.size(), t.created_at);
      if (ec != std::errc() || ptr != value.data() + value.size()) {
        malformed(kBad, "bad created_at");
      }
      have_time = true;
    } else if (key == "values") {
      fast_values = parse_row(value, 8, kBad);
    } else if (key == "row") {
      rows.push_back(parse_row(value, AccurateFeature::kCols, kBad));
    } else {
      malformed(kBad, "unknown key '" + std::string(key) + "'");
    }
  }
  if (!have_subject || !mode || !have_hash || !have_time) {
    malformed(kBad, "template is missing a required field");
  }
  try {
    validate_subject_id(t.subject_id);
  } catch (const Error& e) {
    malformed(kBad, e.what());
  }

  if (*mode == MatchMode::kFast) {
    if (!fast_values || !rows.empty()) malformed(kBad, "fast template needs one values line");
    FastFeature f;
    for (std::size_t k = 0; k < 8; ++k) {
      if ((*fast_values)[k] < 0.0) malformed(kBad, "negative feature value");
      f.values[k] = (*fast_values)[k];
    }
    t.feature = f;
  } else {
    if (fast_values || rows.size() != AccurateFeature::kRows) {
      malformed(kBad, "accurate template needs exactly 4 row lines");
    }
    AccurateFeature f;
    for (std::size_t r = 0; r < AccurateFeature::kRows; ++r) {
      for (std::size_t c = 0; c < AccurateFeature::kCols; ++c) {
        const double v = rows[r][c];
        if (v < 0.0 || v != std::floor(v)) {
          malformed(kBad, "accurate entries must be non-negative integers");
        }
        f.values[r][c] = v;
      }
    }
    t.feature = f;
  }
  verify_checksum(signed_body, "template");
  return t;
}

std::filesystem::path template_path(const std::filesystem::path& store_dir,
                                    std::string_view subject_id,
                                    std::string_view source_hash, MatchMode mode) {
  std::string name;
  for (char c : subject_id) {
    const bool safe = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ||
                      c == '.';
    name.push_back(safe ? c : '_');
  }
  name += '-';
  name += source_hash.substr(0, 16);
  name += '-';
  name += to_string(mode);
  name += ".tpl";
  return store_dir / name;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::kIo, "write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::kIo, "cannot rename into " + path.string());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kUnreadableFile, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "read failed: " + path.string());
  return buf.str();
}

std::filesystem::path save_template(const Template& t, const std::filesystem::path& store_dir) {
  std::error_code ec;
  std::filesystem::create_directories(store_dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create store " + store_dir.string());
  const auto path = template_path(store_dir, t.subject_id, t.source_hash, t.mode());
  write_template(t, path);
  return path;
}

void write_template(const Template& t, const std::filesystem::path& path) {
  write_text_file(path, serialize_template(t));
}

Template load_template(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return parse_template(text);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string serialize_model(const ThresholdModel& model) {
  std::string body(kModelMagic);
  body += '\n';
  if (model.t_fast) body += "t_fast: " + format_double(*model.t_fast) + "\n";
  if (model.t_accurate) body += "t_accurate: " + format_double(*model.t_accurate) + "\n";
  for (const auto& p : model.provenance) {
    // Sample labels share the comma-separated line, so they follow the id rules.
    for (const auto& field : {p.subject_id, p.first_sample, p.second_sample}) {
      validate_subject_id(field);
    }
    body += "provenance: " + std::string(to_string(p.mode)) + "," + p.subject_id + "," +
            p.first_sample + "," + p.second_sample + "," + format_double(p.distance) + "\n";
  }
  return body + "checksum: " + sha256_hex(body) + "\n";
}

ThresholdModel parse_model(std::string_view text) {
  constexpr auto kBad = ErrorCode::kMalformedTemplate;
  const SignedBody signed_body = split_signed(text, kBad, "model");
  const auto& lines = signed_body.lines;
  if (lines.empty() || trim(lines.front()) != kModelMagic) malformed(kBad, "missing model header");

  ThresholdModel m;
  auto parse_threshold = [&](std::string_view v) {
    double d = 0.0;
    if (!parse_double(v, d) || d < 0.0) malformed(kBad, "bad threshold '" + std::string(v) + "'");
    return d;
  };
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::string_view key, value;
    if (!key_value(lines[i], key, value)) malformed(kBad, "model line is not 'key: value'");
    if (key == "t_fast") {
      m.t_fast = parse_threshold(value);
    } else if (key == "t_accurate") {
      m.t_accurate = parse_threshold(value);
    } else if (key == "provenance") {
      const auto fields = split(value, ',');
      if (fields.size() != 5) malformed(kBad, "provenance needs 5 fields");
      CalibrationPair p;
      try {
        p.mode = parse_mode(fields[0]);
      } catch (const Error&) {
        malformed(kBad, "bad provenance mode");
      }
      p.subject_id = std::string(fields[1]);
      p.first_sample = std::string(fields[2]);
      p.second_sample = std::string(fields[3]);
      p.distance = parse_threshold(fields[4]);
      m.provenance.push_back(std::move(p));
    } else {
      malformed(kBad, "unknown model key '" + std::string(key) + "'");
    }
  }
  verify_checksum(signed_body, "model");
  return m;
}

void save_model(const ThresholdModel& model, const std::filesystem::path& path) {
  write_text_file(path, serialize_model(model));
}

ThresholdModel load_model(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return parse_model(text);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

CorpusManifest CorpusManifest::parse(std::string_view text,
                                     const std::filesystem::path& base_dir) {
  constexpr auto kBad = ErrorCode::kMalformedManifest;
  CorpusManifest m;
  std::set<std::filesystem::path> seen;
  std::size_t line_no = 0;
  for (std::string_view raw : split_lines(text)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split(line, ',');
    const std::string where = "manifest line " + std::to_string(line_no) + ": ";
    if (fields.size() != 4) malformed(kBad, where + "expected 4 columns");
    if (trim(fields[0]) == "subject_id" && trim(fields[3]) == "role") continue;

    ManifestEntry e;
    e.subject_id = std::string(trim(fields[0]));
    if (e.subject_id.empty()) malformed(kBad, where + "empty subject id");
    try {
      validate_subject_id(e.subject_id);
    } catch (const Error& err) {
      malformed(kBad, where + err.what());
    }
    const std::string_view upper = trim(fields[1]);
    const std::string_view lower = trim(fields[2]);
    if (upper.empty() || lower.empty()) malformed(kBad, where + "empty image path");
    e.upper_path = base_dir / std::filesystem::path(upper);
    e.lower_path = base_dir / std::filesystem::path(lower);
    const std::string_view role = trim(fields[3]);
    if (role == "train") {
      e.role = SampleRole::kTrain;
    } else if (role == "test") {
      e.role = SampleRole::kTest;
    } else {
      malformed(kBad, where + "role must be train or test");
    }
    for (const auto& p : {e.upper_path, e.lower_path}) {
      if (!seen.insert(p.lexically_normal()).second) {
        malformed(kBad, where + "duplicate path " + p.string());
      }
    }
    m.entries.push_back(std::move(e));
  }
  if (m.entries.empty()) malformed(kBad, "manifest has no entries");
  return m;
}

CorpusManifest CorpusManifest::load(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  return parse(text, path.parent_path());
}

std::string serialize_manifest(const CorpusManifest& manifest) {
  std::string out = "subject_id,upper_path,lower_path,role\n";
  for (const auto& e : manifest.entries) {
    out += e.subject_id + "," + e.upper_path.string() + "," + e.lower_path.string() + "," +
           (e.role == SampleRole::kTrain ? "train" : "test") + "\n";
  }
  return out;
}

}  // namespace lipprint
