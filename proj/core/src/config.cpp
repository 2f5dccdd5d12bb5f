#include "lipprint/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "lipprint/error.hpp"

namespace lipprint {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(std::size_t line_no, const std::string& msg) {
  throw Error(ErrorCode::kMalformedConfig,
              "line " + std::to_string(line_no) + ": " + msg);
}

double parse_number(std::string_view s, std::size_t line_no) {
  double v = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    fail(line_no, "expected a number, got '" + std::string(s) + "'");
  }
  return v;
}

std::string_view strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

template <typename T>
const T& get_as(const std::map<std::string, KeyValueFile::Value>& values,
                const std::string& key, const char* kind) {
  const auto it = values.find(key);
  if (it == values.end()) {
    throw Error(ErrorCode::kMalformedConfig, "missing key '" + key + "'");
  }
  const T* v = std::get_if<T>(&it->second);
  if (!v) {
    throw Error(ErrorCode::kMalformedConfig,
                "key '" + key + "' must be " + std::string(kind));
  }
  return *v;
}

}  // namespace

KeyValueFile KeyValueFile::parse(std::string_view text) {
  KeyValueFile out;
  std::string section;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    line = trim(strip_comment(line));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section.empty()) fail(line_no, "empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
    const std::string_view bare_key = trim(line.substr(0, eq));
    const std::string_view raw = trim(line.substr(eq + 1));
    if (bare_key.empty()) fail(line_no, "empty key");
    if (raw.empty()) fail(line_no, "missing value");
    const std::string key =
        section.empty() ? std::string(bare_key) : section + "." + std::string(bare_key);
    if (out.values_.count(key)) fail(line_no, "duplicate key '" + key + "'");

    Value value;
    if (raw == "true" || raw == "false") {
      value = raw == "true";
    } else if (raw.front() == '"') {
      if (raw.size() < 2 || raw.back() != '"') fail(line_no, "unterminated string");
      value = std::string(raw.substr(1, raw.size() - 2));
    } else if (raw.front() == '[') {
      if (raw.back() != ']') fail(line_no, "unterminated array");
      std::vector<double> items;
      std::string_view body = trim(raw.substr(1, raw.size() - 2));
      while (!body.empty()) {
        const auto comma = body.find(',');
        const std::string_view item = trim(body.substr(0, comma));
        if (item.empty()) fail(line_no, "empty array element");
        items.push_back(parse_number(item, line_no));
        body = comma == std::string_view::npos ? std::string_view{}
                                               : trim(body.substr(comma + 1));
      }
      value = std::move(items);
    } else {
      value = parse_number(raw, line_no);
    }
    out.values_.emplace(key, std::move(value));
  }
  return out;
}

KeyValueFile KeyValueFile::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kUnreadableFile, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse(buf.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

double KeyValueFile::number(const std::string& key) const {
  return get_as<double>(values_, key, "a number");
}
bool KeyValueFile::boolean(const std::string& key) const {
  return get_as<bool>(values_, key, "true or false");
}
const std::string& KeyValueFile::string(const std::string& key) const {
  return get_as<std::string>(values_, key, "a quoted string");
}
const std::vector<double>& KeyValueFile::array(const std::string& key) const {
  return get_as<std::vector<double>>(values_, key, "an array");
}

PipelineConfig parse_pipeline_config(const KeyValueFile& file) {
  static const std::set<std::string> known = {
      "sigma",          "canny_low",     "canny_high",       "sobel_threshold",
      "exclusive_directions", "bridge_flanks", "sobel_source", "min_component_px",
      "extra_orientations"};
  for (const auto& [key, _] : file.values()) {
    if (!known.count(key)) {
      throw Error(ErrorCode::kMalformedConfig, "unknown config key '" + key + "'");
    }
  }

  PipelineConfig c;
  if (file.contains("sigma")) c.sigma = file.number("sigma");
  if (file.contains("canny_low")) c.edges.canny_low = file.number("canny_low");
  if (file.contains("canny_high")) c.edges.canny_high = file.number("canny_high");
  if (file.contains("sobel_threshold")) {
    c.edges.sobel_threshold = file.number("sobel_threshold");
  }
  if (file.contains("exclusive_directions")) {
    c.edges.exclusive_directions = file.boolean("exclusive_directions");
  }
  if (file.contains("bridge_flanks")) c.edges.bridge_flanks = file.boolean("bridge_flanks");
  if (file.contains("sobel_source")) {
    const std::string& s = file.string("sobel_source");
    if (s == "smoothed") {
      c.edges.sobel_source = SobelSource::kSmoothed;
    } else if (s == "canny") {
      c.edges.sobel_source = SobelSource::kCanny;
    } else {
      throw Error(ErrorCode::kMalformedConfig,
                  "sobel_source must be \"smoothed\" or \"canny\"");
    }
  }
  if (file.contains("min_component_px")) {
    const double v = file.number("min_component_px");
    if (v < 1 || v != static_cast<double>(static_cast<std::size_t>(v))) {
      throw Error(ErrorCode::kMalformedConfig, "min_component_px must be an integer >= 1");
    }
    c.min_component_px = static_cast<std::size_t>(v);
  }
  if (file.contains("extra_orientations")) {
    c.extra_orientations_deg = file.array("extra_orientations");
  }
  try {
    c.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kMalformedConfig, e.what());
  }
  return c;
}

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
  return parse_pipeline_config(KeyValueFile::load(path));
}

std::string describe(const PipelineConfig& c) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "sigma=%g canny_low=%g canny_high=%g sobel_threshold=%g "
                "exclusive_directions=%s bridge_flanks=%s sobel_source=%s "
                "min_component_px=%zu",
                c.sigma, c.edges.canny_low, c.edges.canny_high, c.edges.sobel_threshold,
                c.edges.exclusive_directions ? "true" : "false",
                c.edges.bridge_flanks ? "true" : "false",
                c.edges.sobel_source == SobelSource::kCanny ? "canny" : "smoothed",
                c.min_component_px);
  return buf;
}

}  // namespace lipprint
