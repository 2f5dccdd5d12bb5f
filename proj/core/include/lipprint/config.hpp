#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lipprint/features.hpp"

namespace lipprint {

/// Flat TOML subset: `key = value` lines, `[section]` headers prefixing keys
/// with "section.", `#` comments. Values are numbers, booleans, quoted strings
/// or single-line arrays of numbers.
class KeyValueFile {
 public:
  using Value = std::variant<double, bool, std::string, std::vector<double>>;

  static KeyValueFile parse(std::string_view text);
  static KeyValueFile load(const std::filesystem::path& path);

  bool contains(const std::string& key) const { return values_.count(key) != 0; }
  const std::map<std::string, Value>& values() const { return values_; }

  double number(const std::string& key) const;
  bool boolean(const std::string& key) const;
  const std::string& string(const std::string& key) const;
  const std::vector<double>& array(const std::string& key) const;

 private:
  std::map<std::string, Value> values_;
};

/// Unknown keys are rejected so typos do not silently fall back to defaults.
PipelineConfig parse_pipeline_config(const KeyValueFile& file);
PipelineConfig load_pipeline_config(const std::filesystem::path& path);

/// One-line rendering of every effective tunable, for run logs.
std::string describe(const PipelineConfig& config);

}  // namespace lipprint
