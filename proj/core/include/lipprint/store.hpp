#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lipprint/image.hpp"
#include "lipprint/matching.hpp"

namespace lipprint {

/// Hex SHA-256.
std::string sha256_hex(std::span<const std::uint8_t> bytes);
std::string sha256_hex(std::string_view text);

/// Digest over both decoded rasters (dimensions included), upper first.
std::string source_digest(const GrayImage& upper, const GrayImage& lower);

/// Subject ids end up in CSV rows and file names: non-empty, no commas, no
/// control characters, no surrounding whitespace.
void validate_subject_id(std::string_view id);

/// Enrolment record.
struct Template {
  std::string subject_id;
  Feature feature;
  std::string source_hash;
  std::int64_t created_at = 0;  // unix seconds

  MatchMode mode() const { return mode_of(feature); }
  bool operator==(const Template&) const = default;
};

/// Honours SOURCE_DATE_EPOCH so repeated runs can produce identical files.
std::int64_t current_timestamp();

// Line-oriented text. Feature values use 17 significant digits so every
// double survives the round trip; a trailing checksum line guards the body.
std::string serialize_template(const Template& t);
Template parse_template(std::string_view text);

/// <subject>-<digest prefix>-<mode>.tpl inside store_dir.
std::filesystem::path template_path(const std::filesystem::path& store_dir,
                                    std::string_view subject_id,
                                    std::string_view source_hash, MatchMode mode);

/// Writes atomically (temp file + rename) and returns the final path.
std::filesystem::path save_template(const Template& t,
                                    const std::filesystem::path& store_dir);
void write_template(const Template& t, const std::filesystem::path& path);
Template load_template(const std::filesystem::path& path);

std::string serialize_model(const ThresholdModel& model);
ThresholdModel parse_model(std::string_view text);
void save_model(const ThresholdModel& model, const std::filesystem::path& path);
ThresholdModel load_model(const std::filesystem::path& path);

enum class SampleRole { kTrain, kTest };

struct ManifestEntry {
  std::string subject_id;
  std::filesystem::path upper_path;
  std::filesystem::path lower_path;
  SampleRole role = SampleRole::kTest;
};

/// CSV `subject_id,upper_path,lower_path,role`; optional header row, '#'
/// comments and blank lines allowed. Relative paths resolve against base_dir.
struct CorpusManifest {
  std::vector<ManifestEntry> entries;

  static CorpusManifest parse(std::string_view text, const std::filesystem::path& base_dir);
  static CorpusManifest load(const std::filesystem::path& path);
};

std::string serialize_manifest(const CorpusManifest& manifest);

/// Atomic whole-file write.
void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace lipprint
