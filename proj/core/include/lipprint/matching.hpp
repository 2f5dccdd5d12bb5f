#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lipprint/features.hpp"

namespace lipprint {

enum class MatchMode { kFast, kAccurate };

std::string_view to_string(MatchMode mode);
MatchMode parse_mode(std::string_view text);

using Feature = std::variant<FastFeature, AccurateFeature>;

MatchMode mode_of(const Feature& f);

double distance_fast(const FastFeature& a, const FastFeature& b);
double distance_accurate(const AccurateFeature& a, const AccurateFeature& b);

// Throws kInvalidArgument when the two features are of different kinds.
double distance(const Feature& a, const Feature& b);

struct LabeledFeature {
  std::string subject_id;
  Feature feature;
  std::string sample_id;  // free-form; defaults to "#<index>" in provenance
};

/// The intra-subject pair that set a threshold.
struct CalibrationPair {
  MatchMode mode = MatchMode::kFast;
  std::string subject_id;
  std::string first_sample;
  std::string second_sample;
  double distance = 0.0;

  bool operator==(const CalibrationPair&) const = default;
};

/// Acceptance thresholds; a mode is usable once it has been calibrated.
struct ThresholdModel {
  std::optional<double> t_fast;
  std::optional<double> t_accurate;
  std::vector<CalibrationPair> provenance;  // one entry per calibrated mode

  double threshold(MatchMode mode) const;  // throws if not calibrated
  bool operator==(const ThresholdModel&) const = default;
};

struct MatchDecision {
  double distance = 0.0;
  double threshold = 0.0;
  bool accepted = false;
};

/// Threshold = largest distance between two training samples of the same
/// subject. Cross-subject pairs never enter the maximum.
ThresholdModel calibrate(const std::vector<LabeledFeature>& training, MatchMode mode);

/// Merges a fresh calibration for `mode` into an existing model.
void merge_calibration(ThresholdModel& model, const ThresholdModel& fresh, MatchMode mode);

/// Accept iff distance <= threshold.
MatchDecision decide(double distance, double threshold);

MatchDecision verify(const Feature& test, const Feature& reference,
                     const ThresholdModel& model, MatchMode mode);

}  // namespace lipprint
