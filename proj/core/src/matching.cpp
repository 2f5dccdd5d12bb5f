#include "lipprint/matching.hpp"

#include <cmath>
#include <map>

#include "lipprint/error.hpp"

namespace lipprint {

std::string_view to_string(MatchMode mode) {
  return mode == MatchMode::kFast ? "fast" : "accurate";
}

MatchMode parse_mode(std::string_view text) {
  if (text == "fast") return MatchMode::kFast;
  if (text == "accurate") return MatchMode::kAccurate;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown mode '" + std::string(text) + "' (fast|accurate)");
}

MatchMode mode_of(const Feature& f) {
  return std::holds_alternative<FastFeature>(f) ? MatchMode::kFast
                                                : MatchMode::kAccurate;
}

double distance_fast(const FastFeature& a, const FastFeature& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    const double d = a.values[i] - b.values[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

double distance_accurate(const AccurateFeature& a, const AccurateFeature& b) {
  double sum = 0.0;
  for (std::size_t r = 0; r < AccurateFeature::kRows; ++r) {
    for (std::size_t c = 0; c < AccurateFeature::kCols; ++c) {
      const double d = a.values[r][c] - b.values[r][c];
      sum += d * d;
    }
  }
  return std::sqrt(sum);
}

double distance(const Feature& a, const Feature& b) {
  if (a.index() != b.index()) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot compare a fast feature with an accurate one");
  }
  if (const auto* fa = std::get_if<FastFeature>(&a)) {
    return distance_fast(*fa, std::get<FastFeature>(b));
  }
  return distance_accurate(std::get<AccurateFeature>(a), std::get<AccurateFeature>(b));
}

double ThresholdModel::threshold(MatchMode mode) const {
  const auto& t = mode == MatchMode::kFast ? t_fast : t_accurate;
  if (!t) {
    throw Error(ErrorCode::kInvalidArgument,
                "model has no " + std::string(to_string(mode)) + " threshold");
  }
  return *t;
}

namespace {

std::string sample_label(const std::vector<LabeledFeature>& samples, std::size_t i) {
  return samples[i].sample_id.empty() ? "#" + std::to_string(i) : samples[i].sample_id;
}

}  // namespace

ThresholdModel calibrate(const std::vector<LabeledFeature>& training, MatchMode mode) {
  std::map<std::string, std::vector<std::size_t>> by_subject;
  for (std::size_t i = 0; i < training.size(); ++i) {
    if (mode_of(training[i].feature) != mode) {
      throw Error(ErrorCode::kInvalidArgument,
                  "training feature kind does not match calibration mode");
    }
    by_subject[training[i].subject_id].push_back(i);
  }

  std::optional<CalibrationPair> best;
  for (const auto& [subject, indices] : by_subject) {
    for (std::size_t a = 0; a < indices.size(); ++a) {
      for (std::size_t b = a + 1; b < indices.size(); ++b) {
        const double d =
            distance(training[indices[a]].feature, training[indices[b]].feature);
        if (!best || d > best->distance) {
          best = CalibrationPair{mode, subject, sample_label(training, indices[a]),
                                 sample_label(training, indices[b]), d};
        }
      }
    }
  }
  if (!best) {
    throw Error(ErrorCode::kInsufficientData,
                "calibration needs a subject with at least 2 training samples");
  }

  ThresholdModel model;
  (mode == MatchMode::kFast ? model.t_fast : model.t_accurate) = best->distance;
  model.provenance.push_back(*best);
  return model;
}

void merge_calibration(ThresholdModel& model, const ThresholdModel& fresh, MatchMode mode) {
  if (mode == MatchMode::kFast) {
    model.t_fast = fresh.t_fast;
  } else {
    model.t_accurate = fresh.t_accurate;
  }
  std::erase_if(model.provenance,
                [&](const CalibrationPair& p) { return p.mode == mode; });
  for (const CalibrationPair& p : fresh.provenance) {
    if (p.mode == mode) model.provenance.push_back(p);
  }
}

MatchDecision decide(double distance, double threshold) {
  return {distance, threshold, distance <= threshold};
}

MatchDecision verify(const Feature& test, const Feature& reference,
                     const ThresholdModel& model, MatchMode mode) {
  if (mode_of(test) != mode || mode_of(reference) != mode) {
    throw Error(ErrorCode::kInvalidArgument,
                "feature kind does not match verification mode " +
                    std::string(to_string(mode)));
  }
  return decide(distance(test, reference), model.threshold(mode));
}

}  // namespace lipprint
