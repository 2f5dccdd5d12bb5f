#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "lipprint/matching.hpp"

namespace lipprint {

struct TrialTallies {
  std::size_t genuine_attempts = 0;
  std::size_t impostor_attempts = 0;
  std::size_t false_rejects = 0;
  std::size_t false_accepts = 0;

  bool operator==(const TrialTallies&) const = default;
};

struct RocPoint {
  double threshold = 0.0;
  double far_pct = 0.0;
  double frr_pct = 0.0;

  bool operator==(const RocPoint&) const = default;
};

struct EvalReport {
  double threshold = 0.0;
  double far_pct = 0.0;
  double frr_pct = 0.0;
  double efficiency_pct = 0.0;
  TrialTallies tallies;
  std::vector<RocPoint> roc;  // ascending threshold
};

double efficiency_pct(double far_pct, double frr_pct);

/// FAR, FRR and efficiency from raw tallies; throws on empty or inconsistent
/// tallies.
EvalReport make_report(const TrialTallies& tallies, double threshold);

/// Symmetric matrix of pairwise distances over a corpus.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(const std::vector<LabeledFeature>& corpus);

  std::size_t size() const { return n_; }
  double at(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  bool genuine(std::size_t i, std::size_t j) const { return subject_[i] == subject_[j]; }

  /// Each unordered pair i < j counted once.
  TrialTallies tally(double threshold) const;

  std::vector<double> pair_distances() const;

 private:
  std::size_t n_;
  std::vector<double> d_;
  std::vector<std::size_t> subject_;
};

/// Verifies every unordered pair of distinct samples against the model
/// threshold. Needs at least two subjects so impostor attempts exist. The
/// ROC covers every observed distance plus the calibrated threshold.
EvalReport evaluate(const std::vector<LabeledFeature>& corpus,
                    const ThresholdModel& model, MatchMode mode);

/// One (FAR, FRR) point per threshold from a single distance matrix.
/// Thresholds must be non-empty and ascending.
std::vector<RocPoint> roc_sweep(const std::vector<LabeledFeature>& corpus,
                                MatchMode mode, const std::vector<double>& thresholds);
std::vector<RocPoint> roc_sweep(const DistanceMatrix& matrix,
                                const std::vector<double>& thresholds);

/// Lowest FAR among ROC points whose FRR does not exceed frr_limit_pct.
double min_far_at_frr(const std::vector<RocPoint>& roc, double frr_limit_pct);

void write_report(std::ostream& out, const EvalReport& report, MatchMode mode);
void write_roc_csv(std::ostream& out, const std::vector<RocPoint>& roc);
void write_roc_gnuplot(std::ostream& out, const std::vector<RocPoint>& roc);

}  // namespace lipprint
