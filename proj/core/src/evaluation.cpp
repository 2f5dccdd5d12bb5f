#include "lipprint/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>
#include <string>

#include "lipprint/error.hpp"
#include "lipprint/parallel.hpp"

namespace lipprint {

namespace {

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string general17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

double efficiency_pct(double far_pct, double frr_pct) { return 100.0 - far_pct - frr_pct; }

EvalReport make_report(const TrialTallies& t, double threshold) {
  if (t.genuine_attempts == 0 || t.impostor_attempts == 0) {
    throw Error(ErrorCode::kInsufficientData,
                "need both genuine and impostor attempts");
  }
  if (t.false_rejects > t.genuine_attempts || t.false_accepts > t.impostor_attempts) {
    throw Error(ErrorCode::kInvalidArgument, "error tallies exceed attempts");
  }
  EvalReport r;
  r.threshold = threshold;
  r.tallies = t;
  r.far_pct = 100.0 * static_cast<double>(t.false_accepts) /
              static_cast<double>(t.impostor_attempts);
  r.frr_pct = 100.0 * static_cast<double>(t.false_rejects) /
              static_cast<double>(t.genuine_attempts);
  r.efficiency_pct = efficiency_pct(r.far_pct, r.frr_pct);
  return r;
}

DistanceMatrix::DistanceMatrix(const std::vector<LabeledFeature>& corpus)
    : n_(corpus.size()), d_(corpus.size() * corpus.size(), 0.0) {
  std::map<std::string, std::size_t> ids;
  subject_.reserve(n_);
  for (const auto& s : corpus) {
    subject_.push_back(ids.try_emplace(s.subject_id, ids.size()).first->second);
  }
  parallel_for(n_, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      d_[i * n_ + j] = distance(corpus[i].feature, corpus[j].feature);
    }
  });
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) d_[j * n_ + i] = d_[i * n_ + j];
  }
}

TrialTallies DistanceMatrix::tally(double threshold) const {
  TrialTallies t;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      const bool accepted = decide(at(i, j), threshold).accepted;
      if (genuine(i, j)) {
        ++t.genuine_attempts;
        if (!accepted) ++t.false_rejects;
      } else {
        ++t.impostor_attempts;
        if (accepted) ++t.false_accepts;
      }
    }
  }
  return t;
}

std::vector<double> DistanceMatrix::pair_distances() const {
  std::vector<double> out;
  out.reserve(n_ * (n_ - 1) / 2);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) out.push_back(at(i, j));
  return out;
}

std::vector<RocPoint> roc_sweep(const DistanceMatrix& matrix,
                                const std::vector<double>& thresholds) {
  if (thresholds.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "ROC sweep needs at least one threshold");
  }
  if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
    throw Error(ErrorCode::kInvalidArgument, "ROC thresholds must be ascending");
  }
  std::vector<RocPoint> roc;
  roc.reserve(thresholds.size());
  for (double t : thresholds) {
    const EvalReport r = make_report(matrix.tally(t), t);
    roc.push_back({t, r.far_pct, r.frr_pct});
  }
  return roc;
}

std::vector<RocPoint> roc_sweep(const std::vector<LabeledFeature>& corpus, MatchMode mode,
                                const std::vector<double>& thresholds) {
  for (const auto& s : corpus) {
    if (mode_of(s.feature) != mode) {
      throw Error(ErrorCode::kInvalidArgument, "corpus feature kind does not match mode");
    }
  }
  return roc_sweep(DistanceMatrix(corpus), thresholds);
}

EvalReport evaluate(const std::vector<LabeledFeature>& corpus, const ThresholdModel& model,
                    MatchMode mode) {
  std::set<std::string> subjects;
  for (const auto& s : corpus) {
    subjects.insert(s.subject_id);
    if (mode_of(s.feature) != mode) {
      throw Error(ErrorCode::kInvalidArgument, "corpus feature kind does not match mode");
    }
  }
  if (subjects.size() < 2) {
    throw Error(ErrorCode::kInsufficientData,
                "need >=2 subjects for impostor attempts");
  }
  const double threshold = model.threshold(mode);
  const DistanceMatrix matrix(corpus);
  EvalReport report = make_report(matrix.tally(threshold), threshold);

  std::vector<double> sweep = matrix.pair_distances();
  sweep.push_back(threshold);
  std::sort(sweep.begin(), sweep.end());
  sweep.erase(std::unique(sweep.begin(), sweep.end()), sweep.end());
  report.roc = roc_sweep(matrix, sweep);
  return report;
}

double min_far_at_frr(const std::vector<RocPoint>& roc, double frr_limit_pct) {
  double best = 100.0;
  for (const auto& p : roc) {
    if (p.frr_pct <= frr_limit_pct) best = std::min(best, p.far_pct);
  }
  return best;
}

void write_report(std::ostream& out, const EvalReport& r, MatchMode mode) {
  out << "mode: " << to_string(mode) << '\n'
      << "threshold: " << general17(r.threshold) << '\n'
      << "genuine_attempts: " << r.tallies.genuine_attempts << '\n'
      << "impostor_attempts: " << r.tallies.impostor_attempts << '\n'
      << "false_rejects: " << r.tallies.false_rejects << '\n'
      << "false_accepts: " << r.tallies.false_accepts << '\n'
      << "far_pct: " << fixed4(r.far_pct) << '\n'
      << "frr_pct: " << fixed4(r.frr_pct) << '\n'
      << "efficiency_pct: " << fixed4(r.efficiency_pct) << '\n'
      << "roc_points: " << r.roc.size() << '\n';
}

void write_roc_csv(std::ostream& out, const std::vector<RocPoint>& roc) {
  out << "threshold,far_pct,frr_pct\n";
  for (const auto& p : roc) {
    out << general17(p.threshold) << ',' << fixed4(p.far_pct) << ',' << fixed4(p.frr_pct)
        << '\n';
  }
}

void write_roc_gnuplot(std::ostream& out, const std::vector<RocPoint>& roc) {
  out << "# threshold far_pct frr_pct\n";
  for (const auto& p : roc) {
    out << general17(p.threshold) << ' ' << fixed4(p.far_pct) << ' ' << fixed4(p.frr_pct)
        << '\n';
  }
}

}  // namespace lipprint
