#ifndef RUNPAT_CHART_HPP
#define RUNPAT_CHART_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "runpat/pmf.hpp"
#include "runpat/scan.hpp"

namespace runpat {

// Phase I reference sample (individual observations; subgroup rows are
// reduced to means at ingestion).
struct Sample {
  std::vector<double> values;
};

struct BinarySequence {
  std::vector<std::uint8_t> bits;
  int n1 = 0;
  double threshold_c = 0.0;

  int n() const { return static_cast<int>(bits.size()); }
};

enum class ChartKind { R1, R2 };

struct ChartConfig {
  ChartKind chart = ChartKind::R1;
  double alpha = 0.05;
  double p0 = 0.5;
  int r = 0;                 // window size, R2 only
  bool randomize = false;
  std::uint64_t seed = 0;    // used only when randomize or on MC fallback
  Budget budget{};
  int mc_reps = kDefaultMcReps;
};

// Full verdict of one chart run.  `limit` is the signalling boundary:
// R-1 signals on observed <= limit, R-2 on observed >= limit.  Under
// randomization the rule additionally signals with probability `gamma` at
// the adjacent value (limit+1 for R-1, limit-1 for R-2) so the exact level
// equals alpha.
struct ChartDecision {
  double threshold_c = 0.0;
  int n1 = 0;
  std::string statistic_name;
  int observed = 0;
  int limit = 0;
  double gamma = 0.0;
  bool signal = false;
  double p_value = 1.0;
  double attained_alpha = 0.0;
  std::optional<double> randomization_draw;
  bool exact = true;                       // false when the reference pmf is MC-estimated
  std::optional<McEstimate> mc;            // echo of the fallback parameters
  std::vector<std::string> warnings;
};

struct ChartOutcome {
  ChartDecision decision;
  BinarySequence sequence;
};

// Linear-interpolation empirical quantile at level 1-p0 (the convention
// under which the target count of ones is floor-consistent with n*p0 for
// distinct values).
double threshold_from_quantile(std::span<const double> values, double p0);

// bit_i = 1 iff value_i >= c; ties at the threshold classify as 1.
BinarySequence binarize(std::span<const double> values, double c);

int observed_runs(const BinarySequence& seq);
int observed_scan(const BinarySequence& seq, int r);

struct RandomizedLimit {
  int k = 0;          // conservative boundary
  double gamma = 0.0; // randomization mass at the adjacent atom
  double attained = 0.0;
};

// Conservative boundary plus the gamma that makes the randomized rule hit
// alpha exactly: P(T <= k) + gamma * P(T = k+1) = alpha (lower) and
// P(T >= s*) + gamma * P(T = s*-1) = alpha (upper).
RandomizedLimit randomized_lower_limit(const ConditionalPmf& pmf, double alpha);
RandomizedLimit randomized_upper_limit(const ConditionalPmf& pmf, double alpha);

// Non-randomized boundary with attained level nearest to alpha; this is the
// randomized rule rounded to the more probable side, and it reproduces
// published control limits for discrete run/scan statistics.
Percentile nearest_lower_limit(const ConditionalPmf& pmf, double alpha);
Percentile nearest_upper_limit(const ConditionalPmf& pmf, double alpha);

// Thread-safe memo of scan reference distributions keyed by (n, n1, r).
// Falls back to a Monte Carlo estimate (flagged on the pmf) when the exact
// computation exceeds the budget.
class ScanSource {
 public:
  explicit ScanSource(Budget budget = {}, int mc_reps = kDefaultMcReps,
                      std::uint64_t mc_seed = 0);

  std::shared_ptr<const ConditionalPmf> pmf(int n, int n1, int r);
  double tail(int n, int n1, int r, int s);

 private:
  Budget budget_;
  int mc_reps_;
  std::uint64_t mc_seed_;
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, std::shared_ptr<const ConditionalPmf>> cache_;
};

// Algorithm R-1 (number of success runs) and R-2 (scan statistic).  Both
// throw degenerate_error when the binarized sequence has n1 in {0, n}.
// `source`, when given, supplies memoized scan references (simulation reuses
// one source across replications).
ChartOutcome run_chart_r1(const Sample& sample, const ChartConfig& config);
ChartOutcome run_chart_r2(const Sample& sample, const ChartConfig& config,
                          ScanSource* source = nullptr);

}  // namespace runpat

#endif  // RUNPAT_CHART_HPP
