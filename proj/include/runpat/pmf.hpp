#ifndef RUNPAT_PMF_HPP
#define RUNPAT_PMF_HPP

#include <string>
#include <vector>

#include "runpat/errors.hpp"

namespace runpat {

enum class StatKind { RunsCount, ScanMax, LongestRun, WindowTail };

// Identifies which statistic a distribution belongs to.  `r` is the window
// size for scan-type statistics, `s` the count threshold for WindowTail.
struct StatTag {
  StatKind kind = StatKind::RunsCount;
  int r = 0;
  int s = 0;

  std::string name() const;
  bool operator==(const StatTag&) const = default;
};

// Exact (or, when `exact` is false, Monte Carlo estimated) probability mass
// function of an integer statistic conditional on the success count n1 out
// of n trials.  Support is strictly increasing and probabilities align with
// it one to one.
class ConditionalPmf {
 public:
  ConditionalPmf(int n, int n1, StatTag stat, std::vector<int> support,
                 std::vector<double> probs, bool exact = true);

  int n() const { return n_; }
  int n1() const { return n1_; }
  const StatTag& stat() const { return stat_; }
  const std::vector<int>& support() const { return support_; }
  const std::vector<double>& probs() const { return probs_; }
  bool exact() const { return exact_; }

  double prob_at(int value) const;    // P(T = value), 0 off support
  double cdf_at(int value) const;     // P(T <= value)
  double tail_at(int value) const;    // P(T >= value)
  int min_value() const { return support_.front(); }
  int max_value() const { return support_.back(); }

 private:
  int n_;
  int n1_;
  StatTag stat_;
  std::vector<int> support_;
  std::vector<double> probs_;
  bool exact_;
};

// (value, cumulative-probability) result of a percentile search.  For the
// lower tail, `value` is the largest support point with CDF <= alpha (one
// below the support minimum when none qualifies, with attained = 0).  For
// the upper tail, the smallest point with tail <= alpha (one above the
// support maximum when none qualifies).
struct Percentile {
  int value = 0;
  double attained = 0.0;
};

Percentile lower_percentile(const ConditionalPmf& pmf, double alpha);
Percentile upper_percentile(const ConditionalPmf& pmf, double alpha);

}  // namespace runpat

#endif  // RUNPAT_PMF_HPP
