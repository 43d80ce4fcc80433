#include "runpat/pmf.hpp"

#include <cmath>
#include <numeric>

namespace runpat {

std::string StatTag::name() const {
  switch (kind) {
    case StatKind::RunsCount:
      return "runs_count";
    case StatKind::ScanMax:
      return "scan_max(" + std::to_string(r) + ")";
    case StatKind::LongestRun:
      return "longest_run";
    case StatKind::WindowTail:
      return "window_tail(" + std::to_string(r) + "," + std::to_string(s) + ")";
  }
  return "unknown";
}

ConditionalPmf::ConditionalPmf(int n, int n1, StatTag stat, std::vector<int> support,
                               std::vector<double> probs, bool exact)
    : n_(n), n1_(n1), stat_(stat), support_(std::move(support)),
      probs_(std::move(probs)), exact_(exact) {
  if (n_ < 1 || n1_ < 0 || n1_ > n_)
    throw validation_error("pmf: invalid (n, n1) = (" + std::to_string(n_) + ", " +
                           std::to_string(n1_) + ")");
  if (support_.empty() || support_.size() != probs_.size())
    throw validation_error("pmf: support/probability size mismatch");
  for (std::size_t i = 1; i < support_.size(); ++i)
    if (support_[i] <= support_[i - 1])
      throw validation_error("pmf: support must be strictly increasing");
  double total = 0.0;
  for (double p : probs_) {
    if (p < -1e-12 || p > 1.0 + 1e-12)
      throw validation_error("pmf: probability out of range");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-10)
    throw validation_error("pmf: probabilities sum to " + std::to_string(total));
  for (double& p : probs_)
    if (p < 0.0) p = 0.0;
}

double ConditionalPmf::prob_at(int value) const {
  for (std::size_t i = 0; i < support_.size(); ++i)
    if (support_[i] == value) return probs_[i];
  return 0.0;
}

double ConditionalPmf::cdf_at(int value) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < support_.size() && support_[i] <= value; ++i)
    acc += probs_[i];
  return acc < 1.0 ? acc : 1.0;
}

double ConditionalPmf::tail_at(int value) const {
  double acc = 0.0;
  for (std::size_t i = support_.size(); i-- > 0 && support_[i] >= value;)
    acc += probs_[i];
  return acc < 1.0 ? acc : 1.0;
}

Percentile lower_percentile(const ConditionalPmf& pmf, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw validation_error("percentile: alpha must lie in (0,1)");
  int k = pmf.min_value() - 1;
  double attained = 0.0;
  double acc = 0.0;
  const auto& sup = pmf.support();
  const auto& pr = pmf.probs();
  for (std::size_t i = 0; i < sup.size(); ++i) {
    acc += pr[i];
    if (acc <= alpha) {
      k = sup[i];
      attained = acc;
    } else {
      break;
    }
  }
  return {k, attained};
}

Percentile upper_percentile(const ConditionalPmf& pmf, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw validation_error("percentile: alpha must lie in (0,1)");
  int s = pmf.max_value() + 1;
  double attained = 0.0;
  double acc = 0.0;
  const auto& sup = pmf.support();
  const auto& pr = pmf.probs();
  for (std::size_t i = sup.size(); i-- > 0;) {
    acc += pr[i];
    if (acc <= alpha) {
      s = sup[i];
      attained = acc;
    } else {
      break;
    }
  }
  return {s, attained};
}

}  // namespace runpat
