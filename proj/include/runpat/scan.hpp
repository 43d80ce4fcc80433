#ifndef RUNPAT_SCAN_HPP
#define RUNPAT_SCAN_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "runpat/fmci.hpp"
#include "runpat/pmf.hpp"

namespace runpat {

// Cap on materialized transient states (and on automaton nodes while the
// pattern trie is being built).  Exceeding it raises capacity_error; the
// Monte Carlo estimators below are the fallback.
struct Budget {
  std::size_t max_states = 5'000'000;
};

// The simple patterns whose first occurrence is equivalent to some window
// of size r reaching s ones: binary words that begin and end with 1,
// contain exactly s ones, and have length at most r.  For s = 1 the set
// degenerates to {"1"}.
class CompoundPattern {
 public:
  static CompoundPattern enumerate(int r, int s, const Budget& budget = {});

  // Closed-form pattern count: sum_{v=0}^{r-s} C(s-2+v, v).  Returns the
  // count saturated at 2^64-1 on overflow.
  static std::uint64_t pattern_count(int r, int s);

  int r() const { return r_; }
  int s() const { return s_; }
  const std::vector<std::string>& patterns() const { return patterns_; }

 private:
  CompoundPattern(int r, int s, std::vector<std::string> patterns);

  int r_;
  int s_;
  std::vector<std::string> patterns_;
};

// Deterministic automaton over {0,1} whose non-absorbing nodes are the
// ending blocks of the compound pattern: the proper prefixes of the simple
// patterns (node 0 is the empty block).  step() follows the longest-suffix
// rule and returns kAbsorbing exactly when the consumed stream first
// contains some simple pattern as a contiguous substring.
class EndingBlockAutomaton {
 public:
  static constexpr int kAbsorbing = -1;

  static EndingBlockAutomaton build(const CompoundPattern& compound,
                                    const Budget& budget = {});

  int node_count() const { return static_cast<int>(step_.size() / 2); }
  int root() const { return 0; }
  int step(int node, int bit) const { return step_[2 * node + bit]; }
  int ones_of(int node) const { return ones_[node]; }
  const std::string& label(int node) const { return labels_[node]; }

 private:
  EndingBlockAutomaton() = default;

  std::vector<int> step_;    // 2 entries per node
  std::vector<int> ones_;    // number of 1 bits in the block
  std::vector<std::string> labels_;
};

// Conditional scan query: S_n(r) >= s events given N1 = n1.  `s` may exceed
// min(r, n1); such queries short-circuit to the trivial answer.
struct ScanQuery {
  int n = 0;
  int n1 = 0;
  int r = 0;
  int s = 0;

  ScanQuery(int n_, int n1_, int r_, int s_);
};

// The imbedded chain on states (m, block): m ones consumed so far, block =
// current ending block.  State (0, empty) starts the chain; transitions
// into the absorbing node are dropped, so kernels are substochastic and the
// surviving mass after n steps is P(W > n) = P(S_n(r) < s | N1 = n1).
class ScanChain {
 public:
  ScanChain(const ScanQuery& query, std::shared_ptr<const EndingBlockAutomaton> automaton,
            const Budget& budget = {});

  const ScanQuery& query() const { return query_; }
  const std::shared_ptr<const fmci::StateSpace>& space() const { return space_; }
  std::size_t state_count() const { return m_of_.size(); }

  fmci::DistributionVector initial() const;
  fmci::StepKernel kernel_at(int t) const;  // t = 1..n
  double survival() const;                  // xi_0 (prod N_t) 1^T

 private:
  ScanQuery query_;
  std::shared_ptr<const EndingBlockAutomaton> automaton_;
  std::shared_ptr<const fmci::StateSpace> space_;
  // per-state structure; probabilities depend only on (m, t)
  std::vector<int> m_of_;
  std::vector<int> to_one_;   // state index, or -1 when the 1-branch absorbs
  std::vector<int> to_zero_;  // always a state index (a 0 never completes a pattern)
};

// Materialized transient kernels of the scan chain (spec surface; used by
// tests that sweep row sums).  Heavy queries should go through scan_cdf_at,
// which streams the kernels instead.
std::vector<fmci::StepKernel> scan_step_kernels(const ScanQuery& query,
                                                const EndingBlockAutomaton& automaton,
                                                const Budget& budget = {});

// P(S_n(r) < s | N1 = n1) via the waiting-time duality.
double scan_cdf_at(const ScanQuery& query, const Budget& budget = {});

// P(S_n(r) >= s | N1 = n1) = 1 - scan_cdf_at.
double scan_tail(const ScanQuery& query, const Budget& budget = {});

// Full pmf of S_n(r) given n1 by successive tail differences.
ConditionalPmf scan_pmf(int n, int n1, int r, const Budget& budget = {});

// Smallest s* with P(S_n(r) >= s* | n1) <= alpha, plus the attained tail.
Percentile scan_upper_percentile(int n, int n1, int r, double alpha,
                                 const Budget& budget = {});

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  int reps = 0;
  std::uint64_t seed = 0;
};

// Monte Carlo fallback: fraction of `reps` uniform random [n-n1, n1]
// permutations whose maximum window count reaches s.  Replication-indexed
// streams make the result independent of scheduling.
McEstimate scan_tail_mc(const ScanQuery& query, int reps, std::uint64_t seed);

// Empirical pmf of S_n(r) from `reps` random permutations (exact() = false).
ConditionalPmf scan_pmf_mc(int n, int n1, int r, int reps, std::uint64_t seed);

inline constexpr int kDefaultMcReps = 200'000;

}  // namespace runpat

#endif  // RUNPAT_SCAN_HPP
