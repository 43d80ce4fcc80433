#ifndef RUNPAT_RUNS_HPP
#define RUNPAT_RUNS_HPP

#include <memory>
#include <vector>

#include "runpat/fmci.hpp"
#include "runpat/pmf.hpp"

namespace runpat {

// Conditional query for the number of success runs R_n given N1 = n1.
struct RunsQuery {
  int n = 0;
  int n1 = 0;

  RunsQuery(int n_, int n1_);

  int n2() const { return n - n1; }
  // Maximum possible number of success runs (requires n1 >= 1).
  int d() const { return n1 < n2() + 1 ? n1 : n2() + 1; }
};

// The zero-insertion chain: starting from one row of n1 ones, insert the
// n2 zeros one at a time; the state is the current number of success runs.
// States are {1,...,d}; each step kernel has at most two entries per row
// (stay or split a run in two).
class RunsChain {
 public:
  explicit RunsChain(const RunsQuery& query);

  const RunsQuery& query() const { return query_; }
  const std::shared_ptr<const fmci::StateSpace>& space() const { return space_; }

  fmci::DistributionVector initial() const;
  fmci::StepKernel kernel_at(int t) const;     // t = 1..n2
  std::vector<fmci::StepKernel> kernels() const;

 private:
  RunsQuery query_;
  std::shared_ptr<const fmci::StateSpace> space_;
};

// Step kernel of the insertion chain at step t (spec surface; builds a
// fresh chain).  Rows are exactly stochastic: (n1-i) + (t+i) = n1+t.
fmci::StepKernel runs_step_kernel(const RunsQuery& query, int t);

// Exact pmf of R_n given N1 = n1.  Degenerate cases: n1 = 0 gives a point
// mass at 0, n2 = 0 a point mass at 1; otherwise support is {1,...,d}.
ConditionalPmf runs_pmf(const RunsQuery& query);

// Largest k with P(R_n <= k | n1) <= alpha, plus the attained CDF value.
Percentile runs_lower_percentile(const RunsQuery& query, double alpha);

}  // namespace runpat

#endif  // RUNPAT_RUNS_HPP
