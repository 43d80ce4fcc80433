#include "runpat/runs.hpp"

#include <string>

namespace runpat {

RunsQuery::RunsQuery(int n_, int n1_) : n(n_), n1(n1_) {
  if (n < 1) throw validation_error("runs: n must be >= 1");
  if (n1 < 0 || n1 > n)
    throw validation_error("runs: n1 must lie in [0, n], got " + std::to_string(n1));
}

RunsChain::RunsChain(const RunsQuery& query) : query_(query) {
  if (query_.n1 < 1) throw validation_error("runs chain: requires n1 >= 1");
  std::vector<std::string> labels;
  labels.reserve(query_.d());
  for (int i = 1; i <= query_.d(); ++i) labels.push_back(std::to_string(i));
  space_ = std::make_shared<fmci::StateSpace>(std::move(labels));
}

fmci::DistributionVector RunsChain::initial() const {
  // the untouched row of n1 ones is a single run
  return fmci::DistributionVector::point_mass(space_, 0);
}

fmci::StepKernel RunsChain::kernel_at(int t) const {
  const int n1 = query_.n1;
  const int n2 = query_.n2();
  const int d = query_.d();
  if (t < 1 || t > n2)
    throw validation_error("runs kernel: t must lie in [1, n2], got " + std::to_string(t));

  std::vector<fmci::KernelEntry> entries;
  entries.reserve(2 * static_cast<std::size_t>(d));
  const double denom = n1 + t;
  for (int i = 1; i <= d; ++i) {
    const int idx = i - 1;
    if (i == d || i > t) {
      // runs can neither split past d nor exceed one new run per step
      entries.push_back({idx, idx, 1.0});
      continue;
    }
    // inserting the t-th zero inside a run splits it: (n1-i)+(t+i) = n1+t
    entries.push_back({idx, idx, (t + i) / denom});
    entries.push_back({idx, idx + 1, (n1 - i) / denom});
  }
  fmci::StepKernel kernel(space_, t, std::move(entries));
  if (kernel.max_row_entries() > 2)
    throw structural_error("runs kernel: more than 2 outgoing transitions");
  return kernel;
}

std::vector<fmci::StepKernel> RunsChain::kernels() const {
  std::vector<fmci::StepKernel> out;
  out.reserve(query_.n2());
  for (int t = 1; t <= query_.n2(); ++t) out.push_back(kernel_at(t));
  return out;
}

fmci::StepKernel runs_step_kernel(const RunsQuery& query, int t) {
  return RunsChain(query).kernel_at(t);
}

ConditionalPmf runs_pmf(const RunsQuery& query) {
  const StatTag tag{StatKind::RunsCount, 0, 0};
  if (query.n1 == 0) return ConditionalPmf(query.n, query.n1, tag, {0}, {1.0});
  if (query.n2() == 0) return ConditionalPmf(query.n, query.n1, tag, {1}, {1.0});

  RunsChain chain(query);
  auto kernels = chain.kernels();
  auto final = fmci::propagate(chain.initial(), kernels);

  std::vector<int> support;
  std::vector<double> probs;
  support.reserve(query.d());
  probs.reserve(query.d());
  for (int r = 1; r <= query.d(); ++r) {
    support.push_back(r);
    probs.push_back(final.mass_of(r - 1));
  }
  return ConditionalPmf(query.n, query.n1, tag, std::move(support), std::move(probs));
}

Percentile runs_lower_percentile(const RunsQuery& query, double alpha) {
  return lower_percentile(runs_pmf(query), alpha);
}

}  // namespace runpat
