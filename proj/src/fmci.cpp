#include "runpat/fmci.hpp"

#include <algorithm>
#include <cmath>

namespace runpat::fmci {

namespace {

std::vector<bool> make_mask(std::size_t size, std::vector<int>& absorbing) {
  std::sort(absorbing.begin(), absorbing.end());
  absorbing.erase(std::unique(absorbing.begin(), absorbing.end()), absorbing.end());
  std::vector<bool> mask(size, false);
  for (int idx : absorbing) {
    if (idx < 0 || static_cast<std::size_t>(idx) >= size)
      throw structural_error("state space: absorbing index out of range");
    mask[idx] = true;
  }
  return mask;
}

}  // namespace

StateSpace::StateSpace(std::vector<std::string> labels, std::vector<int> absorbing)
    : size_(labels.size()), labels_(std::move(labels)), absorbing_(std::move(absorbing)) {
  if (size_ == 0) throw validation_error("state space: no states");
  absorbing_mask_ = make_mask(size_, absorbing_);
}

StateSpace::StateSpace(std::size_t count, std::function<std::string(int)> label_of,
                       std::vector<int> absorbing)
    : size_(count), label_of_(std::move(label_of)), absorbing_(std::move(absorbing)) {
  if (size_ == 0) throw validation_error("state space: no states");
  if (!label_of_) throw validation_error("state space: missing label generator");
  absorbing_mask_ = make_mask(size_, absorbing_);
}

void StateSpace::check_index(int index) const {
  if (index < 0 || static_cast<std::size_t>(index) >= size_)
    throw structural_error("state space: index " + std::to_string(index) +
                           " out of range");
}

std::string StateSpace::label(int index) const {
  check_index(index);
  return label_of_ ? label_of_(index) : labels_[index];
}

void StateSpace::ensure_lookup() const {
  std::call_once(lookup_once_, [this] {
    lookup_.reserve(size_);
    for (std::size_t i = 0; i < size_; ++i) {
      auto [it, inserted] = lookup_.emplace(label(static_cast<int>(i)), i);
      if (!inserted)
        throw validation_error("state space: duplicate label '" + it->first + "'");
    }
  });
}

int StateSpace::index(const std::string& label) const {
  ensure_lookup();
  auto it = lookup_.find(label);
  if (it == lookup_.end())
    throw structural_error("state space: unknown label '" + label + "'");
  return it->second;
}

bool StateSpace::is_absorbing(int index) const {
  check_index(index);
  return absorbing_mask_[index];
}

StepKernel::StepKernel(std::shared_ptr<const StateSpace> space, int t,
                       std::vector<KernelEntry> entries, RowPolicy policy)
    : space_(std::move(space)), t_(t), entries_(std::move(entries)), policy_(policy) {
  if (!space_) throw structural_error("kernel: null state space");
  const std::size_t n = space_->size();
  std::vector<double> row_sum(n, 0.0);
  std::vector<std::size_t> row_entries(n, 0);
  for (const auto& e : entries_) {
    if (e.from < 0 || static_cast<std::size_t>(e.from) >= n ||
        e.to < 0 || static_cast<std::size_t>(e.to) >= n)
      throw structural_error("kernel: entry references unknown state");
    if (e.prob < 0.0 || e.prob > 1.0 + 1e-12)
      throw validation_error("kernel: probability " + std::to_string(e.prob) +
                             " outside [0,1]");
    if (space_->is_absorbing(e.from) && (e.to != e.from || e.prob != 1.0))
      throw validation_error("kernel: absorbing state must map to itself with probability 1");
    row_sum[e.from] += e.prob;
    ++row_entries[e.from];
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (row_entries[i] == 0) continue;
    max_row_entries_ = std::max(max_row_entries_, row_entries[i]);
    if (policy_ == RowPolicy::Stochastic) {
      if (std::abs(row_sum[i] - 1.0) > 1e-12)
        throw validation_error("kernel(t=" + std::to_string(t_) + "): row " +
                               std::to_string(i) + " sums to " +
                               std::to_string(row_sum[i]));
    } else if (row_sum[i] > 1.0 + 1e-12) {
      throw validation_error("kernel(t=" + std::to_string(t_) + "): row " +
                             std::to_string(i) + " exceeds total mass 1");
    }
  }
}

StepKernel StepKernel::from_labels(
    std::shared_ptr<const StateSpace> space, int t,
    const std::vector<std::tuple<std::string, std::string, double>>& entries,
    RowPolicy policy) {
  if (!space) throw structural_error("kernel: null state space");
  std::vector<KernelEntry> resolved;
  resolved.reserve(entries.size());
  for (const auto& [from, to, prob] : entries)
    resolved.push_back({space->index(from), space->index(to), prob});
  return StepKernel(std::move(space), t, std::move(resolved), policy);
}

std::vector<KernelEntry> StepKernel::row(int from) const {
  std::vector<KernelEntry> out;
  for (const auto& e : entries_)
    if (e.from == from) out.push_back(e);
  return out;
}

DistributionVector::DistributionVector(std::shared_ptr<const StateSpace> space)
    : space_(std::move(space)) {
  if (!space_) throw structural_error("distribution: null state space");
  mass_.assign(space_->size(), 0.0);
}

DistributionVector::DistributionVector(std::shared_ptr<const StateSpace> space,
                                       std::vector<double> mass)
    : space_(std::move(space)), mass_(std::move(mass)) {
  if (!space_) throw structural_error("distribution: null state space");
  if (mass_.size() != space_->size())
    throw structural_error("distribution: mass size does not match state space");
  double total = 0.0;
  for (double m : mass_) {
    if (m < 0.0) throw validation_error("distribution: negative mass");
    total += m;
  }
  if (total > 1.0 + 1e-12)
    throw validation_error("distribution: total mass exceeds 1");
}

DistributionVector DistributionVector::point_mass(
    std::shared_ptr<const StateSpace> space, int index) {
  DistributionVector v(std::move(space));
  v.set_mass(index, 1.0);
  return v;
}

double DistributionVector::mass_of(int index) const {
  if (index < 0 || static_cast<std::size_t>(index) >= mass_.size())
    throw structural_error("distribution: index out of range");
  return mass_[index];
}

double DistributionVector::mass_of(const std::string& label) const {
  return mass_[space_->index(label)];
}

double DistributionVector::total_mass() const {
  double total = 0.0;
  for (double m : mass_) total += m;
  return total;
}

void DistributionVector::set_mass(int index, double value) {
  if (index < 0 || static_cast<std::size_t>(index) >= mass_.size())
    throw structural_error("distribution: index out of range");
  if (value < 0.0) throw validation_error("distribution: negative mass");
  mass_[index] = value;
}

namespace {

// One propagation step into `out` (pre-sized, zeroed).  States without
// outgoing entries keep their mass.
void apply_step(const std::vector<double>& in, const StepKernel& kernel,
                std::vector<double>& out, std::vector<bool>& has_row) {
  std::fill(out.begin(), out.end(), 0.0);
  std::fill(has_row.begin(), has_row.end(), false);
  for (const auto& e : kernel.entries()) has_row[e.from] = true;
  for (std::size_t i = 0; i < in.size(); ++i)
    if (!has_row[i]) out[i] = in[i];
  for (const auto& e : kernel.entries()) out[e.to] += in[e.from] * e.prob;
  for (double& m : out) {
    if (m < 0.0) {
      if (m < -1e-15) throw validation_error("propagate: negative mass");
      m = 0.0;
    }
  }
}

void check_space(const DistributionVector& initial, const StepKernel& kernel) {
  if (kernel.space() != initial.space())
    throw structural_error("propagate: kernel built on a different state space");
}

}  // namespace

DistributionVector propagate(const DistributionVector& initial,
                             std::span<const StepKernel> kernels) {
  std::vector<double> cur(initial.mass().begin(), initial.mass().end());
  std::vector<double> next(cur.size());
  std::vector<bool> has_row(cur.size());
  for (const auto& kernel : kernels) {
    check_space(initial, kernel);
    double before = 0.0;
    for (double m : cur) before += m;
    apply_step(cur, kernel, next, has_row);
    cur.swap(next);
    if (kernel.policy() == StepKernel::RowPolicy::Stochastic) {
      double after = 0.0;
      for (double m : cur) after += m;
      if (std::abs(after - before) > 1e-12)
        throw validation_error("propagate: mass not conserved at t=" +
                               std::to_string(kernel.t()));
    }
  }
  return DistributionVector(initial.space(), std::move(cur));
}

double survival_probability(const DistributionVector& initial,
                            std::span<const StepKernel> kernels) {
  for (const auto& kernel : kernels) check_space(initial, kernel);
  return propagate(initial, kernels).total_mass();
}

double survival_probability(const DistributionVector& initial, int steps,
                            const std::function<StepKernel(int)>& kernel_at) {
  std::vector<double> cur(initial.mass().begin(), initial.mass().end());
  std::vector<double> next(cur.size());
  std::vector<bool> has_row(cur.size());
  for (int t = 1; t <= steps; ++t) {
    StepKernel kernel = kernel_at(t);
    check_space(initial, kernel);
    apply_step(cur, kernel, next, has_row);
    cur.swap(next);
  }
  double total = 0.0;
  for (double m : cur) total += m;
  return total < 1.0 ? total : 1.0;
}

}  // namespace runpat::fmci
