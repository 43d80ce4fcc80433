#ifndef RUNPAT_FMCI_HPP
#define RUNPAT_FMCI_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "runpat/errors.hpp"

namespace runpat::fmci {

// Finite state space of an imbedded chain.  Labels are interned to dense
// integer indices at construction; all hot-path structures work on indices.
// For large machine-generated spaces the labels can be supplied lazily
// through a generator instead of being stored.
class StateSpace {
 public:
  StateSpace(std::vector<std::string> labels, std::vector<int> absorbing = {});

  // Lazy variant: `label_of` must be a pure function of the index.
  StateSpace(std::size_t count, std::function<std::string(int)> label_of,
             std::vector<int> absorbing = {});

  std::size_t size() const { return size_; }
  std::string label(int index) const;
  int index(const std::string& label) const;  // structural_error if unknown
  bool is_absorbing(int index) const;
  const std::vector<int>& absorbing() const { return absorbing_; }

 private:
  void check_index(int index) const;
  void ensure_lookup() const;

  std::size_t size_;
  std::vector<std::string> labels_;                  // empty when lazy
  std::function<std::string(int)> label_of_;         // set when lazy
  std::vector<int> absorbing_;                       // sorted indices
  std::vector<bool> absorbing_mask_;
  mutable std::unordered_map<std::string, int> lookup_;
  mutable std::once_flag lookup_once_;
};

struct KernelEntry {
  int from = 0;
  int to = 0;
  double prob = 0.0;
};

// One time-indexed transition step, stored sparsely as an entry list.
// Construction validates structure once so that propagation stays
// branch-free:
//   - probabilities lie in [0,1],
//   - every referenced state exists,
//   - row sums are exactly stochastic (within 1e-12) under RowPolicy::
//     Stochastic, or at most 1 under RowPolicy::Substochastic (the deficit
//     is absorption mass),
//   - absorbing states may only map to themselves with probability 1.
// States without entries keep their mass (implicit identity row is NOT
// assumed: builders must emit identity entries where mass may sit).
class StepKernel {
 public:
  enum class RowPolicy { Stochastic, Substochastic };

  StepKernel(std::shared_ptr<const StateSpace> space, int t,
             std::vector<KernelEntry> entries,
             RowPolicy policy = RowPolicy::Stochastic);

  static StepKernel from_labels(
      std::shared_ptr<const StateSpace> space, int t,
      const std::vector<std::tuple<std::string, std::string, double>>& entries,
      RowPolicy policy = RowPolicy::Stochastic);

  int t() const { return t_; }
  const std::shared_ptr<const StateSpace>& space() const { return space_; }
  const std::vector<KernelEntry>& entries() const { return entries_; }
  RowPolicy policy() const { return policy_; }
  std::size_t max_row_entries() const { return max_row_entries_; }

  // All outgoing entries of one state; linear scan, intended for tests.
  std::vector<KernelEntry> row(int from) const;

 private:
  std::shared_ptr<const StateSpace> space_;
  int t_;
  std::vector<KernelEntry> entries_;
  RowPolicy policy_;
  std::size_t max_row_entries_ = 0;
};

// Probability mass over a StateSpace, stored densely by state index.
class DistributionVector {
 public:
  explicit DistributionVector(std::shared_ptr<const StateSpace> space);
  DistributionVector(std::shared_ptr<const StateSpace> space,
                     std::vector<double> mass);

  static DistributionVector point_mass(std::shared_ptr<const StateSpace> space,
                                       int index);

  const std::shared_ptr<const StateSpace>& space() const { return space_; }
  std::span<const double> mass() const { return mass_; }
  double mass_of(int index) const;
  double mass_of(const std::string& label) const;
  double total_mass() const;
  void set_mass(int index, double value);

 private:
  std::shared_ptr<const StateSpace> space_;
  std::vector<double> mass_;
};

// Left-multiplies `initial` through the kernels in order.  Kernels must
// share the initial distribution's state space.  Mass is conserved within
// 1e-12 for stochastic kernels (checked per step); propagated masses are
// clamped at zero if rounding drives them below -1e-15.
DistributionVector propagate(const DistributionVector& initial,
                             std::span<const StepKernel> kernels);

// xi_0 (prod N_t) 1^T: probability that a chain restricted to its transient
// part survives all steps.  Kernels are substochastic; the per-step deficit
// is absorbed mass.  Nonincreasing in the number of kernels applied.
double survival_probability(const DistributionVector& initial,
                            std::span<const StepKernel> kernels);

// Streaming variant: kernels are produced one at a time by `kernel_at`
// (t = 1..steps), applied, and discarded.  Equivalent to materializing the
// full sequence but with O(one kernel) memory.
double survival_probability(const DistributionVector& initial, int steps,
                            const std::function<StepKernel(int)>& kernel_at);

}  // namespace runpat::fmci

#endif  // RUNPAT_FMCI_HPP
