#ifndef RUNPAT_ERRORS_HPP
#define RUNPAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace runpat {

// Bad argument values (ranges, probabilities outside [0,1], malformed input).
class validation_error : public std::invalid_argument {
 public:
  explicit validation_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Inconsistent structure: kernel references a state that is not in the
// state space, mismatched state spaces, and similar wiring mistakes.
class structural_error : public std::logic_error {
 public:
  explicit structural_error(const std::string& msg) : std::logic_error(msg) {}
};

// An exact computation would exceed the configured state budget.  Callers
// are expected to fall back to Monte Carlo estimation.
class capacity_error : public std::runtime_error {
 public:
  explicit capacity_error(const std::string& msg) : std::runtime_error(msg) {}
};

// The binarized sequence is all zeros or all ones; no chart statistic can
// discriminate.  Carries the realized count so the caller can advise on p0.
class degenerate_error : public std::runtime_error {
 public:
  degenerate_error(const std::string& msg, int n, int n1)
      : std::runtime_error(msg), n_(n), n1_(n1) {}
  int n() const { return n_; }
  int n1() const { return n1_; }

 private:
  int n_;
  int n1_;
};

}  // namespace runpat

#endif  // RUNPAT_ERRORS_HPP
