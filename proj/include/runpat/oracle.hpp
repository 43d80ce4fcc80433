#ifndef RUNPAT_ORACLE_HPP
#define RUNPAT_ORACLE_HPP

#include <cstdint>

#include "runpat/pmf.hpp"

namespace runpat::oracle {

// Exhaustive-enumeration ground truth: walks every sequence of n1 ones and
// n - n1 zeros, evaluates the statistic from its first-principles
// definition, and accumulates integer counts (the division by C(n, n1)
// happens once at the end).  Shares no code with the chain-based modules.
//
// StatKind::WindowTail produces the pmf of the indicator {S_n(r) >= s} on
// support {0, 1}.
//
// Throws capacity_error when C(n, n1) exceeds `max_sequences`.
ConditionalPmf enumerate_pmf(int n, int n1, const StatTag& stat,
                             std::uint64_t max_sequences = 1'000'000);

// C(n, k) saturated at 2^64-1.
std::uint64_t binomial(int n, int k);

}  // namespace runpat::oracle

#endif  // RUNPAT_ORACLE_HPP
