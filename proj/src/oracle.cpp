#include "runpat/oracle.hpp"

#include <limits>
#include <vector>

namespace runpat::oracle {

std::uint64_t binomial(int n, int k) {
  constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) {
    unsigned __int128 next = static_cast<unsigned __int128>(c) * (n - k + i);
    next /= i;
    if (next > kSaturated) return kSaturated;
    c = static_cast<std::uint64_t>(next);
  }
  return c;
}

namespace {

int count_runs(std::uint64_t bits, int n) {
  int runs = 0;
  bool prev = false;
  for (int i = 0; i < n; ++i) {
    const bool b = (bits >> i) & 1;
    if (b && !prev) ++runs;
    prev = b;
  }
  return runs;
}

int count_longest(std::uint64_t bits, int n) {
  int best = 0, cur = 0;
  for (int i = 0; i < n; ++i) {
    if ((bits >> i) & 1) {
      ++cur;
      if (cur > best) best = cur;
    } else {
      cur = 0;
    }
  }
  return best;
}

int count_scan_max(std::uint64_t bits, int n, int r) {
  int window = 0;
  for (int i = 0; i < r && i < n; ++i) window += (bits >> i) & 1;
  int best = window;
  for (int i = r; i < n; ++i) {
    window += ((bits >> i) & 1) - ((bits >> (i - r)) & 1);
    if (window > best) best = window;
  }
  return best;
}

}  // namespace

ConditionalPmf enumerate_pmf(int n, int n1, const StatTag& stat,
                             std::uint64_t max_sequences) {
  if (n < 1 || n > 62) throw validation_error("oracle: n must lie in [1, 62]");
  if (n1 < 0 || n1 > n) throw validation_error("oracle: n1 must lie in [0, n]");
  if ((stat.kind == StatKind::ScanMax || stat.kind == StatKind::WindowTail) &&
      (stat.r < 1 || stat.r > n))
    throw validation_error("oracle: r must lie in [1, n]");
  if (stat.kind == StatKind::WindowTail && stat.s < 1)
    throw validation_error("oracle: s must be >= 1");

  const std::uint64_t total = binomial(n, n1);
  if (total > max_sequences)
    throw capacity_error("oracle: C(" + std::to_string(n) + "," + std::to_string(n1) +
                         ") = " + std::to_string(total) + " sequences exceed the budget");

  std::vector<std::uint64_t> counts(n + 1, 0);
  std::uint64_t seen = 0;
  std::uint64_t mask = n1 == 0 ? 0 : (std::uint64_t{1} << n1) - 1;
  const std::uint64_t limit = n == 62 ? ~std::uint64_t{0} >> 2 : (std::uint64_t{1} << n);
  while (true) {
    int value = 0;
    switch (stat.kind) {
      case StatKind::RunsCount:
        value = count_runs(mask, n);
        break;
      case StatKind::LongestRun:
        value = count_longest(mask, n);
        break;
      case StatKind::ScanMax:
        value = count_scan_max(mask, n, stat.r);
        break;
      case StatKind::WindowTail:
        value = count_scan_max(mask, n, stat.r) >= stat.s ? 1 : 0;
        break;
    }
    ++counts[value];
    ++seen;
    if (n1 == 0 || n1 == n) break;
    // Gosper's hack: next mask with the same popcount
    const std::uint64_t c = mask & (~mask + 1);
    const std::uint64_t rr = mask + c;
    mask = (((rr ^ mask) >> 2) / c) | rr;
    if (mask >= limit) break;
  }
  if (seen != total)
    throw structural_error("oracle: enumerated " + std::to_string(seen) +
                           " sequences, expected " + std::to_string(total));

  std::vector<int> support;
  std::vector<double> probs;
  for (int v = 0; v <= n; ++v) {
    if (counts[v] == 0) continue;
    support.push_back(v);
    probs.push_back(static_cast<double>(counts[v]) / static_cast<double>(total));
  }
  return ConditionalPmf(n, n1, stat, std::move(support), std::move(probs));
}

}  // namespace runpat::oracle
