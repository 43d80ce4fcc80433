#include "runpat/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <deque>
#include <limits>
#include <map>
#include <mutex>
#include <unordered_map>

#include "runpat/rng.hpp"

namespace runpat {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_binomial(int n, int k) {
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

}  // namespace

std::uint64_t CompoundPattern::pattern_count(int r, int s) {
  if (s < 1 || s > r) throw validation_error("patterns: need 1 <= s <= r");
  if (s == 1) return 1;
  std::uint64_t total = 0;
  for (int v = 0; v <= r - s; ++v) {
    std::uint64_t term = saturating_binomial(s - 2 + v, v);
    if (term == kSaturated || total > kSaturated - term) return kSaturated;
    total += term;
  }
  return total;
}

CompoundPattern::CompoundPattern(int r, int s, std::vector<std::string> patterns)
    : r_(r), s_(s), patterns_(std::move(patterns)) {}

CompoundPattern CompoundPattern::enumerate(int r, int s, const Budget& budget) {
  if (s < 1 || s > r) throw validation_error("patterns: need 1 <= s <= r");
  std::uint64_t count = pattern_count(r, s);
  if (count > budget.max_states)
    throw capacity_error("patterns: compound pattern for (r=" + std::to_string(r) +
                         ", s=" + std::to_string(s) + ") has " +
                         (count == kSaturated ? std::string(">1e19")
                                              : std::to_string(count)) +
                         " simple patterns, over the state budget; "
                         "use the Monte Carlo estimator");

  std::vector<std::string> patterns;
  patterns.reserve(count);
  if (s == 1) {
    patterns.push_back("1");
  } else {
    // distribute up to r-s zeros over the s-1 gaps between consecutive ones
    std::string word;
    word.reserve(r);
    word.push_back('1');
    auto rec = [&](auto&& self, int ones_left, int zeros_left) -> void {
      if (ones_left == 0) {
        patterns.push_back(word);
        return;
      }
      for (int gap = 0; gap <= zeros_left; ++gap) {
        word.append(gap, '0');
        word.push_back('1');
        self(self, ones_left - 1, zeros_left - gap);
        word.resize(word.size() - gap - 1);
      }
    };
    rec(rec, s - 1, r - s);
    std::sort(patterns.begin(), patterns.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
  }
  if (patterns.size() != count)
    throw structural_error("patterns: enumeration disagrees with the closed-form count");
  return CompoundPattern(r, s, std::move(patterns));
}

// ---------------------------------------------------------------------------
// Ending-block automaton: an Aho-Corasick machine over the simple patterns.
// The ending blocks are exactly the proper prefixes of the patterns, and the
// longest-suffix update is realized by the goto/failure closure.
// ---------------------------------------------------------------------------

namespace {

struct TrieNode {
  int child[2] = {-1, -1};
  int parent = -1;
  int pbit = 0;
  int fail = 0;
  int ones = 0;
  bool matched = false;
};

}  // namespace

EndingBlockAutomaton EndingBlockAutomaton::build(const CompoundPattern& compound,
                                                 const Budget& budget) {
  std::vector<TrieNode> trie(1);
  for (const auto& pattern : compound.patterns()) {
    int node = 0;
    for (char ch : pattern) {
      const int bit = ch - '0';
      if (trie[node].child[bit] < 0) {
        if (trie.size() >= budget.max_states)
          throw capacity_error("automaton: ending-block trie exceeds the state budget; "
                               "use the Monte Carlo estimator");
        TrieNode fresh;
        fresh.parent = node;
        fresh.pbit = bit;
        fresh.ones = trie[node].ones + bit;
        trie[node].child[bit] = static_cast<int>(trie.size());
        trie.push_back(fresh);
      }
      node = trie[node].child[bit];
    }
    trie[node].matched = true;
  }

  // breadth-first failure links; delta is the goto/failure closure
  std::vector<std::array<int, 2>> delta(trie.size());
  std::deque<int> queue;
  for (int bit = 0; bit < 2; ++bit) {
    int c = trie[0].child[bit];
    if (c < 0) {
      delta[0][bit] = 0;
    } else {
      delta[0][bit] = c;
      trie[c].fail = 0;
      queue.push_back(c);
    }
  }
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    trie[u].matched = trie[u].matched || trie[trie[u].fail].matched;
    for (int bit = 0; bit < 2; ++bit) {
      int c = trie[u].child[bit];
      if (c < 0) {
        delta[u][bit] = delta[trie[u].fail][bit];
      } else {
        delta[u][bit] = c;
        trie[c].fail = delta[trie[u].fail][bit];
        queue.push_back(c);
      }
    }
  }

  // compact to the non-matched nodes; entering any matched node absorbs
  std::vector<int> renumber(trie.size(), -1);
  std::vector<int> kept;
  kept.reserve(trie.size());
  for (std::size_t u = 0; u < trie.size(); ++u) {
    if (!trie[u].matched) {
      renumber[u] = static_cast<int>(kept.size());
      kept.push_back(static_cast<int>(u));
    }
  }
  if (kept.empty() || kept[0] != 0)
    throw structural_error("automaton: the empty block must be a live node");

  EndingBlockAutomaton out;
  out.step_.resize(2 * kept.size());
  out.ones_.resize(kept.size());
  out.labels_.resize(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const int u = kept[i];
    out.ones_[i] = trie[u].ones;
    std::string label;
    for (int w = u; w != 0; w = trie[w].parent)
      label.push_back(static_cast<char>('0' + trie[w].pbit));
    std::reverse(label.begin(), label.end());
    out.labels_[i] = std::move(label);
    for (int bit = 0; bit < 2; ++bit) {
      const int v = delta[u][bit];
      out.step_[2 * i + bit] = trie[v].matched ? kAbsorbing : renumber[v];
    }
    if (out.step_[2 * i + 0] == kAbsorbing)
      throw structural_error("automaton: a 0 bit completed a pattern");
  }
  return out;
}

namespace {

// Automata are pure functions of (r, s); cache the small ones.
std::shared_ptr<const EndingBlockAutomaton> get_automaton(int r, int s,
                                                          const Budget& budget) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const EndingBlockAutomaton>> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find({r, s});
    if (it != cache.end()) return it->second;
  }
  auto automaton = std::make_shared<const EndingBlockAutomaton>(
      EndingBlockAutomaton::build(CompoundPattern::enumerate(r, s, budget), budget));
  if (automaton->node_count() <= 100'000) {
    std::lock_guard lock(mutex);
    cache.insert({{r, s}, automaton});
  }
  return automaton;
}

}  // namespace

ScanQuery::ScanQuery(int n_, int n1_, int r_, int s_) : n(n_), n1(n1_), r(r_), s(s_) {
  if (n < 1) throw validation_error("scan: n must be >= 1");
  if (n1 < 0 || n1 > n) throw validation_error("scan: n1 must lie in [0, n]");
  if (r < 1 || r > n) throw validation_error("scan: r must lie in [1, n]");
  if (s < 1) throw validation_error("scan: s must be >= 1");
}

ScanChain::ScanChain(const ScanQuery& query,
                     std::shared_ptr<const EndingBlockAutomaton> automaton,
                     const Budget& budget)
    : query_(query), automaton_(std::move(automaton)) {
  if (!automaton_) throw structural_error("scan chain: null automaton");

  // forward reachability over (m, block) pairs; the key packs both
  const auto key_of = [this](int m, int node) {
    return static_cast<std::uint64_t>(m) * automaton_->node_count() + node;
  };
  std::unordered_map<std::uint64_t, int> intern;
  std::vector<int> node_of;
  std::deque<int> queue;

  const auto state_of = [&](int m, int node) {
    auto [it, inserted] = intern.try_emplace(key_of(m, node),
                                             static_cast<int>(m_of_.size()));
    if (inserted) {
      if (m_of_.size() >= budget.max_states)
        throw capacity_error("scan chain: transient state count exceeds the budget (" +
                             std::to_string(budget.max_states) +
                             "); use the Monte Carlo estimator");
      m_of_.push_back(m);
      node_of.push_back(node);
      to_one_.push_back(-2);
      to_zero_.push_back(-2);
      queue.push_back(it->second);
    }
    return it->second;
  };

  state_of(0, automaton_->root());
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    const int m = m_of_[u];
    const int node = node_of[u];
    if (m < query_.n1) {
      const int v1 = automaton_->step(node, 1);
      to_one_[u] = v1 == EndingBlockAutomaton::kAbsorbing
                       ? -1
                       : state_of(m + 1, v1);
    } else {
      to_one_[u] = -1;  // no ones left; branch carries probability 0
    }
    to_zero_[u] = state_of(m, automaton_->step(node, 0));
  }

  auto automaton_ref = automaton_;
  auto ms = std::make_shared<std::vector<int>>(m_of_);
  auto nodes = std::make_shared<std::vector<int>>(std::move(node_of));
  space_ = std::make_shared<fmci::StateSpace>(
      m_of_.size(), [automaton_ref, ms, nodes](int i) {
        const std::string& block = automaton_ref->label((*nodes)[i]);
        return std::to_string((*ms)[i]) + "|" + (block.empty() ? "-" : block);
      });
}

fmci::DistributionVector ScanChain::initial() const {
  return fmci::DistributionVector::point_mass(space_, 0);
}

fmci::StepKernel ScanChain::kernel_at(int t) const {
  const int n = query_.n;
  const int n1 = query_.n1;
  if (t < 1 || t > n)
    throw validation_error("scan kernel: t must lie in [1, n], got " + std::to_string(t));

  const double denom = n - t + 1;
  std::vector<fmci::KernelEntry> entries;
  entries.reserve(2 * m_of_.size());
  for (std::size_t u = 0; u < m_of_.size(); ++u) {
    const int m = m_of_[u];
    const double p_one = n1 - m > 0 ? (n1 - m) / denom : 0.0;
    const double zeros_left = n - n1 - t + m + 1;
    const double p_zero = zeros_left > 0 ? zeros_left / denom : 0.0;
    // the 0-branch entry is always emitted (possibly with probability 0) so
    // that no row falls back to the implicit identity
    entries.push_back({static_cast<int>(u), to_zero_[u], p_zero});
    if (p_one > 0.0 && to_one_[u] >= 0)
      entries.push_back({static_cast<int>(u), to_one_[u], p_one});
  }
  fmci::StepKernel kernel(space_, t, std::move(entries),
                          fmci::StepKernel::RowPolicy::Substochastic);
  if (kernel.max_row_entries() > 2)
    throw structural_error("scan kernel: more than 2 outgoing transitions");
  return kernel;
}

double ScanChain::survival() const {
  return fmci::survival_probability(initial(), query_.n,
                                    [this](int t) { return kernel_at(t); });
}

std::vector<fmci::StepKernel> scan_step_kernels(const ScanQuery& query,
                                                const EndingBlockAutomaton& automaton,
                                                const Budget& budget) {
  auto shared = std::make_shared<const EndingBlockAutomaton>(automaton);
  ScanChain chain(query, shared, budget);
  std::vector<fmci::StepKernel> kernels;
  kernels.reserve(query.n);
  for (int t = 1; t <= query.n; ++t) kernels.push_back(chain.kernel_at(t));
  return kernels;
}

double scan_cdf_at(const ScanQuery& query, const Budget& budget) {
  if (query.n1 == 0) return 1.0;
  if (query.s > std::min(query.r, query.n1)) return 1.0;
  if (query.s == 1) return 0.0;
  if (query.r == query.n) return 0.0;  // the single window holds all n1 >= s ones
  auto automaton = get_automaton(query.r, query.s, budget);
  return ScanChain(query, automaton, budget).survival();
}

double scan_tail(const ScanQuery& query, const Budget& budget) {
  return 1.0 - scan_cdf_at(query, budget);
}

ConditionalPmf scan_pmf(int n, int n1, int r, const Budget& budget) {
  const StatTag tag{StatKind::ScanMax, r, 0};
  if (n1 == 0) return ConditionalPmf(n, n1, tag, {0}, {1.0});
  if (r == n || n1 == n)
    return ConditionalPmf(n, n1, tag, {std::min(r, n1)}, {1.0});

  const int smax = std::min(r, n1);
  std::vector<double> cdf(smax + 2);  // cdf[s] = P(S < s), s = 1..smax+1
  for (int s = 1; s <= smax; ++s) cdf[s] = scan_cdf_at(ScanQuery(n, n1, r, s), budget);
  cdf[smax + 1] = 1.0;

  std::vector<int> support;
  std::vector<double> probs;
  for (int s = 1; s <= smax; ++s) {
    double atom = cdf[s + 1] - cdf[s];
    if (atom < 0.0) {
      if (atom < -1e-12)
        throw validation_error("scan pmf: negative atom " + std::to_string(atom));
      atom = 0.0;
    }
    if (probs.empty() && atom == 0.0) continue;  // below the feasible minimum
    support.push_back(s);
    probs.push_back(atom);
  }
  return ConditionalPmf(n, n1, tag, std::move(support), std::move(probs));
}

Percentile scan_upper_percentile(int n, int n1, int r, double alpha,
                                 const Budget& budget) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw validation_error("scan percentile: alpha must lie in (0,1)");
  const int smax = std::min(r, n1);
  Percentile best{smax + 1, 0.0};
  for (int s = smax; s >= 1; --s) {
    const double tail = scan_tail(ScanQuery(n, n1, r, s), budget);
    if (tail > alpha) break;
    best = {s, tail};
  }
  return best;
}

// ---------------------------------------------------------------------------
// Monte Carlo fallback
// ---------------------------------------------------------------------------

namespace {

// Histogram of S_n(r) over `reps` uniform random [n-n1, n1] permutations.
// Streams are derived from the replication index, so the histogram does not
// depend on batching.
std::vector<std::uint64_t> scan_histogram_mc(int n, int n1, int r, int reps,
                                             std::uint64_t seed) {
  constexpr std::uint64_t kScanSalt = 0x5ca11eadULL;
  std::vector<std::uint64_t> counts(std::min(r, n1) + 1, 0);
  std::vector<std::uint8_t> bits(n);
  for (int rep = 0; rep < reps; ++rep) {
    std::fill(bits.begin(), bits.end(), std::uint8_t{0});
    std::fill(bits.begin(), bits.begin() + n1, std::uint8_t{1});
    auto gen = replication_stream(seed, static_cast<std::uint64_t>(rep), kScanSalt);
    for (int i = n - 1; i > 0; --i) {
      const int j = static_cast<int>(gen() % static_cast<std::uint64_t>(i + 1));
      std::swap(bits[i], bits[j]);
    }
    int window = 0;
    for (int i = 0; i < r; ++i) window += bits[i];
    int best = window;
    for (int i = r; i < n; ++i) {
      window += bits[i] - bits[i - r];
      if (window > best) best = window;
    }
    ++counts[best];
  }
  return counts;
}

}  // namespace

McEstimate scan_tail_mc(const ScanQuery& query, int reps, std::uint64_t seed) {
  if (reps < 1000) throw validation_error("scan mc: reps must be >= 1000");
  McEstimate out;
  out.reps = reps;
  out.seed = seed;
  if (query.s > std::min(query.r, query.n1)) return out;  // estimate 0, zero variance
  auto counts = scan_histogram_mc(query.n, query.n1, query.r, reps, seed);
  std::uint64_t hits = 0;
  for (std::size_t v = query.s; v < counts.size(); ++v) hits += counts[v];
  out.estimate = static_cast<double>(hits) / reps;
  out.std_error = std::sqrt(out.estimate * (1.0 - out.estimate) / reps);
  return out;
}

ConditionalPmf scan_pmf_mc(int n, int n1, int r, int reps, std::uint64_t seed) {
  if (reps < 1000) throw validation_error("scan mc: reps must be >= 1000");
  const StatTag tag{StatKind::ScanMax, r, 0};
  if (n1 == 0) return ConditionalPmf(n, n1, tag, {0}, {1.0}, /*exact=*/false);
  auto counts = scan_histogram_mc(n, n1, r, reps, seed);
  std::vector<int> support;
  std::vector<double> probs;
  for (std::size_t v = 0; v < counts.size(); ++v) {
    if (counts[v] == 0) continue;
    support.push_back(static_cast<int>(v));
    probs.push_back(static_cast<double>(counts[v]) / reps);
  }
  return ConditionalPmf(n, n1, tag, std::move(support), std::move(probs),
                        /*exact=*/false);
}

}  // namespace runpat
