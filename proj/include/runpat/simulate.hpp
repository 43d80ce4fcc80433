#ifndef RUNPAT_SIMULATE_HPP
#define RUNPAT_SIMULATE_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "runpat/chart.hpp"

namespace runpat {

enum class Family { Normal, Exp1, T3 };

std::string family_name(Family family);

// sigma0 of the in-control distribution: 1 for N(0,1) and Exp(1), sqrt(3)
// for t with 3 degrees of freedom (variance df/(df-2)).
double family_sigma0(Family family);

// Step change in location: observations 1..tau are in-control draws from
// the family, observations tau+1..n are shifted by delta * sigma0.
// tau = n means a pure in-control path.
struct ChangePointSpec {
  Family family = Family::Normal;
  int n = 50;
  int tau = 50;
  double delta = 0.0;

  ChangePointSpec(Family family_, int n_, int tau_, double delta_);
};

Sample sample_path(const ChangePointSpec& spec, std::mt19937_64& stream);

struct SignalEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  int reps = 0;
  std::uint64_t seed = 0;
  int signals = 0;
  int degenerate = 0;        // counted and excluded from the denominator
  ChangePointSpec spec;
  ChartConfig config;
};

// Signal fraction over `reps` independent paths.  Streams are derived from
// (seed, replication index), so the estimate is bit-identical for any
// `threads` value.
SignalEstimate estimate_signal_prob(const ChangePointSpec& spec,
                                    const ChartConfig& config, int reps,
                                    std::uint64_t seed, int threads = 1);

enum class Scenario { I, II, III, IC };

// tau as a fraction of n: I = n/5, II = n/2, III = 4n/5, IC = n (matching
// 10/25/40 at n=50 and 20/50/80 at n=100).
int scenario_tau(Scenario scenario, int n);

// Recommended baseline proportion for a chart/scenario cell; right-skewed
// Exp(1) is adjusted down by 0.1.
double recommended_p0(ChartKind chart, int r, Scenario scenario, Family family);

struct SuiteCell {
  Family family;
  int n;
  Scenario scenario;
  double delta;
  ChartKind chart;
  int r;
  double p0;
};

// Cross-product of the requested grids, one estimate per cell.  An empty
// p0 grid selects recommended_p0 per cell.
std::vector<SignalEstimate> scenario_suite(
    const std::vector<Family>& families, const std::vector<int>& ns,
    const std::vector<Scenario>& scenarios, ChartKind chart,
    const std::vector<int>& windows, const std::vector<double>& p0_grid,
    const std::vector<double>& deltas, double alpha, bool randomize, int reps,
    std::uint64_t seed, int threads = 1);

}  // namespace runpat

#endif  // RUNPAT_SIMULATE_HPP
