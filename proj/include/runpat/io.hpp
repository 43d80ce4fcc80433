#ifndef RUNPAT_IO_HPP
#define RUNPAT_IO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "runpat/chart.hpp"
#include "runpat/localize.hpp"
#include "runpat/simulate.hpp"

namespace runpat::io {

struct Observations {
  Sample sample;
  int columns = 1;
  bool aggregated = false;
  std::string path;
  std::string digest;   // fnv1a-64 of the raw file bytes, hex
};

// CSV ingestion: one numeric column of individual observations, or k
// columns of subgroup measurements reduced to row means when `aggregate`
// is true.  An optional header row is skipped; blank trailing lines are
// tolerated; any other non-numeric cell reports its 1-based row/column.
Observations read_observations(const std::string& path, bool aggregate);

std::uint64_t fnv1a64(const std::string& bytes);

struct LocalizationReport {
  std::vector<WindowReport> windows;
  std::vector<RunReport> runs;
  std::vector<int> covered_indices;   // union over reported windows
  double max_p_value = 0.1;
};

// Filters to entries with p_value < max_p and collects the covered-index
// union (overlapping windows are reported as-is).
LocalizationReport make_report(std::vector<WindowReport> windows,
                               std::vector<RunReport> runs, double max_p);

// Schema-versioned machine-readable decision record.
nlohmann::json decision_record(const Observations& obs, const ChartConfig& config,
                               const ChartDecision& decision,
                               const LocalizationReport& localization);

std::string simulation_csv_header();
std::string simulation_csv_row(const SignalEstimate& est, Scenario scenario,
                               double alpha, bool randomize);

}  // namespace runpat::io

#endif  // RUNPAT_IO_HPP
