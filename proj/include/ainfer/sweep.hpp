#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ainfer/metrics.hpp"
#include "ainfer/scenario.hpp"

namespace ainfer {

// Parameter grid over the four knobs the regime analysis cares about.
// Empty vectors mean "keep the base scenario's value".
struct SweepGrid {
  std::vector<double> g;
  std::vector<double> server_latency_ms;  // replaces latency.server with const:<ms>
  std::vector<int> n;
  std::vector<double> epsilon;
  std::vector<std::uint64_t> seeds;  // must be non-empty
};

struct SweepCell {
  double g = 0.0;
  double server_latency_ms = 0.0;
  int n = 0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
};

struct SweepRow {
  SweepCell cell;
  bool ok = false;
  std::string error;  // set when !ok; other cells still run
  Metrics metrics;
};

// Runs simulate once per grid cell per seed, sequentially, cells isolated.
// When series_dir is set, each cell's queue series lands there as
// series_g<g>_ls<ms>_n<n>_eps<e>_seed<s>.csv.
std::vector<SweepRow> run_sweep(const ScenarioConfig& base, const SweepGrid& grid,
                                const std::optional<std::string>& series_dir);

// Long-format CSV of all rows (header + one line per cell/seed).
std::string sweep_csv(const std::vector<SweepRow>& rows);

// The file name used for a cell's queue series.
std::string series_file_name(const SweepCell& cell);

}  // namespace ainfer
