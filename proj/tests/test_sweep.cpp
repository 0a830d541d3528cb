#include "ainfer/sweep.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

namespace ainfer {
namespace {

ScenarioConfig base_scenario() {
  ScenarioConfig cfg;
  cfg.client.n = 50;
  cfg.client.g = 0.7;
  cfg.client.horizon = 200;
  cfg.latency.server = LatencySpec::constant(330);
  cfg.world.vmax = 0.001;
  cfg.world.cube = {10.0, 0.0};
  return cfg;
}

TEST(Sweep, ThreeRegimesOneSeedGiveThreeRows) {
  SweepGrid grid;
  grid.g = {0.0, 0.7, 1.0};
  grid.seeds = {1};
  const auto rows = run_sweep(base_scenario(), grid, std::nullopt);
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& row : rows) EXPECT_TRUE(row.ok) << row.error;
  EXPECT_DOUBLE_EQ(rows[0].cell.g, 0.0);
  EXPECT_DOUBLE_EQ(rows[2].cell.g, 1.0);
  EXPECT_GT(rows[0].metrics.idle_ticks, 0);
  EXPECT_EQ(rows[1].metrics.idle_ticks, 0);
}

TEST(Sweep, InvalidCellIsFlaggedOthersComplete) {
  SweepGrid grid;
  grid.g = {0.7};
  grid.n = {50, -3, 25};
  grid.seeds = {1};
  const auto rows = run_sweep(base_scenario(), grid, std::nullopt);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_TRUE(rows[0].ok);
  EXPECT_FALSE(rows[1].ok);
  EXPECT_FALSE(rows[1].error.empty());
  EXPECT_TRUE(rows[2].ok);
}

TEST(Sweep, CsvIsLongFormat) {
  SweepGrid grid;
  grid.g = {0.0, 0.7};
  grid.seeds = {1, 2};
  const auto rows = run_sweep(base_scenario(), grid, std::nullopt);
  const std::string csv = sweep_csv(rows);
  // header + 4 rows
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
  EXPECT_NE(csv.find("g,server_latency_ms,n,epsilon,seed,status"), std::string::npos);
  EXPECT_NE(csv.find("ok"), std::string::npos);
}

TEST(Sweep, SeriesFilesWritten) {
  const auto dir = std::filesystem::temp_directory_path() / "ainfer_sweep_series";
  std::filesystem::remove_all(dir);
  SweepGrid grid;
  grid.g = {0.0, 0.7};
  grid.seeds = {1};
  const auto rows = run_sweep(base_scenario(), grid, dir.string());
  for (const auto& row : rows) {
    const auto path = dir / series_file_name(row.cell);
    EXPECT_TRUE(std::filesystem::exists(path)) << path;
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "tick,queue_size,regime");
  }
  std::filesystem::remove_all(dir);
}

TEST(Sweep, NoSeedsIsAnError) {
  SweepGrid grid;
  grid.g = {0.7};
  EXPECT_THROW(run_sweep(base_scenario(), grid, std::nullopt), ScenarioSemanticError);
}

}  // namespace
}  // namespace ainfer
