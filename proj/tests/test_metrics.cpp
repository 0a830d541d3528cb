#include "ainfer/metrics.hpp"

#include <gtest/gtest.h>

#include "ainfer/simulate.hpp"

namespace ainfer {
namespace {

// ── closed-form operators ────────────────────────────────────────────────────

TEST(ExpectedLatency, HandComputed) {
  EXPECT_DOUBLE_EQ(expected_latency(5, 330, 5), 340.0);
  EXPECT_DOUBLE_EQ(expected_latency(0, 0, 0), 0.0);
  for (double x : {1.0, 33.0, 330.0, 12345.0})
    EXPECT_DOUBLE_EQ(expected_latency(0, x, 0), x);
}

TEST(ExpectedLatency, NegligibilitySimplification) {
  EXPECT_TRUE(transit_negligible(5, 330, 5));
  EXPECT_FALSE(transit_negligible(50, 330, 5));
  EXPECT_TRUE(transit_negligible(0, 0, 0));  // 0 <= 0
}

TEST(MinGNoStarvation, HandComputed) {
  EXPECT_DOUBLE_EQ(min_g_no_starvation(330, 33, 50).exact, 0.2);
  EXPECT_DOUBLE_EQ(min_g_no_starvation(0, 33, 50).exact, 0.0);
  EXPECT_DOUBLE_EQ(min_g_no_starvation(1650, 33, 50).exact, 1.0);  // clamped
  EXPECT_DOUBLE_EQ(min_g_no_starvation(330, 33, 50).conservative, 0.2);
  // Conservative bound rounds partial ticks up and is deliberately not
  // clamped, so impossible regimes are visible.
  EXPECT_DOUBLE_EQ(min_g_no_starvation(200, 33, 50).conservative, 7.0 / 50.0);
  EXPECT_DOUBLE_EQ(min_g_no_starvation(660, 33, 10).conservative, 2.0);
}

TEST(MinGNoStarvation, Monotonicity) {
  double prev = 0.0;
  for (double ls : {0.0, 33.0, 100.0, 330.0, 660.0, 1650.0}) {
    const double cur = min_g_no_starvation(ls, 33, 50).exact;
    EXPECT_GE(cur, prev);
    prev = cur;
  }
  // Non-increasing in n and in dt.
  EXPECT_GE(min_g_no_starvation(330, 33, 10).exact, min_g_no_starvation(330, 33, 50).exact);
  EXPECT_GE(min_g_no_starvation(330, 33, 50).exact, min_g_no_starvation(330, 66, 50).exact);
}

// ── trace-derived metrics ────────────────────────────────────────────────────

ScenarioConfig sequential_scenario(Tick horizon) {
  ScenarioConfig cfg;
  cfg.client.n = 50;
  cfg.client.g = 0.0;
  cfg.client.horizon = horizon;
  cfg.mode = Mode::Sync;
  cfg.latency.server = LatencySpec::constant(330);
  cfg.world.vmax = 0.001;
  cfg.world.cube = {10.0, 0.0};
  return cfg;
}

TEST(ComputeMetrics, SequentialRun) {
  const auto cfg = sequential_scenario(600);
  const Metrics m = compute_metrics(simulate(cfg), cfg.client);

  // Cycles: 50 exec + 10 idle, then (40 exec + 10 idle) repeating; sends
  // land at ticks 50, 100, ..., 550.
  EXPECT_EQ(m.inference_calls, 12);  // init + 11
  EXPECT_EQ(m.idle_ticks, 110);
  EXPECT_DOUBLE_EQ(m.idle_fraction, 110.0 / 600.0);
  EXPECT_DOUBLE_EQ(m.mean_send_period_ticks, 50.0);
  EXPECT_DOUBLE_EQ(m.mean_receive_latency_ms, 330.0 * 11 / 12);  // init pair is instant
  EXPECT_EQ(m.queue_series.size(), 600u);
}

TEST(ComputeMetrics, PureFunctionOfTrace) {
  const auto cfg = sequential_scenario(300);
  const RunTrace trace = simulate(cfg);
  const Metrics a = compute_metrics(trace, cfg.client);
  const Metrics b = compute_metrics(trace, cfg.client);
  EXPECT_EQ(a.idle_ticks, b.idle_ticks);
  EXPECT_EQ(a.inference_calls, b.inference_calls);
  EXPECT_EQ(a.queue_series, b.queue_series);
  EXPECT_DOUBLE_EQ(a.mean_send_period_ticks, b.mean_send_period_ticks);
}

TEST(ComputeMetrics, EmptyTraceIsAnError) {
  RunTrace empty;
  EXPECT_THROW(compute_metrics(empty, ClientConfig{}), IncompleteTraceError);
  RunTrace aborted;
  aborted.add(TraceEvent::idle(0));
  aborted.complete = false;
  EXPECT_THROW(compute_metrics(aborted, ClientConfig{}), IncompleteTraceError);
}

TEST(QueueSeriesCsv, RowPerTick) {
  auto cfg = sequential_scenario(3);
  const std::string csv = queue_series_csv(simulate(cfg), cfg.client, "g=0");
  EXPECT_EQ(csv,
            "tick,queue_size,regime\n"
            "0,49,g=0\n"
            "1,48,g=0\n"
            "2,47,g=0\n");
}

TEST(QueueSeriesCsv, SequentialSeriesTouchesZero) {
  const auto cfg = sequential_scenario(200);
  const Metrics m = compute_metrics(simulate(cfg), cfg.client);
  bool any_zero = false;
  for (const auto& [tick, size] : m.queue_series) any_zero |= (size == 0);
  EXPECT_TRUE(any_zero);
}

}  // namespace
}  // namespace ainfer
