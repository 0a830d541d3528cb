#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ainfer/trace.hpp"
#include "ainfer/types.hpp"

namespace ainfer {

class IncompleteTraceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Metrics {
  std::int64_t idle_ticks = 0;
  double idle_fraction = 0.0;           // idle / total ticks elapsed
  double mean_send_period_ticks = 0.0;  // mean gap between observation sends
  double mean_receive_latency_ms = 0.0; // send stamp -> arrival stamp, paired FIFO
  std::int64_t inference_calls = 0;     // == number of ObsSent events
  std::int64_t tasks_completed = 0;
  std::vector<std::pair<Tick, std::uint32_t>> queue_series;  // post-pop size per tick
};

// E[l] = E[t_C->S] + E[l_S] + E[t_S->C].
double expected_latency(double mean_t_cs_ms, double mean_l_s_ms, double mean_t_sc_ms);

// True when both transit means are within ratio * E[l_S], i.e. when
// E[l] ~= E[l_S] is a fair simplification.
bool transit_negligible(double mean_t_cs_ms, double mean_l_s_ms, double mean_t_sc_ms,
                        double ratio = 0.05);

struct StarvationBound {
  double exact = 0.0;         // (E[l_S]/dt)/n clamped to [0,1]
  double conservative = 0.0;  // ceil(E[l_S]/dt)/n, unclamped (may exceed 1:
                              // then no g in [0,1] avoids starvation)
};

// Smallest g that keeps the queue from ever emptying, per the latency
// decomposition above. Inputs in ms; dt and n positive.
StarvationBound min_g_no_starvation(double mean_l_s_ms, double delta_t_ms, int n);

// Derives all metrics from a trace. Throws IncompleteTraceError on an
// empty or aborted trace.
Metrics compute_metrics(const RunTrace& trace, const ClientConfig& config);

// One CSV row per tick: tick,queue_size,regime. Stable column order.
std::string queue_series_csv(const RunTrace& trace, const ClientConfig& config,
                             const std::string& regime_label);

// Human-readable metrics summary.
std::string summarize_metrics(const Metrics& m);

}  // namespace ainfer
