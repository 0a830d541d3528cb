#include "ainfer/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ainfer {

double expected_latency(double mean_t_cs_ms, double mean_l_s_ms, double mean_t_sc_ms) {
  return mean_t_cs_ms + mean_l_s_ms + mean_t_sc_ms;
}

bool transit_negligible(double mean_t_cs_ms, double mean_l_s_ms, double mean_t_sc_ms,
                        double ratio) {
  return mean_t_cs_ms <= ratio * mean_l_s_ms && mean_t_sc_ms <= ratio * mean_l_s_ms;
}

StarvationBound min_g_no_starvation(double mean_l_s_ms, double delta_t_ms, int n) {
  StarvationBound bound;
  const double ticks = mean_l_s_ms / delta_t_ms;
  bound.exact = std::clamp(ticks / n, 0.0, 1.0);
  bound.conservative = std::ceil(ticks) / n;
  return bound;
}

Metrics compute_metrics(const RunTrace& trace, const ClientConfig& /*config*/) {
  if (trace.events.empty()) throw IncompleteTraceError("empty trace");
  if (!trace.complete) throw IncompleteTraceError("trace flagged incomplete");

  Metrics m;
  std::vector<TimeMs> send_stamps;
  std::vector<Tick> send_ticks;
  std::vector<TimeMs> arrival_stamps;
  Tick last_tick = 0;

  // Post-pop queue size per tick: the last size-bearing event of a tick
  // wins (merges precede the pop within one tick).
  std::uint32_t running_size = 0;
  Tick series_tick = -1;
  const auto flush_series = [&](Tick upto) {
    while (series_tick < upto) {
      if (series_tick >= 0) m.queue_series.emplace_back(series_tick, running_size);
      ++series_tick;
    }
  };

  for (const TraceEvent& ev : trace.events) {
    last_tick = std::max(last_tick, ev.tick);
    flush_series(ev.tick);
    switch (ev.kind) {
      case EventKind::Idle:
        ++m.idle_ticks;
        running_size = 0;
        break;
      case EventKind::Exec:
        running_size = ev.queue_size;
        break;
      case EventKind::ChunkMerged:
        running_size = ev.queue_size;
        break;
      case EventKind::ObsSent:
        ++m.inference_calls;
        send_stamps.push_back(ev.time_ms);
        send_ticks.push_back(ev.tick);
        break;
      case EventKind::ChunkArrived:
        arrival_stamps.push_back(ev.time_ms);
        break;
      case EventKind::TaskDone:
        ++m.tasks_completed;
        break;
      default:
        break;
    }
  }
  flush_series(last_tick + 1);

  const Tick total_ticks = last_tick + 1;
  m.idle_fraction =
      total_ticks > 0 ? static_cast<double>(m.idle_ticks) / static_cast<double>(total_ticks)
                      : 0.0;

  if (send_ticks.size() >= 2) {
    double sum = 0.0;
    for (std::size_t i = 1; i < send_ticks.size(); ++i)
      sum += static_cast<double>(send_ticks[i] - send_ticks[i - 1]);
    m.mean_send_period_ticks = sum / static_cast<double>(send_ticks.size() - 1);
  }

  // Single in-flight makes request/response pairing positional.
  const std::size_t pairs = std::min(send_stamps.size(), arrival_stamps.size());
  if (pairs > 0) {
    double sum = 0.0;
    for (std::size_t i = 0; i < pairs; ++i)
      sum += static_cast<double>(arrival_stamps[i] - send_stamps[i]);
    m.mean_receive_latency_ms = sum / static_cast<double>(pairs);
  }

  return m;
}

std::string queue_series_csv(const RunTrace& trace, const ClientConfig& config,
                             const std::string& regime_label) {
  const Metrics m = compute_metrics(trace, config);
  std::ostringstream os;
  os << "tick,queue_size,regime\n";
  for (const auto& [tick, size] : m.queue_series)
    os << tick << "," << size << "," << regime_label << "\n";
  return os.str();
}

std::string summarize_metrics(const Metrics& m) {
  std::ostringstream os;
  os << "idle_ticks " << m.idle_ticks << "\n"
     << "idle_fraction " << m.idle_fraction << "\n"
     << "mean_send_period_ticks " << m.mean_send_period_ticks << "\n"
     << "mean_receive_latency_ms " << m.mean_receive_latency_ms << "\n"
     << "inference_calls " << m.inference_calls << "\n"
     << "tasks_completed " << m.tasks_completed << "\n";
  return os.str();
}

}  // namespace ainfer
