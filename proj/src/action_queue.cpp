#include "ainfer/action_queue.hpp"

#include <cmath>
#include <string>

namespace ainfer {

GapError::GapError(Tick queue_end_, Tick incoming_start_)
    : std::runtime_error("merge would leave timesteps (" + std::to_string(queue_end_) +
                         ", " + std::to_string(incoming_start_) + ") uncovered"),
      queue_end(queue_end_),
      incoming_start(incoming_start_) {}

std::optional<TimedAction> ActionQueue::pop_front() {
  if (entries_.empty()) return std::nullopt;
  TimedAction front = std::move(entries_.front());
  entries_.pop_front();
  return front;
}

bool ActionQueue::below_threshold(std::size_t size, int n, double g) {
  if (g <= 0.0) return false;  // size < 0 is never true; g=0 never triggers early
  if (size == 0) return true;  // 0 < g*n for g > 0, n >= 1
  int exp = 0;
  const double m = std::frexp(g, &exp);  // g = m * 2^exp, m in [0.5, 1)
  const auto mant =
      static_cast<unsigned __int128>(static_cast<std::uint64_t>(std::ldexp(m, 53)));
  // size < g*n  <=>  size * 2^(53-exp) < mant * n, both sides exact integers.
  const int shift = 53 - exp;
  if (shift >= 96) return false;  // then lhs >= 2^96 > mant*n <= 2^84
  const auto lhs = static_cast<unsigned __int128>(size) << shift;
  const auto rhs = mant * static_cast<unsigned __int128>(n);
  return lhs < rhs;
}

MergeStats ActionQueue::merge_chunk(const ActionChunk& incoming, Tick current_tick,
                                    const AggregationPolicy& policy) {
  MergeStats stats;

  // Drop the stale prefix of the incoming chunk.
  std::size_t skip = 0;
  if (incoming.start_timestep < current_tick) {
    skip = static_cast<std::size_t>(std::min<Tick>(
        current_tick - incoming.start_timestep, static_cast<Tick>(incoming.size())));
  }
  stats.dropped_stale = static_cast<std::uint32_t>(skip);
  if (skip == incoming.size()) {  // fully stale: nothing to merge
    stats.size_after = static_cast<std::uint32_t>(entries_.size());
    return stats;
  }

  const Tick in_start = incoming.start_timestep + static_cast<Tick>(skip);
  const Tick in_end = incoming.end_timestep();

  if (!entries_.empty()) {
    if (in_start > entries_.back().timestep + 1)
      throw GapError(entries_.back().timestep, in_start);
    if (in_end < entries_.front().timestep - 1)
      throw GapError(in_end, entries_.front().timestep);
  }

  source_chunk_id_ = incoming.chunk_id;
  const auto action_at = [&](Tick ts) -> const Action& {
    return incoming.actions[static_cast<std::size_t>(ts - incoming.start_timestep)];
  };

  if (entries_.empty()) {
    for (Tick ts = in_start; ts <= in_end; ++ts) entries_.push_back({ts, action_at(ts)});
    stats.appended = static_cast<std::uint32_t>(entries_.size());
    stats.size_after = stats.appended;
    return stats;
  }

  const Tick q_front = entries_.front().timestep;
  const Tick q_end = entries_.back().timestep;

  // Prepend region (rare: only when the incoming chunk reaches below the
  // queue front), in descending order to keep entries sorted.
  for (Tick ts = q_front - 1; ts >= in_start; --ts) {
    entries_.push_front({ts, action_at(ts)});
    ++stats.appended;
  }
  // Overlap region.
  const Tick ov_lo = std::max(in_start, q_front);
  const Tick ov_hi = std::min(in_end, q_end);
  for (Tick ts = ov_lo; ts <= ov_hi; ++ts) {
    const std::size_t idx = static_cast<std::size_t>(ts - entries_.front().timestep);
    Action& old = entries_[idx].action;
    const Action& inc = action_at(ts);
    if (policy.mode == AggregationMode::ReplaceOverlap) {
      old = inc;
    } else {
      for (std::size_t i = 0; i < old.values.size(); ++i)
        old.values[i] = policy.alpha * old.values[i] + (1.0 - policy.alpha) * inc.values[i];
    }
    ++stats.overlapped;
  }
  // Append region.
  for (Tick ts = q_end + 1; ts <= in_end; ++ts) {
    entries_.push_back({ts, action_at(ts)});
    ++stats.appended;
  }

  stats.size_after = static_cast<std::uint32_t>(entries_.size());
  return stats;
}

}  // namespace ainfer
