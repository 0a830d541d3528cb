#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>

#include "ainfer/types.hpp"

namespace ainfer {

// Merging a chunk that starts beyond queue end + 1 would leave an
// unreachable hole in the timestep range; that only happens when the
// server misbehaves, so it surfaces as an error instead of padding.
class GapError : public std::runtime_error {
 public:
  GapError(Tick queue_end, Tick incoming_start);
  Tick queue_end;
  Tick incoming_start;
};

struct TimedAction {
  Tick timestep = 0;
  Action action;
};

struct MergeStats {
  std::uint32_t dropped_stale = 0;  // incoming actions older than current tick
  std::uint32_t overlapped = 0;     // timesteps present on both sides
  std::uint32_t appended = 0;       // incoming actions beyond the old horizon
  std::uint32_t size_after = 0;
};

// The client-side consumable queue of timestamped actions. Entries are
// contiguous and strictly increasing in timestep at all times.
class ActionQueue {
 public:
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  Tick front_timestep() const { return entries_.front().timestep; }
  Tick end_timestep() const { return entries_.back().timestep; }
  std::uint64_t source_chunk_id() const { return source_chunk_id_; }

  // Returns nullopt when empty: an idle tick, not an error.
  std::optional<TimedAction> pop_front();

  // True iff size < g*n. The product g*n is compared exactly (integer
  // arithmetic on the mantissa of g) so threshold behavior never depends
  // on how g*n happens to round.
  static bool below_threshold(std::size_t size, int n, double g);

  // Aggregates an incoming chunk with the remaining queue at the given
  // tick: incoming actions older than current_tick are dropped, overlap
  // timesteps resolved per the aggregation policy, the rest appended.
  // Throws GapError when a non-empty queue cannot reach the incoming
  // chunk's first surviving timestep.
  MergeStats merge_chunk(const ActionChunk& incoming, Tick current_tick,
                         const AggregationPolicy& policy);

  const std::deque<TimedAction>& entries() const { return entries_; }

 private:
  std::deque<TimedAction> entries_;
  std::uint64_t source_chunk_id_ = 0;
};

}  // namespace ainfer
