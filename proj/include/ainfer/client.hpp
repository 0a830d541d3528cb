#pragma once

#include <deque>
#include <functional>
#include <optional>

#include "ainfer/action_queue.hpp"
#include "ainfer/similarity_filter.hpp"
#include "ainfer/trace.hpp"
#include "ainfer/types.hpp"

namespace ainfer {

// The control loop side of the stack. One tick:
//   1. merge chunks that arrived by this tick's start (newest data first),
//   2. pop the front action,
//   3. on the post-pop queue, decide whether to capture and send an
//      observation: below-threshold or empty triggers a capture, the
//      similarity filter may drop it, an empty queue bypasses the filter,
//      and at most one request is ever in flight,
//   4. execute (or hold, on an empty queue).
//
// Captures read the pre-execution state, so an observation sent at tick t
// carries timestep t and the resulting chunk starts at t.
class RobotClient {
 public:
  struct Hooks {
    // Current world state; the client owns timestep/capture_time stamping.
    std::function<JointState()> capture_joints;
    // Applies the popped action to the world.
    std::function<void(const Action&, Tick)> execute;
    // Transmits one observation upstream.
    std::function<void(const Observation&)> send;
    // Optional: give the transport a chance to deliver due messages
    // mid-tick (zero-latency replies); may be null.
    std::function<void()> pump;
  };

  RobotClient(const ClientConfig& config, Hooks hooks, RunTrace* trace,
              std::size_t action_dim);

  // Captures and sends the initial observation (timestep 0). Call once,
  // before the first run_tick; the reply must be delivered and absorbed
  // via deliver() + absorb_arrivals().
  void send_initial_observation();

  // Hands a chunk to the client; it is merged at the next tick boundary
  // whose start time is >= stamp_ms (or by absorb_arrivals).
  void deliver(ActionChunk chunk, TimeMs stamp_ms);

  // Merges every delivered chunk stamped at or before the current tick's
  // start. run_tick does this itself; exposed for init handling.
  void absorb_arrivals();

  // Runs one control tick and advances the tick counter.
  void run_tick();

  Tick tick() const { return tick_; }
  std::int64_t idle_ticks() const { return idle_ticks_; }
  bool pending() const { return pending_.has_value(); }
  std::size_t queue_size() const { return queue_.size(); }
  const ClientConfig& config() const { return config_; }

 private:
  void merge_due(Tick tick);
  // At most one capture decision per tick. queue_empty reflects the
  // post-pop queue and forces processing through the filter.
  void maybe_send(Tick tick, bool queue_empty);

  ClientConfig config_;
  Hooks hooks_;
  RunTrace* trace_;
  std::size_t action_dim_;

  ActionQueue queue_;
  SimilarityFilter filter_;
  std::optional<Tick> pending_;  // tick of the in-flight observation
  std::deque<std::pair<TimeMs, ActionChunk>> inbox_;
  std::uint64_t last_chunk_id_ = 0;
  bool saw_chunk_ = false;
  Tick tick_ = 0;
  std::int64_t idle_ticks_ = 0;
  bool sent_this_tick_ = false;
};

}  // namespace ainfer
