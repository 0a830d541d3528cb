#include "ainfer/client.hpp"

#include <string>

#include "ainfer/wire.hpp"

namespace ainfer {

RobotClient::RobotClient(const ClientConfig& config, Hooks hooks, RunTrace* trace,
                         std::size_t action_dim)
    : config_(config),
      hooks_(std::move(hooks)),
      trace_(trace),
      action_dim_(action_dim),
      filter_(config.epsilon, config.metric) {
  config_.validate();
}

void RobotClient::send_initial_observation() {
  Observation obs;
  obs.timestep = 0;
  obs.joints = hooks_.capture_joints();
  obs.capture_time_ms = 0;
  hooks_.send(obs);
  filter_.mark_processed(obs.joints);
  pending_ = 0;
  trace_->add(TraceEvent::obs_sent(0, 0, 0, 0));
}

void RobotClient::deliver(ActionChunk chunk, TimeMs stamp_ms) {
  const ChunkValidity validity = validate_chunk(chunk, action_dim_);
  if (validity != ChunkValidity::Ok)
    throw ProtocolError(ProtocolErrorKind::BadValue,
                        std::string("bad chunk: ") + to_string(validity));
  if (saw_chunk_ && chunk.chunk_id <= last_chunk_id_)
    throw ProtocolError(ProtocolErrorKind::BadValue,
                        "chunk_id not strictly increasing");
  last_chunk_id_ = chunk.chunk_id;
  saw_chunk_ = true;
  inbox_.emplace_back(stamp_ms, std::move(chunk));
}

void RobotClient::absorb_arrivals() { merge_due(tick_); }

void RobotClient::merge_due(Tick tick) {
  const TimeMs tick_start = tick * config_.delta_t_ms;
  while (!inbox_.empty() && inbox_.front().first <= tick_start) {
    auto [stamp, chunk] = std::move(inbox_.front());
    inbox_.pop_front();
    if (!pending_)
      throw ProtocolError(ProtocolErrorKind::BadValue,
                          "chunk delivered with no request in flight");
    trace_->add(TraceEvent::chunk_arrived(tick, chunk.chunk_id, chunk.start_timestep,
                                          static_cast<std::uint32_t>(chunk.size()), stamp));
    const MergeStats stats = queue_.merge_chunk(chunk, tick, config_.aggregation);
    trace_->add(TraceEvent::chunk_merged(tick, chunk.chunk_id, stats.dropped_stale,
                                         stats.overlapped + stats.appended,
                                         stats.size_after));
    pending_.reset();
  }
}

void RobotClient::maybe_send(Tick tick, bool queue_empty) {
  if (sent_this_tick_ || pending_) return;
  sent_this_tick_ = true;

  Observation obs;
  obs.timestep = tick;
  obs.joints = hooks_.capture_joints();
  obs.capture_time_ms = tick * config_.delta_t_ms;

  if (!filter_.needs_processing(obs, queue_empty)) {
    const auto d = filter_.distance_to_last(obs);
    trace_->add(TraceEvent::obs_suppressed(tick, tick, d.value_or(0.0)));
    return;
  }
  hooks_.send(obs);
  filter_.mark_processed(obs.joints);
  pending_ = tick;
  trace_->add(TraceEvent::obs_sent(tick, tick, obs.capture_time_ms,
                                   static_cast<std::uint32_t>(queue_.size())));
}

void RobotClient::run_tick() {
  const Tick t = tick_;
  sent_this_tick_ = false;

  merge_due(t);
  std::optional<TimedAction> popped = queue_.pop_front();

  if (!popped) {
    // Empty queue: process the current observation regardless of
    // similarity, then give zero-latency replies one chance to land
    // before declaring the tick idle.
    maybe_send(t, /*queue_empty=*/true);
    if (hooks_.pump) hooks_.pump();
    merge_due(t);
    popped = queue_.pop_front();
  } else {
    // below_threshold covers the just-emptied queue for every g > 0;
    // at g = 0 nothing triggers early and the next (idle) tick sends.
    if (ActionQueue::below_threshold(queue_.size(), config_.n, config_.g))
      maybe_send(t, /*queue_empty=*/queue_.empty());
  }

  if (popped) {
    trace_->add(TraceEvent::exec(t, popped->timestep,
                                 static_cast<std::uint32_t>(queue_.size()),
                                 popped->action.values));
    hooks_.execute(popped->action, t);
  } else {
    ++idle_ticks_;
    trace_->add(TraceEvent::idle(t));
  }

  ++tick_;
}

}  // namespace ainfer
