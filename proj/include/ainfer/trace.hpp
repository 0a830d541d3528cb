#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ainfer/types.hpp"

namespace ainfer {

// Ordered event log of a run; every metric and queue-size plot derives
// from it. Serialized with the same length-prefixed little-endian
// discipline as the wire protocol.
enum class EventKind : std::uint8_t {
  Exec = 1,          // one action executed
  Idle = 2,          // empty queue, nothing to execute
  ObsSent = 3,       // observation transmitted for inference
  ObsSuppressed = 4, // similarity filter dropped a near-duplicate
  ChunkArrived = 5,  // chunk delivered by the transport
  ChunkMerged = 6,   // chunk aggregated into the queue
  TaskDone = 7,      // pick-place episode completed
  Disturbance = 8,   // scheduled cube displacement applied
};

const char* to_string(EventKind k);

struct TraceEvent {
  Tick tick = 0;
  EventKind kind = EventKind::Exec;

  // Exec: action_ts, queue_size (after pop), values (target).
  // Idle: no payload.
  // ObsSent: obs_ts, time_ms (send time), queue_size (post-pop size; 0 marks
  //          the forced empty-queue send).
  // ObsSuppressed: obs_ts, distance (to last processed state).
  // ChunkArrived: chunk_id, chunk_start, chunk_len, time_ms (arrival stamp).
  // ChunkMerged: chunk_id, dropped_stale, kept, queue_size (after merge).
  // TaskDone: episode.
  // Disturbance: values = {new_cube_x, new_cube_y}.
  Tick action_ts = 0;
  Tick obs_ts = 0;
  TimeMs time_ms = 0;
  double distance = 0.0;
  std::uint64_t chunk_id = 0;
  Tick chunk_start = 0;
  std::uint32_t chunk_len = 0;
  std::uint32_t dropped_stale = 0;
  std::uint32_t kept = 0;
  std::uint32_t queue_size = 0;
  std::uint32_t episode = 0;
  std::vector<double> values;

  static TraceEvent exec(Tick tick, Tick action_ts, std::uint32_t queue_size,
                         std::vector<double> target);
  static TraceEvent idle(Tick tick);
  static TraceEvent obs_sent(Tick tick, Tick obs_ts, TimeMs time_ms, std::uint32_t queue_size);
  static TraceEvent obs_suppressed(Tick tick, Tick obs_ts, double distance);
  static TraceEvent chunk_arrived(Tick tick, std::uint64_t chunk_id, Tick start,
                                  std::uint32_t len, TimeMs time_ms);
  static TraceEvent chunk_merged(Tick tick, std::uint64_t chunk_id, std::uint32_t dropped,
                                 std::uint32_t kept, std::uint32_t size_after);
  static TraceEvent task_done(Tick tick, std::uint32_t episode);
  static TraceEvent disturbance(Tick tick, double x, double y);
};

bool operator==(const TraceEvent& a, const TraceEvent& b);

struct RunTrace {
  std::vector<TraceEvent> events;
  bool complete = true;  // false when a transport error aborted the run

  void add(TraceEvent ev) { events.push_back(std::move(ev)); }
};

std::vector<std::uint8_t> encode_trace(const RunTrace& trace);
RunTrace decode_trace(const std::vector<std::uint8_t>& bytes);

void write_trace_file(const RunTrace& trace, const std::string& path);
RunTrace read_trace_file(const std::string& path);

}  // namespace ainfer
