#include "ainfer/trace.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace ainfer {
namespace {

constexpr std::uint32_t kTraceMagic = 0x41545243;  // "CRTA" little-endian -> reads "ATRC"
constexpr std::uint16_t kTraceVersion = 1;

void put_u16(std::vector<std::uint8_t>& b, std::uint16_t v) {
  b.push_back(static_cast<std::uint8_t>(v));
  b.push_back(static_cast<std::uint8_t>(v >> 8));
}
void put_u32(std::vector<std::uint8_t>& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void put_u64(std::vector<std::uint8_t>& b, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) b.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void put_f64(std::vector<std::uint8_t>& b, double v) {
  put_u64(b, std::bit_cast<std::uint64_t>(v));
}

class Cursor {
 public:
  Cursor(const std::vector<std::uint8_t>& data) : data_(data) {}
  std::uint8_t u8() { return data_[need(1)]; }
  std::uint16_t u16() {
    const std::size_t p = need(2);
    return static_cast<std::uint16_t>(data_[p] | (data_[p + 1] << 8));
  }
  std::uint32_t u32() {
    const std::size_t p = need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(data_[p + i]) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    const std::size_t p = need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(data_[p + i]) << (8 * i);
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  bool done() const { return pos_ == data_.size(); }

 private:
  std::size_t need(std::size_t len) {
    if (pos_ + len > data_.size()) throw std::runtime_error("truncated trace");
    const std::size_t p = pos_;
    pos_ += len;
    return p;
  }
  const std::vector<std::uint8_t>& data_;
  std::size_t pos_ = 0;
};

std::vector<std::uint8_t> encode_event(const TraceEvent& ev) {
  std::vector<std::uint8_t> p;
  put_u64(p, static_cast<std::uint64_t>(ev.tick));
  switch (ev.kind) {
    case EventKind::Exec:
      put_u64(p, static_cast<std::uint64_t>(ev.action_ts));
      put_u32(p, ev.queue_size);
      put_u32(p, static_cast<std::uint32_t>(ev.values.size()));
      for (double v : ev.values) put_f64(p, v);
      break;
    case EventKind::Idle:
      break;
    case EventKind::ObsSent:
      put_u64(p, static_cast<std::uint64_t>(ev.obs_ts));
      put_u64(p, static_cast<std::uint64_t>(ev.time_ms));
      put_u32(p, ev.queue_size);
      break;
    case EventKind::ObsSuppressed:
      put_u64(p, static_cast<std::uint64_t>(ev.obs_ts));
      put_f64(p, ev.distance);
      break;
    case EventKind::ChunkArrived:
      put_u64(p, ev.chunk_id);
      put_u64(p, static_cast<std::uint64_t>(ev.chunk_start));
      put_u32(p, ev.chunk_len);
      put_u64(p, static_cast<std::uint64_t>(ev.time_ms));
      break;
    case EventKind::ChunkMerged:
      put_u64(p, ev.chunk_id);
      put_u32(p, ev.dropped_stale);
      put_u32(p, ev.kept);
      put_u32(p, ev.queue_size);
      break;
    case EventKind::TaskDone:
      put_u32(p, ev.episode);
      break;
    case EventKind::Disturbance:
      put_f64(p, ev.values.size() > 0 ? ev.values[0] : 0.0);
      put_f64(p, ev.values.size() > 1 ? ev.values[1] : 0.0);
      break;
  }
  std::vector<std::uint8_t> rec;
  put_u32(rec, static_cast<std::uint32_t>(p.size()));
  rec.push_back(static_cast<std::uint8_t>(ev.kind));
  rec.insert(rec.end(), p.begin(), p.end());
  return rec;
}

}  // namespace

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::Exec: return "Exec";
    case EventKind::Idle: return "Idle";
    case EventKind::ObsSent: return "ObsSent";
    case EventKind::ObsSuppressed: return "ObsSuppressed";
    case EventKind::ChunkArrived: return "ChunkArrived";
    case EventKind::ChunkMerged: return "ChunkMerged";
    case EventKind::TaskDone: return "TaskDone";
    case EventKind::Disturbance: return "Disturbance";
  }
  return "?";
}

TraceEvent TraceEvent::exec(Tick tick, Tick action_ts, std::uint32_t queue_size,
                            std::vector<double> target) {
  TraceEvent ev;
  ev.tick = tick;
  ev.kind = EventKind::Exec;
  ev.action_ts = action_ts;
  ev.queue_size = queue_size;
  ev.values = std::move(target);
  return ev;
}

TraceEvent TraceEvent::idle(Tick tick) {
  TraceEvent ev;
  ev.tick = tick;
  ev.kind = EventKind::Idle;
  return ev;
}

TraceEvent TraceEvent::obs_sent(Tick tick, Tick obs_ts, TimeMs time_ms,
                                std::uint32_t queue_size) {
  TraceEvent ev;
  ev.tick = tick;
  ev.kind = EventKind::ObsSent;
  ev.obs_ts = obs_ts;
  ev.time_ms = time_ms;
  ev.queue_size = queue_size;
  return ev;
}

TraceEvent TraceEvent::obs_suppressed(Tick tick, Tick obs_ts, double distance) {
  TraceEvent ev;
  ev.tick = tick;
  ev.kind = EventKind::ObsSuppressed;
  ev.obs_ts = obs_ts;
  ev.distance = distance;
  return ev;
}

TraceEvent TraceEvent::chunk_arrived(Tick tick, std::uint64_t chunk_id, Tick start,
                                     std::uint32_t len, TimeMs time_ms) {
  TraceEvent ev;
  ev.tick = tick;
  ev.kind = EventKind::ChunkArrived;
  ev.chunk_id = chunk_id;
  ev.chunk_start = start;
  ev.chunk_len = len;
  ev.time_ms = time_ms;
  return ev;
}

TraceEvent TraceEvent::chunk_merged(Tick tick, std::uint64_t chunk_id, std::uint32_t dropped,
                                    std::uint32_t kept, std::uint32_t size_after) {
  TraceEvent ev;
  ev.tick = tick;
  ev.kind = EventKind::ChunkMerged;
  ev.chunk_id = chunk_id;
  ev.dropped_stale = dropped;
  ev.kept = kept;
  ev.queue_size = size_after;
  return ev;
}

TraceEvent TraceEvent::task_done(Tick tick, std::uint32_t episode) {
  TraceEvent ev;
  ev.tick = tick;
  ev.kind = EventKind::TaskDone;
  ev.episode = episode;
  return ev;
}

TraceEvent TraceEvent::disturbance(Tick tick, double x, double y) {
  TraceEvent ev;
  ev.tick = tick;
  ev.kind = EventKind::Disturbance;
  ev.values = {x, y};
  return ev;
}

bool operator==(const TraceEvent& a, const TraceEvent& b) {
  return encode_event(a) == encode_event(b);
}

std::vector<std::uint8_t> encode_trace(const RunTrace& trace) {
  std::vector<std::uint8_t> out;
  put_u32(out, kTraceMagic);
  put_u16(out, kTraceVersion);
  out.push_back(trace.complete ? 1 : 0);
  put_u64(out, trace.events.size());
  for (const TraceEvent& ev : trace.events) {
    auto rec = encode_event(ev);
    out.insert(out.end(), rec.begin(), rec.end());
  }
  return out;
}

RunTrace decode_trace(const std::vector<std::uint8_t>& bytes) {
  Cursor c(bytes);
  if (c.u32() != kTraceMagic) throw std::runtime_error("not a trace file");
  if (c.u16() != kTraceVersion) throw std::runtime_error("unsupported trace version");
  RunTrace trace;
  trace.complete = c.u8() != 0;
  const std::uint64_t count = c.u64();
  trace.events.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint32_t len = c.u32();
    (void)len;
    TraceEvent ev;
    ev.kind = static_cast<EventKind>(c.u8());
    ev.tick = static_cast<Tick>(c.u64());
    switch (ev.kind) {
      case EventKind::Exec: {
        ev.action_ts = static_cast<Tick>(c.u64());
        ev.queue_size = c.u32();
        const std::uint32_t dim = c.u32();
        ev.values.resize(dim);
        for (auto& v : ev.values) v = c.f64();
        break;
      }
      case EventKind::Idle:
        break;
      case EventKind::ObsSent:
        ev.obs_ts = static_cast<Tick>(c.u64());
        ev.time_ms = static_cast<TimeMs>(c.u64());
        ev.queue_size = c.u32();
        break;
      case EventKind::ObsSuppressed:
        ev.obs_ts = static_cast<Tick>(c.u64());
        ev.distance = c.f64();
        break;
      case EventKind::ChunkArrived:
        ev.chunk_id = c.u64();
        ev.chunk_start = static_cast<Tick>(c.u64());
        ev.chunk_len = c.u32();
        ev.time_ms = static_cast<TimeMs>(c.u64());
        break;
      case EventKind::ChunkMerged:
        ev.chunk_id = c.u64();
        ev.dropped_stale = c.u32();
        ev.kept = c.u32();
        ev.queue_size = c.u32();
        break;
      case EventKind::TaskDone:
        ev.episode = c.u32();
        break;
      case EventKind::Disturbance:
        ev.values.resize(2);
        ev.values[0] = c.f64();
        ev.values[1] = c.f64();
        break;
      default:
        throw std::runtime_error("unknown trace event kind");
    }
    trace.events.push_back(std::move(ev));
  }
  if (!c.done()) throw std::runtime_error("trailing bytes in trace");
  return trace;
}

void write_trace_file(const RunTrace& trace, const std::string& path) {
  const auto bytes = encode_trace(trace);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

RunTrace read_trace_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_trace(bytes);
}

}  // namespace ainfer
