#include "ainfer/wire.hpp"

#include <bit>
#include <cstring>

namespace ainfer {
namespace {

class ByteWriter {
 public:
  void u8(std::uint8_t v) { buf_.push_back(v); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void bytes(const std::vector<std::uint8_t>& b) {
    buf_.insert(buf_.end(), b.begin(), b.end());
  }
  std::vector<std::uint8_t> take() { return std::move(buf_); }

 private:
  std::vector<std::uint8_t> buf_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint8_t u8() { return take(1)[0]; }
  std::uint32_t u32() {
    auto b = take(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    auto b = take(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  std::vector<std::uint8_t> blob(std::size_t len) {
    auto b = take(len);
    return {b.begin(), b.end()};
  }
  std::size_t remaining() const { return data_.size() - pos_; }

 private:
  std::span<const std::uint8_t> take(std::size_t len) {
    if (pos_ + len > data_.size())
      throw ProtocolError(ProtocolErrorKind::Truncated, "payload shorter than promised");
    auto s = data_.subspan(pos_, len);
    pos_ += len;
    return s;
  }
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

std::vector<std::uint8_t> frame(MsgType type, std::vector<std::uint8_t> payload) {
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(payload.size()));
  w.u8(static_cast<std::uint8_t>(type));
  w.bytes(payload);
  return w.take();
}

Observation decode_observation(ByteReader& r) {
  Observation obs;
  obs.timestep = static_cast<Tick>(r.u64());
  const std::uint32_t joint_count = r.u32();
  obs.joints.values.reserve(joint_count);
  for (std::uint32_t i = 0; i < joint_count; ++i) obs.joints.values.push_back(r.f64());
  obs.capture_time_ms = static_cast<TimeMs>(r.u64());
  const std::uint32_t aux_len = r.u32();
  obs.aux = r.blob(aux_len);
  return obs;
}

ActionChunk decode_chunk(ByteReader& r) {
  ActionChunk chunk;
  chunk.start_timestep = static_cast<Tick>(r.u64());
  chunk.chunk_id = r.u64();
  const std::uint32_t len = r.u32();
  const std::uint32_t dim = r.u32();
  if (len == 0)
    throw ProtocolError(ProtocolErrorKind::BadValue, "chunk with zero actions");
  chunk.actions.resize(len);
  for (std::uint32_t k = 0; k < len; ++k) {
    chunk.actions[k].values.reserve(dim);
    for (std::uint32_t i = 0; i < dim; ++i) chunk.actions[k].values.push_back(r.f64());
  }
  return chunk;
}

Hello decode_hello(ByteReader& r) {
  Hello h;
  h.protocol_version = r.u32();
  h.action_dim = r.u32();
  h.joint_dim = r.u32();
  return h;
}

}  // namespace

std::vector<std::uint8_t> encode_observation(const Observation& obs) {
  ByteWriter w;
  w.u64(static_cast<std::uint64_t>(obs.timestep));
  w.u32(static_cast<std::uint32_t>(obs.joints.values.size()));
  for (double v : obs.joints.values) w.f64(v);
  w.u64(static_cast<std::uint64_t>(obs.capture_time_ms));
  w.u32(static_cast<std::uint32_t>(obs.aux.size()));
  w.bytes(obs.aux);
  return frame(MsgType::Observation, w.take());
}

std::vector<std::uint8_t> encode_chunk(const ActionChunk& chunk) {
  ByteWriter w;
  w.u64(static_cast<std::uint64_t>(chunk.start_timestep));
  w.u64(chunk.chunk_id);
  w.u32(static_cast<std::uint32_t>(chunk.actions.size()));
  const std::uint32_t dim =
      chunk.actions.empty() ? 0 : static_cast<std::uint32_t>(chunk.actions[0].dim());
  w.u32(dim);
  for (const Action& a : chunk.actions)
    for (double v : a.values) w.f64(v);
  return frame(MsgType::ActionChunk, w.take());
}

std::vector<std::uint8_t> encode_hello(const Hello& hello) {
  ByteWriter w;
  w.u32(hello.protocol_version);
  w.u32(hello.action_dim);
  w.u32(hello.joint_dim);
  return frame(MsgType::Hello, w.take());
}

std::vector<std::uint8_t> encode_bye() { return frame(MsgType::Bye, {}); }

std::uint32_t peek_payload_length(std::span<const std::uint8_t> header) {
  if (header.size() < 4)
    throw ProtocolError(ProtocolErrorKind::Truncated, "frame header shorter than 4 bytes");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(header[i]) << (8 * i);
  return v;
}

Message decode_frame(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kFrameHeaderBytes)
    throw ProtocolError(ProtocolErrorKind::Truncated, "frame shorter than header");
  const std::uint32_t length = peek_payload_length(bytes);
  const std::uint8_t type = bytes[4];
  if (bytes.size() < kFrameHeaderBytes + length)
    throw ProtocolError(ProtocolErrorKind::Truncated, "frame shorter than length field promises");
  if (bytes.size() > kFrameHeaderBytes + length)
    throw ProtocolError(ProtocolErrorKind::TrailingBytes, "bytes after frame end");

  ByteReader r(bytes.subspan(kFrameHeaderBytes, length));
  Message msg = [&]() -> Message {
    switch (static_cast<MsgType>(type)) {
      case MsgType::Observation: return decode_observation(r);
      case MsgType::ActionChunk: return decode_chunk(r);
      case MsgType::Hello: return decode_hello(r);
      case MsgType::Bye: return Bye{};
      default:
        throw ProtocolError(ProtocolErrorKind::UnknownType,
                            "unknown msg_type " + std::to_string(type));
    }
  }();
  if (r.remaining() != 0)
    throw ProtocolError(ProtocolErrorKind::TrailingBytes, "payload longer than message");
  return msg;
}

}  // namespace ainfer
