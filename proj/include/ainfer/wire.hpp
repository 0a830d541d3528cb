#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ainfer/types.hpp"

namespace ainfer {

// Frame layout, all little-endian:
//   u32 payload_length | u8 msg_type | payload
// A malformed frame terminates the session; no resynchronization.
enum class MsgType : std::uint8_t {
  Observation = 0x01,
  ActionChunk = 0x02,
  Hello = 0x03,
  Bye = 0x04,
};

inline constexpr std::uint32_t kProtocolVersion = 1;
inline constexpr std::size_t kFrameHeaderBytes = 5;

struct Hello {
  std::uint32_t protocol_version = kProtocolVersion;
  std::uint32_t action_dim = 0;
  std::uint32_t joint_dim = 0;
};

struct Bye {};

using Message = std::variant<Observation, ActionChunk, Hello, Bye>;

enum class ProtocolErrorKind { Truncated, UnknownType, TrailingBytes, BadValue };

class ProtocolError : public std::runtime_error {
 public:
  ProtocolError(ProtocolErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind(kind) {}
  ProtocolErrorKind kind;
};

// Encoders produce a complete frame (header + payload).
std::vector<std::uint8_t> encode_observation(const Observation& obs);
std::vector<std::uint8_t> encode_chunk(const ActionChunk& chunk);
std::vector<std::uint8_t> encode_hello(const Hello& hello);
std::vector<std::uint8_t> encode_bye();

// Decodes exactly one frame; the buffer must contain the whole frame and
// nothing else. Throws ProtocolError on any malformation.
Message decode_frame(std::span<const std::uint8_t> bytes);

// Payload length a well-formed frame header promises, for stream readers.
std::uint32_t peek_payload_length(std::span<const std::uint8_t> header);

}  // namespace ainfer
