#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ainfer {

class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thin RAII wrappers over POSIX stream sockets carrying framed messages.
class TcpStream {
 public:
  TcpStream() = default;
  explicit TcpStream(int fd) : fd_(fd) {}
  TcpStream(TcpStream&& other) noexcept;
  TcpStream& operator=(TcpStream&& other) noexcept;
  TcpStream(const TcpStream&) = delete;
  TcpStream& operator=(const TcpStream&) = delete;
  ~TcpStream();

  static TcpStream connect(const std::string& host, std::uint16_t port);

  // Whole frame (header + payload) in, whole frame out.
  void send_frame(std::span<const std::uint8_t> frame);
  // nullopt on clean EOF at a frame boundary; throws otherwise.
  std::optional<std::vector<std::uint8_t>> read_frame();

  // Half/full shutdown without releasing the fd; unblocks a reader.
  void shutdown();
  void close();
  bool valid() const { return fd_ >= 0; }

 private:
  void write_all(const std::uint8_t* data, std::size_t len);
  bool read_exact(std::uint8_t* data, std::size_t len, bool eof_ok);
  int fd_ = -1;
};

class TcpListener {
 public:
  TcpListener() = default;
  TcpListener(TcpListener&& other) noexcept;
  TcpListener& operator=(TcpListener&& other) noexcept;
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;
  ~TcpListener();

  // Port 0 binds an ephemeral port; port() reports the real one.
  static TcpListener bind(const std::string& host, std::uint16_t port);

  TcpStream accept();
  std::uint16_t port() const { return port_; }

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

}  // namespace ainfer
