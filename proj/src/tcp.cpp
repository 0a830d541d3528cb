#include "ainfer/tcp.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "ainfer/wire.hpp"

namespace ainfer {
namespace {

[[noreturn]] void fail(const std::string& what) {
  throw TransportError(what + ": " + std::strerror(errno));
}

sockaddr_in resolve(const std::string& host, std::uint16_t port) {
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (host.empty() || host == "0.0.0.0") {
    addr.sin_addr.s_addr = INADDR_ANY;
    return addr;
  }
  if (inet_pton(AF_INET, host.c_str(), &addr.sin_addr) == 1) return addr;
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  if (getaddrinfo(host.c_str(), nullptr, &hints, &res) != 0 || res == nullptr)
    throw TransportError("cannot resolve host " + host);
  addr.sin_addr = reinterpret_cast<sockaddr_in*>(res->ai_addr)->sin_addr;
  freeaddrinfo(res);
  return addr;
}

}  // namespace

TcpStream::TcpStream(TcpStream&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }

TcpStream& TcpStream::operator=(TcpStream&& other) noexcept {
  if (this != &other) {
    close();
    fd_ = other.fd_;
    other.fd_ = -1;
  }
  return *this;
}

TcpStream::~TcpStream() { close(); }

void TcpStream::shutdown() {
  if (fd_ >= 0) ::shutdown(fd_, SHUT_RDWR);
}

void TcpStream::close() {
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
}

TcpStream TcpStream::connect(const std::string& host, std::uint16_t port) {
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) fail("socket");
  sockaddr_in addr = resolve(host, port);
  if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    const int saved = errno;
    ::close(fd);
    errno = saved;
    fail("connect");
  }
  const int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  return TcpStream(fd);
}

void TcpStream::write_all(const std::uint8_t* data, std::size_t len) {
  std::size_t off = 0;
  while (off < len) {
    const ssize_t n = ::send(fd_, data + off, len - off, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      fail("send");
    }
    off += static_cast<std::size_t>(n);
  }
}

bool TcpStream::read_exact(std::uint8_t* data, std::size_t len, bool eof_ok) {
  std::size_t off = 0;
  while (off < len) {
    const ssize_t n = ::recv(fd_, data + off, len - off, 0);
    if (n < 0) {
      if (errno == EINTR) continue;
      fail("recv");
    }
    if (n == 0) {
      if (off == 0 && eof_ok) return false;
      throw TransportError("connection closed mid-frame");
    }
    off += static_cast<std::size_t>(n);
  }
  return true;
}

void TcpStream::send_frame(std::span<const std::uint8_t> frame) {
  write_all(frame.data(), frame.size());
}

std::optional<std::vector<std::uint8_t>> TcpStream::read_frame() {
  std::uint8_t header[kFrameHeaderBytes];
  if (!read_exact(header, sizeof(header), /*eof_ok=*/true)) return std::nullopt;
  const std::uint32_t payload = peek_payload_length({header, sizeof(header)});
  std::vector<std::uint8_t> frame(kFrameHeaderBytes + payload);
  std::memcpy(frame.data(), header, sizeof(header));
  read_exact(frame.data() + kFrameHeaderBytes, payload, /*eof_ok=*/false);
  return frame;
}

TcpListener::TcpListener(TcpListener&& other) noexcept
    : fd_(other.fd_), port_(other.port_) {
  other.fd_ = -1;
}

TcpListener& TcpListener::operator=(TcpListener&& other) noexcept {
  if (this != &other) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = other.fd_;
    port_ = other.port_;
    other.fd_ = -1;
  }
  return *this;
}

TcpListener::~TcpListener() {
  if (fd_ >= 0) ::close(fd_);
}

TcpListener TcpListener::bind(const std::string& host, std::uint16_t port) {
  TcpListener listener;
  listener.fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listener.fd_ < 0) fail("socket");
  const int one = 1;
  ::setsockopt(listener.fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr = resolve(host, port);
  if (::bind(listener.fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0)
    fail("bind");
  if (::listen(listener.fd_, 1) != 0) fail("listen");
  sockaddr_in bound{};
  socklen_t len = sizeof(bound);
  if (::getsockname(listener.fd_, reinterpret_cast<sockaddr*>(&bound), &len) != 0)
    fail("getsockname");
  listener.port_ = ntohs(bound.sin_port);
  return listener;
}

TcpStream TcpListener::accept() {
  const int fd = ::accept(fd_, nullptr, nullptr);
  if (fd < 0) fail("accept");
  const int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  return TcpStream(fd);
}

}  // namespace ainfer
