#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ainfer/server.hpp"
#include "ainfer/tcp.hpp"
#include "ainfer/trace.hpp"
#include "ainfer/types.hpp"
#include "ainfer/world.hpp"

namespace ainfer {

// One client session: HELLO exchange, then observation -> (sleep l_S) ->
// chunk, strictly FIFO with one request in flight, until BYE or EOF.
// Throws ProtocolError/TransportError on malformed traffic (fail-fast,
// no resynchronization).
void serve_session(TcpStream& stream, PolicyServerCore& server);

// Accept loop; handles one session at a time. Stops after the first
// session when once is true.
void serve_forever(TcpListener& listener, PolicyServerCore& server, bool once);

struct TcpClientResult {
  RunTrace trace;
  std::optional<std::string> transport_error;  // set when the run aborted
};

// The deployment-style counterpart of simulate(): the same control loop
// over a live socket, paced by the wall clock at dt per tick, with the
// point-mass world stepped locally. Decision ticks land within about one
// tick of the virtual-clock run for matching configs.
TcpClientResult run_tcp_client(const std::string& host, std::uint16_t port,
                               const ClientConfig& config, const WorldParams& world_params,
                               std::uint64_t seed);

}  // namespace ainfer
