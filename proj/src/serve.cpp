#include "ainfer/serve.hpp"

#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>
#include <variant>
#include <vector>

#include "ainfer/client.hpp"
#include "ainfer/simulate.hpp"
#include "ainfer/wire.hpp"

namespace ainfer {
namespace {

using SteadyClock = std::chrono::steady_clock;

Message read_message(TcpStream& stream) {
  auto frame = stream.read_frame();
  if (!frame) throw TransportError("peer closed the connection");
  return decode_frame(*frame);
}

}  // namespace

void serve_session(TcpStream& stream, PolicyServerCore& server) {
  // Handshake: client hello first, then ours; dims must line up.
  const Message first = read_message(stream);
  const Hello* client_hello = std::get_if<Hello>(&first);
  if (client_hello == nullptr)
    throw ProtocolError(ProtocolErrorKind::BadValue, "expected HELLO first");
  if (client_hello->protocol_version != kProtocolVersion)
    throw ProtocolError(ProtocolErrorKind::BadValue, "protocol version mismatch");
  if (client_hello->action_dim != server.action_dim() ||
      client_hello->joint_dim != server.joint_dim())
    throw ProtocolError(ProtocolErrorKind::BadValue, "dimension mismatch in HELLO");
  stream.send_frame(encode_hello(Hello{kProtocolVersion,
                                       static_cast<std::uint32_t>(server.action_dim()),
                                       static_cast<std::uint32_t>(server.joint_dim())}));

  bool first_request = true;
  while (true) {
    auto frame = stream.read_frame();
    if (!frame) return;  // EOF after a clean frame boundary
    const Message msg = decode_frame(*frame);
    if (std::holds_alternative<Bye>(msg)) return;
    const Observation* obs = std::get_if<Observation>(&msg);
    if (obs == nullptr)
      throw ProtocolError(ProtocolErrorKind::BadValue, "expected OBSERVATION or BYE");

    const auto received = SteadyClock::now();
    const TimeMs delay = server.sample_inference_latency();
    const ActionChunk chunk = server.predict(*obs);
    if (first_request) {
      first_request = false;  // init exchange answers immediately
    } else {
      std::this_thread::sleep_until(received + std::chrono::milliseconds(delay));
    }
    stream.send_frame(encode_chunk(chunk));
  }
}

void serve_forever(TcpListener& listener, PolicyServerCore& server, bool once) {
  while (true) {
    TcpStream stream = listener.accept();
    serve_session(stream, server);
    if (once) return;
  }
}

TcpClientResult run_tcp_client(const std::string& host, std::uint16_t port,
                               const ClientConfig& config, const WorldParams& world_params,
                               std::uint64_t seed) {
  TcpClientResult result;
  PointMassWorld world(world_params, derive_seed(seed, 4));
  TcpStream stream = TcpStream::connect(host, port);

  stream.send_frame(encode_hello(Hello{kProtocolVersion, kPointMassActionDim,
                                       kPointMassJointDim}));
  const Message hello_reply = read_message(stream);
  const Hello* server_hello = std::get_if<Hello>(&hello_reply);
  if (server_hello == nullptr || server_hello->protocol_version != kProtocolVersion ||
      server_hello->action_dim != kPointMassActionDim ||
      server_hello->joint_dim != kPointMassJointDim)
    throw ProtocolError(ProtocolErrorKind::BadValue, "HELLO handshake failed");

  // Inbound chunks cross from the receiver thread to the tick loop here;
  // only the loop touches the client itself.
  std::mutex inbox_mutex;
  std::vector<std::pair<TimeMs, ActionChunk>> inbox;
  std::atomic<std::int64_t> observations_sent{0};
  std::atomic<std::int64_t> chunks_received{0};
  SteadyClock::time_point epoch{};  // set after the init exchange

  const auto elapsed_ms = [&]() {
    return static_cast<TimeMs>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                   SteadyClock::now() - epoch)
                                   .count());
  };

  RobotClient::Hooks hooks;
  hooks.capture_joints = [&]() { return world.observe(); };
  hooks.send = [&](const Observation& obs) {
    stream.send_frame(encode_observation(obs));
    ++observations_sent;
  };
  hooks.execute = [&](const Action& a, Tick t) {
    const StepResult r = world.step(a);
    if (r.episode_done) result.trace.add(TraceEvent::task_done(t, r.episode));
  };

  RobotClient client(config, hooks, &result.trace, kPointMassActionDim);
  const auto drain_inbox = [&]() {
    std::vector<std::pair<TimeMs, ActionChunk>> pending;
    {
      std::lock_guard<std::mutex> lock(inbox_mutex);
      pending.swap(inbox);
    }
    for (auto& [stamp, chunk] : pending) client.deliver(std::move(chunk), stamp);
  };

  // Init exchange runs synchronously, before the timeline starts.
  client.send_initial_observation();
  const Message init_reply = read_message(stream);
  const ActionChunk* init_chunk = std::get_if<ActionChunk>(&init_reply);
  if (init_chunk == nullptr)
    throw ProtocolError(ProtocolErrorKind::BadValue, "expected the initial ACTION_CHUNK");
  client.deliver(*init_chunk, 0);
  client.absorb_arrivals();
  ++chunks_received;

  std::thread receiver;
  bool aborted = false;
  try {
    epoch = SteadyClock::now();
    receiver = std::thread([&]() {
      try {
        while (true) {
          auto frame = stream.read_frame();
          if (!frame) return;
          const Message msg = decode_frame(*frame);
          const ActionChunk* chunk = std::get_if<ActionChunk>(&msg);
          if (chunk == nullptr) return;  // session teardown
          {
            std::lock_guard<std::mutex> lock(inbox_mutex);
            inbox.emplace_back(elapsed_ms(), *chunk);
          }
          ++chunks_received;
        }
      } catch (const std::exception&) {
        // Reader failures surface on the main thread as a stalled queue.
      }
    });

    for (Tick t = 0; t < config.horizon; ++t) {
      std::this_thread::sleep_until(epoch + std::chrono::milliseconds(t * config.delta_t_ms));
      drain_inbox();
      client.run_tick();
    }
  } catch (const std::exception& e) {
    aborted = true;
    result.trace.complete = false;
    result.transport_error = e.what();
  }

  if (!aborted) {
    // Let the server finish the last in-flight reply so BYE does not race
    // a write on its side; the reply itself is past the horizon and dropped.
    const auto deadline = SteadyClock::now() + std::chrono::seconds(10);
    while (chunks_received.load() < observations_sent.load() &&
           SteadyClock::now() < deadline)
      std::this_thread::sleep_for(std::chrono::milliseconds(2));
    stream.send_frame(encode_bye());
  }
  stream.shutdown();  // unblocks the receiver
  if (receiver.joinable()) receiver.join();
  stream.close();
  return result;
}

}  // namespace ainfer
