#include "ainfer/simulate.hpp"

#include <memory>
#include <variant>

#include "ainfer/client.hpp"
#include "ainfer/server.hpp"
#include "ainfer/virtual_clock.hpp"
#include "ainfer/wire.hpp"
#include "ainfer/world.hpp"

namespace ainfer {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 over (seed + stream), the usual way to fan one seed out.
  std::uint64_t z = seed + stream * 0x9e3779b97f4a7c15ULL + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

// Routes encoded observation frames through the latency pipeline:
// client --t_C->S--> server --l_S--> --t_S->C--> client inbox.
class SimulatedLink {
 public:
  SimulatedLink(VirtualClock& clock, PolicyServerCore& server, const LatencyConfig& latency,
                std::uint64_t seed)
      : clock_(clock),
        server_(server),
        c2s_(latency.c2s, derive_seed(seed, 2)),
        s2c_(latency.s2c, derive_seed(seed, 3)) {}

  void attach(RobotClient* client) { client_ = client; }

  void send(const Observation& obs) {
    auto frame = encode_observation(obs);
    if (first_) {
      // Init exchange: synchronous, consumes no virtual time.
      first_ = false;
      respond(std::move(frame), clock_.now());
      return;
    }
    const TimeMs recv_at = clock_.now() + c2s_.sample();
    clock_.schedule(recv_at, [this, frame = std::move(frame), recv_at]() mutable {
      const TimeMs ready_at = recv_at + server_.sample_inference_latency();
      const TimeMs arrive_at = ready_at + s2c_.sample();
      respond(std::move(frame), arrive_at);
    });
  }

 private:
  void respond(std::vector<std::uint8_t> obs_frame, TimeMs arrive_at) {
    const Message msg = decode_frame(obs_frame);
    const ActionChunk chunk = server_.predict(std::get<Observation>(msg));
    auto chunk_frame = encode_chunk(chunk);
    clock_.schedule(arrive_at, [this, chunk_frame = std::move(chunk_frame), arrive_at]() {
      const Message m = decode_frame(chunk_frame);
      client_->deliver(std::get<ActionChunk>(m), arrive_at);
    });
  }

  VirtualClock& clock_;
  PolicyServerCore& server_;
  RobotClient* client_ = nullptr;
  LatencySampler c2s_, s2c_;
  bool first_ = true;
};

}  // namespace

RunTrace simulate(const ScenarioConfig& scenario) {
  scenario.validate();
  const ClientConfig& cc = scenario.client;

  VirtualClock clock;
  PointMassWorld world(scenario.world, derive_seed(scenario.seed, 4));
  PolicyServerCore server(
      std::make_unique<ScriptedPointmassPolicy>(cc.n, scenario.world.vmax),
      scenario.latency.server, derive_seed(scenario.seed, 1));
  SimulatedLink link(clock, server, scenario.latency, scenario.seed);

  RunTrace trace;
  RobotClient::Hooks hooks;
  hooks.capture_joints = [&]() { return world.observe(); };
  hooks.send = [&](const Observation& obs) { link.send(obs); };
  hooks.pump = [&]() { clock.advance_to(clock.now()); };
  hooks.execute = [&world, &trace](const Action& a, Tick t) {
    const StepResult r = world.step(a);
    if (r.episode_done) trace.add(TraceEvent::task_done(t, r.episode));
  };

  RobotClient client(cc, hooks, &trace, server.action_dim());
  link.attach(&client);

  client.send_initial_observation();
  client.absorb_arrivals();

  for (Tick t = 0; t < cc.horizon; ++t) {
    clock.advance_to(t * cc.delta_t_ms);
    for (const DisturbanceSpec& d : world.apply_disturbances(t))
      trace.add(TraceEvent::disturbance(t, d.new_cube.x, d.new_cube.y));
    client.run_tick();
  }
  return trace;
}

std::int64_t throughput_experiment(const ScenarioConfig& scenario, TimeMs wall_budget_ms) {
  ScenarioConfig run = scenario;
  run.client.horizon = wall_budget_ms / run.client.delta_t_ms;
  const RunTrace trace = simulate(run);
  std::int64_t done = 0;
  for (const TraceEvent& ev : trace.events)
    if (ev.kind == EventKind::TaskDone) ++done;
  return done;
}

}  // namespace ainfer
