#include "ainfer/client.hpp"

#include <gtest/gtest.h>

#include "ainfer/wire.hpp"

namespace ainfer {
namespace {

// Minimal deterministic counterpart of the policy server: constant
// latency in ticks, chunks of n constant-valued actions starting at the
// observation's timestep. The init request answers instantly, like the
// real link. Everything here is independent of the simulation module.
struct TestLink {
  ClientConfig config;
  int latency_ticks = 10;
  double fill_value = 1.0;
  RunTrace trace;
  std::unique_ptr<RobotClient> client;
  std::uint64_t next_id = 0;
  int sends = 0;
  JointState joints{{0.0}};  // what capture sees; tests mutate it
  std::vector<Tick> executed_ts;

  explicit TestLink(const ClientConfig& cfg, int latency) : config(cfg), latency_ticks(latency) {
    RobotClient::Hooks hooks;
    hooks.capture_joints = [this]() { return joints; };
    hooks.execute = [this](const Action&, Tick) {};
    hooks.send = [this](const Observation& obs) { on_send(obs); };
    client = std::make_unique<RobotClient>(cfg, hooks, &trace, 1);
  }

  void on_send(const Observation& obs) {
    ActionChunk chunk;
    chunk.start_timestep = obs.timestep;
    chunk.chunk_id = next_id++;
    for (int k = 0; k < config.n; ++k) chunk.actions.push_back(Action{{fill_value}});
    const bool init = (sends++ == 0);
    const TimeMs stamp =
        init ? 0 : obs.capture_time_ms + latency_ticks * config.delta_t_ms;
    client->deliver(std::move(chunk), stamp);
  }

  void run() {
    client->send_initial_observation();
    client->absorb_arrivals();
    for (Tick t = 0; t < config.horizon; ++t) client->run_tick();
  }

  std::vector<Tick> ticks_of(EventKind kind) const {
    std::vector<Tick> out;
    for (const auto& ev : trace.events)
      if (ev.kind == kind) out.push_back(ev.tick);
    return out;
  }
};

ClientConfig config_with(double g, int n, Tick horizon) {
  ClientConfig cfg;
  cfg.n = n;
  cfg.g = g;
  cfg.delta_t_ms = 33;
  cfg.horizon = horizon;
  return cfg;
}

// ── sequential limit, g = 0 ──────────────────────────────────────────────────

TEST(ClientLoop, SequentialWalk) {
  TestLink link(config_with(0.0, 50, 170), 10);
  link.run();

  // The queue exhausts at tick 50; the observation goes out on that idle
  // tick and its chunk lands 10 ticks later, giving 10 idle ticks a cycle.
  EXPECT_EQ(link.ticks_of(EventKind::ObsSent), (std::vector<Tick>{0, 50, 100, 150}));
  std::vector<Tick> expected_idle;
  for (Tick base : {50, 100, 150})
    for (Tick i = 0; i < 10; ++i) expected_idle.push_back(base + i);
  EXPECT_EQ(link.ticks_of(EventKind::Idle), expected_idle);
  EXPECT_EQ(link.ticks_of(EventKind::ChunkMerged), (std::vector<Tick>{0, 60, 110, 160}));
  EXPECT_EQ(link.client->idle_ticks(), 30);
}

TEST(ClientLoop, SequentialStaleDropOnRefill) {
  TestLink link(config_with(0.0, 50, 70), 10);
  link.run();
  // The refill chunk was predicted for timestep 50 but merged at tick 60.
  bool checked = false;
  for (const auto& ev : link.trace.events) {
    if (ev.kind == EventKind::ChunkMerged && ev.tick == 60) {
      EXPECT_EQ(ev.dropped_stale, 10u);
      EXPECT_EQ(ev.kept, 40u);
      EXPECT_EQ(ev.queue_size, 40u);
      checked = true;
    }
  }
  EXPECT_TRUE(checked);
}

// ── asynchronous regime, g = 0.7 ─────────────────────────────────────────────

TEST(ClientLoop, AsyncThresholdWalk) {
  TestLink link(config_with(0.7, 50, 100), 10);
  link.run();

  // Post-pop size first dips below 35 at tick 15 (34 remain); steady
  // period is n - ceil(g n) = 15 ticks and nothing ever idles.
  EXPECT_EQ(link.ticks_of(EventKind::ObsSent), (std::vector<Tick>{0, 15, 30, 45, 60, 75, 90}));
  EXPECT_EQ(link.ticks_of(EventKind::ChunkMerged), (std::vector<Tick>{0, 25, 40, 55, 70, 85}));
  EXPECT_TRUE(link.ticks_of(EventKind::Idle).empty());
  EXPECT_EQ(link.client->idle_ticks(), 0);

  // Exact envelope: 25 just before each merge, 39 just after.
  for (const auto& ev : link.trace.events) {
    if (ev.kind == EventKind::Exec) {
      if (ev.tick == 24) { EXPECT_EQ(ev.queue_size, 25u); }
      if (ev.tick == 25) { EXPECT_EQ(ev.queue_size, 39u); }
      if (ev.tick == 39) { EXPECT_EQ(ev.queue_size, 25u); }
      if (ev.tick == 40) { EXPECT_EQ(ev.queue_size, 39u); }
    }
    if (ev.kind == EventKind::ChunkMerged && ev.tick == 25) {
      EXPECT_EQ(ev.dropped_stale, 10u);
      EXPECT_EQ(ev.kept, 40u);
      EXPECT_EQ(ev.queue_size, 40u);
    }
  }
}

TEST(ClientLoop, PendingBlocksSecondSend) {
  // Between a send and its merge the threshold stays crossed every tick;
  // exactly one observation goes out per cycle anyway.
  TestLink link(config_with(0.7, 50, 100), 10);
  link.run();
  const auto sent = link.ticks_of(EventKind::ObsSent);
  for (std::size_t i = 1; i < sent.size(); ++i) EXPECT_GE(sent[i] - sent[i - 1], 15);
}

TEST(ClientLoop, SingleOutstandingInvariant) {
  TestLink link(config_with(0.7, 50, 200), 10);
  link.run();
  int in_flight = 0;
  for (const auto& ev : link.trace.events) {
    if (ev.kind == EventKind::ObsSent) ++in_flight;
    if (ev.kind == EventKind::ChunkArrived) --in_flight;
    EXPECT_GE(in_flight, 0);
    EXPECT_LE(in_flight, 1);
  }
}

// ── compute-intensive limit, g = 1 ───────────────────────────────────────────

TEST(ClientLoop, GOneSawTooth) {
  TestLink link(config_with(1.0, 50, 100), 10);
  link.run();
  // A send goes out the moment no request is pending: tick 0, then every
  // merge tick. Merge-to-merge spacing is exactly the latency.
  const auto merged = link.ticks_of(EventKind::ChunkMerged);
  ASSERT_GE(merged.size(), 5u);
  for (std::size_t i = 2; i < merged.size(); ++i) EXPECT_EQ(merged[i] - merged[i - 1], 10);
  EXPECT_TRUE(link.ticks_of(EventKind::Idle).empty());
}

// ── zero latency ─────────────────────────────────────────────────────────────

TEST(ClientLoop, ZeroLatencyNeverIdlesEvenSequentially) {
  TestLink link(config_with(0.0, 20, 100), 0);
  link.run();
  EXPECT_EQ(link.client->idle_ticks(), 0);
  EXPECT_TRUE(link.ticks_of(EventKind::Idle).empty());
  // 100 ticks, all executed.
  EXPECT_EQ(link.ticks_of(EventKind::Exec).size(), 100u);
}

// ── filter interaction ───────────────────────────────────────────────────────

TEST(ClientLoop, StaticWorldSuppressionThenForcedSend) {
  ClientConfig cfg = config_with(0.7, 50, 120);
  cfg.epsilon = 0.01;
  TestLink link(cfg, 10);  // joints never move
  link.run();

  const auto suppressed = link.ticks_of(EventKind::ObsSuppressed);
  const auto sent = link.ticks_of(EventKind::ObsSent);
  ASSERT_FALSE(suppressed.empty());
  // Suppressions start when the threshold first crosses.
  EXPECT_EQ(suppressed.front(), 15);
  // One forced send when the queue empties (the pop at tick 49 drains it),
  // flagged by queue_size == 0 in the event.
  ASSERT_EQ(sent.size(), 3u);  // init, forced at 49, forced at 98
  EXPECT_EQ(sent[1], 49);
  for (const auto& ev : link.trace.events) {
    if (ev.kind == EventKind::ObsSent && ev.tick == 49) {
      EXPECT_EQ(ev.queue_size, 0u);
    }
  }
}

// ── protocol hygiene ─────────────────────────────────────────────────────────

TEST(ClientLoop, RejectsNonMonotoneChunkIds) {
  TestLink link(config_with(0.7, 10, 10), 1);
  link.client->send_initial_observation();
  link.client->absorb_arrivals();
  ActionChunk rogue;
  rogue.start_timestep = 0;
  rogue.chunk_id = 0;  // not greater than the init chunk's id
  rogue.actions.push_back(Action{{1.0}});
  EXPECT_THROW(link.client->deliver(std::move(rogue), 0), ProtocolError);
}

TEST(ClientLoop, RejectsWrongDimChunks) {
  TestLink link(config_with(0.7, 10, 10), 1);
  link.client->send_initial_observation();
  ActionChunk rogue;
  rogue.start_timestep = 0;
  rogue.chunk_id = 99;
  rogue.actions.push_back(Action{{1.0, 2.0}});  // dim 2, client expects 1
  EXPECT_THROW(link.client->deliver(std::move(rogue), 0), ProtocolError);
}

TEST(ClientLoop, DeliveryWithoutRequestIsAProtocolError) {
  TestLink link(config_with(0.7, 10, 10), 1);
  link.client->send_initial_observation();
  link.client->absorb_arrivals();  // pending now clear
  ActionChunk rogue;
  rogue.start_timestep = 0;
  rogue.chunk_id = 50;
  rogue.actions.push_back(Action{{1.0}});
  link.client->deliver(std::move(rogue), 0);
  EXPECT_THROW(link.client->absorb_arrivals(), ProtocolError);
}

// ── determinism and edge cases ───────────────────────────────────────────────

TEST(ClientLoop, HorizonZeroLeavesOnlyInitEvents) {
  TestLink link(config_with(0.7, 50, 0), 10);
  link.run();
  ASSERT_EQ(link.trace.events.size(), 3u);
  EXPECT_EQ(link.trace.events[0].kind, EventKind::ObsSent);
  EXPECT_EQ(link.trace.events[1].kind, EventKind::ChunkArrived);
  EXPECT_EQ(link.trace.events[2].kind, EventKind::ChunkMerged);
}

TEST(ClientLoop, IdenticalRunsGiveIdenticalTraces) {
  TestLink a(config_with(0.7, 50, 300), 10);
  TestLink b(config_with(0.7, 50, 300), 10);
  a.run();
  b.run();
  EXPECT_EQ(encode_trace(a.trace), encode_trace(b.trace));
}

}  // namespace
}  // namespace ainfer
