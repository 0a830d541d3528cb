#pragma once

#include <cstdint>

#include "ainfer/scenario.hpp"
#include "ainfer/trace.hpp"

namespace ainfer {

// Runs client, policy server and world on one virtual clock for
// scenario.client.horizon ticks and returns the full event trace.
// Identical (scenario, seed) give byte-identical traces.
//
// The observation path carries encoded wire frames even in-process, so
// every simulation exercises the same codec as a socket deployment. The
// initial observation/chunk exchange completes at virtual time 0.
RunTrace simulate(const ScenarioConfig& scenario);

// Fixed-virtual-time throughput: runs the scenario (cycle mode) for
// wall_budget_ms of virtual time and counts completed pick-place cycles.
std::int64_t throughput_experiment(const ScenarioConfig& scenario, TimeMs wall_budget_ms);

// Stable per-purpose RNG streams derived from one scenario seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace ainfer
