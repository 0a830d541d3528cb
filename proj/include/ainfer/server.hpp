#pragma once

#include <cstdint>
#include <memory>

#include "ainfer/latency.hpp"
#include "ainfer/policy.hpp"
#include "ainfer/types.hpp"

namespace ainfer {

// The policy-hosting side, transport-agnostic: sample an inference
// latency, run the policy, hand back a chunk with a session-monotonic id.
// Latency is applied by delaying delivery (the simulator schedules it on
// the virtual clock; the socket server sleeps), never by busy-waiting.
class PolicyServerCore {
 public:
  PolicyServerCore(std::unique_ptr<Policy> policy, const LatencySpec& inference_latency,
                   std::uint64_t seed)
      : policy_(std::move(policy)), latency_(inference_latency, seed) {}

  TimeMs sample_inference_latency() { return latency_.sample(); }

  // Runs the policy; the returned chunk starts at obs.timestep and gets
  // the next chunk_id (0, 1, 2, ...).
  ActionChunk predict(const Observation& obs) {
    ActionChunk chunk = policy_->predict(obs);
    chunk.chunk_id = next_chunk_id_++;
    return chunk;
  }

  std::size_t action_dim() const { return policy_->action_dim(); }
  std::size_t joint_dim() const { return policy_->joint_dim(); }
  std::uint64_t chunks_served() const { return next_chunk_id_; }

 private:
  std::unique_ptr<Policy> policy_;
  LatencySampler latency_;
  std::uint64_t next_chunk_id_ = 0;
};

}  // namespace ainfer
