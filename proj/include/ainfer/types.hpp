#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace ainfer {

// Control ticks are the one time axis everything else hangs off of.
// Wall time is derived: time_ms = tick * delta_t_ms.
using Tick = std::int64_t;
using TimeMs = std::int64_t;

// Joint-space state of the robot (or the point-mass stand-in).
struct JointState {
  std::vector<double> values;

  std::size_t dim() const { return values.size(); }
  bool finite() const {
    for (double v : values) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }
};

// What the client sends upstream: a timestep, the joint state, and an
// opaque auxiliary payload standing in for camera frames / instructions.
struct Observation {
  Tick timestep = 0;
  JointState joints;
  std::vector<std::uint8_t> aux;
  TimeMs capture_time_ms = 0;
};

// One low-level command: absolute joint targets.
struct Action {
  std::vector<double> values;

  std::size_t dim() const { return values.size(); }
};

// A server-produced sequence of consecutive actions. The k-th action's
// implied timestep is start_timestep + k.
struct ActionChunk {
  Tick start_timestep = 0;
  std::vector<Action> actions;
  std::uint64_t chunk_id = 0;

  std::size_t size() const { return actions.size(); }
  Tick end_timestep() const {
    return start_timestep + static_cast<Tick>(actions.size()) - 1;
  }
};

enum class AggregationMode { ReplaceOverlap, ExpBlend };

struct AggregationPolicy {
  AggregationMode mode = AggregationMode::ReplaceOverlap;
  double alpha = 0.5;  // ExpBlend only: merged = alpha*old + (1-alpha)*incoming

  static AggregationPolicy replace() { return {AggregationMode::ReplaceOverlap, 0.0}; }
  static AggregationPolicy blend(double alpha) { return {AggregationMode::ExpBlend, alpha}; }
};

enum class SimilarityMetric { L2, Linf };

struct ClientConfig {
  int n = 50;               // chunk size
  double g = 0.7;           // queue threshold fraction in [0,1]
  double epsilon = 0.0;     // joint-space similarity threshold (0 = filter off)
  int delta_t_ms = 33;      // control period
  AggregationPolicy aggregation = AggregationPolicy::replace();
  SimilarityMetric metric = SimilarityMetric::L2;
  Tick horizon = 3000;      // total control ticks

  // Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

enum class ChunkValidity { Ok, DimMismatch, EmptyChunk, NonFiniteValue };

const char* to_string(ChunkValidity v);

// Checks dimensional consistency and finiteness of every action.
ChunkValidity validate_chunk(const ActionChunk& chunk, std::size_t expected_dim);

}  // namespace ainfer
