#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>

#include "ainfer/types.hpp"
#include "ainfer/world.hpp"

namespace ainfer {

// A policy maps one observation to a chunk of n actions whose first
// implied timestep is the observation's timestep. chunk_id is assigned
// by the server, not here.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual ActionChunk predict(const Observation& obs) = 0;
  virtual std::size_t action_dim() const = 0;
  virtual std::size_t joint_dim() const = 0;
};

// Straight-line waypoints toward the current phase's goal at vmax per
// tick, holding once there. Stands in for a learned policy so the control
// loop can be exercised end to end.
class ScriptedPointmassPolicy : public Policy {
 public:
  ScriptedPointmassPolicy(int n, double vmax) : n_(n), vmax_(vmax) {}

  ActionChunk predict(const Observation& obs) override;
  std::size_t action_dim() const override { return kPointMassActionDim; }
  std::size_t joint_dim() const override { return kPointMassJointDim; }

 private:
  int n_;
  double vmax_;
};

// Scripted policy plus seeded Gaussian target noise.
class NoisePolicy : public Policy {
 public:
  NoisePolicy(int n, double vmax, double sigma, std::uint64_t seed)
      : inner_(n, vmax), sigma_(sigma), rng_(seed) {}

  ActionChunk predict(const Observation& obs) override;
  std::size_t action_dim() const override { return inner_.action_dim(); }
  std::size_t joint_dim() const override { return inner_.joint_dim(); }

 private:
  ScriptedPointmassPolicy inner_;
  double sigma_;
  std::mt19937_64 rng_;
};

// Plays back a recorded action file: the chunk for timestep t is the file
// slice starting at index t, holding the last action past the end.
class ReplayPolicy : public Policy {
 public:
  ReplayPolicy(int n, std::vector<Action> actions, std::size_t joint_dim);
  static ReplayPolicy from_file(int n, const std::string& path, std::size_t joint_dim);

  ActionChunk predict(const Observation& obs) override;
  std::size_t action_dim() const override { return dim_; }
  std::size_t joint_dim() const override { return joint_dim_; }

 private:
  int n_;
  std::vector<Action> actions_;
  std::size_t dim_;
  std::size_t joint_dim_;
};

// Action-file helpers for ReplayPolicy (layout: magic "AACT", u32 dim,
// u32 count, f64 values row-major, little-endian).
void write_action_file(const std::string& path, const std::vector<Action>& actions);
std::vector<Action> read_action_file(const std::string& path);

}  // namespace ainfer
