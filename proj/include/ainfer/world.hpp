#pragma once

#include <cstdint>
#include <vector>

#include "ainfer/types.hpp"

namespace ainfer {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

double dist(const Vec2& a, const Vec2& b);

// Desk-scale pick-and-place stand-in: a point agent grabs a cube and
// carries it to a box. Observations expose the full state as a joint
// vector so the similarity filter sees "nothing moved" directly.
enum class Phase : std::uint8_t { ToCube = 0, Grasped = 1, Done = 2 };

struct DisturbanceSpec {
  Tick tick = 0;
  Vec2 new_cube;
};

struct WorldParams {
  double vmax = 0.05;          // max agent displacement per tick
  double grasp_radius = 0.06;  // ToCube -> Grasped distance
  double place_radius = 0.06;  // Grasped -> Done distance
  Vec2 agent{0.0, 0.0};
  Vec2 cube{1.0, 0.0};
  Vec2 box{0.5, 0.8};
  bool cycle = false;  // respawn the cube after each completed episode
  std::vector<DisturbanceSpec> disturbances;

  void validate() const;  // throws std::invalid_argument
};

// Joint layout shared with the scripted policy: dim 7.
inline constexpr std::size_t kPointMassJointDim = 7;
inline constexpr std::size_t kPointMassActionDim = 2;

struct StepResult {
  bool episode_done = false;   // phase reached Done on this step
  std::uint32_t episode = 0;   // index of the episode that finished
};

class PointMassWorld {
 public:
  PointMassWorld(const WorldParams& params, std::uint64_t seed);

  // Applies any disturbance scheduled for this tick. Returns the
  // disturbances applied (usually none).
  std::vector<DisturbanceSpec> apply_disturbances(Tick tick);

  // Moves the agent toward the action's target xy, clamped to vmax, then
  // runs phase transitions. In cycle mode a finished episode respawns the
  // cube at the next ring position.
  StepResult step(const Action& target);

  // State as joints: [agent_x, agent_y, cube_x, cube_y, box_x, box_y, phase].
  JointState observe() const;

  Phase phase() const { return phase_; }
  Vec2 agent() const { return agent_; }
  Vec2 cube() const { return cube_; }
  Vec2 box() const { return box_; }
  std::uint32_t episodes_completed() const { return episodes_completed_; }

 private:
  void respawn_cube();

  WorldParams params_;
  Vec2 agent_, cube_, box_;
  Phase phase_ = Phase::ToCube;
  std::uint32_t episodes_completed_ = 0;
  std::vector<Vec2> ring_;      // cycle-mode respawn positions
  std::size_t ring_next_ = 0;
};

// Decodes the shared joint layout (throws DimMismatchError on wrong dim).
struct PointMassView {
  Vec2 agent, cube, box;
  Phase phase;
};
PointMassView decode_pointmass_joints(const JointState& joints);

}  // namespace ainfer
