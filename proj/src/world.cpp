#include "ainfer/world.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "ainfer/similarity_filter.hpp"

namespace ainfer {

double dist(const Vec2& a, const Vec2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

void WorldParams::validate() const {
  if (vmax < 0.0) throw std::invalid_argument("world.vmax must be >= 0");
  if (grasp_radius <= 0.0) throw std::invalid_argument("world.grasp_radius must be > 0");
  if (place_radius <= 0.0) throw std::invalid_argument("world.place_radius must be > 0");
  for (const auto& d : disturbances)
    if (d.tick < 0) throw std::invalid_argument("disturbance tick must be >= 0");
}

PointMassWorld::PointMassWorld(const WorldParams& params, std::uint64_t seed)
    : params_(params), agent_(params.agent), cube_(params.cube), box_(params.box) {
  params_.validate();
  if (params_.cycle) {
    // Respawn ring around the box at the initial cube distance; the seed
    // rotates the starting point and direction so paired runs share the
    // schedule while different seeds see different episode geometry.
    const double radius = std::max(dist(params_.cube, params_.box), 4 * params_.grasp_radius);
    const int count = 8;
    std::mt19937_64 rng(seed);
    const std::size_t offset = static_cast<std::size_t>(rng() % count);
    const bool clockwise = (rng() & 1) != 0;
    for (int i = 0; i < count; ++i) {
      const int step = clockwise ? -i : i;
      const double angle = 2.0 * M_PI * (static_cast<double>(offset) + step) / count;
      ring_.push_back({box_.x + radius * std::cos(angle), box_.y + radius * std::sin(angle)});
    }
  }
}

std::vector<DisturbanceSpec> PointMassWorld::apply_disturbances(Tick tick) {
  std::vector<DisturbanceSpec> applied;
  for (const auto& d : params_.disturbances) {
    if (d.tick == tick) {
      cube_ = d.new_cube;
      applied.push_back(d);
    }
  }
  return applied;
}

StepResult PointMassWorld::step(const Action& target) {
  if (target.dim() != kPointMassActionDim)
    throw DimMismatchError("point-mass action must have dim 2");

  const Vec2 goal{target.values[0], target.values[1]};
  const double d = dist(agent_, goal);
  if (d > params_.vmax && d > 0.0) {
    const double s = params_.vmax / d;
    agent_.x += (goal.x - agent_.x) * s;
    agent_.y += (goal.y - agent_.y) * s;
  } else {
    agent_ = goal;
  }

  StepResult result;
  if (phase_ == Phase::Grasped) cube_ = agent_;  // carried
  if (phase_ == Phase::ToCube && dist(agent_, cube_) <= params_.grasp_radius) {
    phase_ = Phase::Grasped;
    cube_ = agent_;
  }
  if (phase_ == Phase::Grasped && dist(agent_, box_) <= params_.place_radius) {
    phase_ = Phase::Done;
    result.episode_done = true;
    result.episode = episodes_completed_;
    ++episodes_completed_;
    if (params_.cycle) respawn_cube();
  }
  return result;
}

void PointMassWorld::respawn_cube() {
  cube_ = ring_[ring_next_ % ring_.size()];
  ++ring_next_;
  phase_ = Phase::ToCube;
}

JointState PointMassWorld::observe() const {
  return JointState{{agent_.x, agent_.y, cube_.x, cube_.y, box_.x, box_.y,
                     static_cast<double>(phase_)}};
}

PointMassView decode_pointmass_joints(const JointState& joints) {
  if (joints.dim() != kPointMassJointDim)
    throw DimMismatchError("point-mass observation must have dim 7");
  const auto& v = joints.values;
  PointMassView view;
  view.agent = {v[0], v[1]};
  view.cube = {v[2], v[3]};
  view.box = {v[4], v[5]};
  view.phase = static_cast<Phase>(static_cast<int>(v[6]));
  return view;
}

}  // namespace ainfer
