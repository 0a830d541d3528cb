#include "ainfer/policy.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace ainfer {

ActionChunk ScriptedPointmassPolicy::predict(const Observation& obs) {
  const PointMassView view = decode_pointmass_joints(obs.joints);
  Vec2 goal;
  switch (view.phase) {
    case Phase::ToCube: goal = view.cube; break;
    case Phase::Grasped: goal = view.box; break;
    case Phase::Done: goal = view.agent; break;  // hold
  }

  ActionChunk chunk;
  chunk.start_timestep = obs.timestep;
  chunk.actions.reserve(static_cast<std::size_t>(n_));
  Vec2 pos = view.agent;
  for (int k = 0; k < n_; ++k) {
    const double d = dist(pos, goal);
    if (d > vmax_ && d > 0.0) {
      const double s = vmax_ / d;
      pos.x += (goal.x - pos.x) * s;
      pos.y += (goal.y - pos.y) * s;
    } else {
      pos = goal;
    }
    chunk.actions.push_back(Action{{pos.x, pos.y}});
  }
  return chunk;
}

ActionChunk NoisePolicy::predict(const Observation& obs) {
  ActionChunk chunk = inner_.predict(obs);
  std::normal_distribution<double> noise(0.0, sigma_);
  for (Action& a : chunk.actions)
    for (double& v : a.values) v += noise(rng_);
  return chunk;
}

ReplayPolicy::ReplayPolicy(int n, std::vector<Action> actions, std::size_t joint_dim)
    : n_(n), actions_(std::move(actions)), joint_dim_(joint_dim) {
  if (actions_.empty()) throw std::invalid_argument("replay policy needs at least one action");
  dim_ = actions_[0].dim();
  for (const Action& a : actions_)
    if (a.dim() != dim_) throw std::invalid_argument("replay actions must share one dim");
}

ReplayPolicy ReplayPolicy::from_file(int n, const std::string& path, std::size_t joint_dim) {
  return ReplayPolicy(n, read_action_file(path), joint_dim);
}

ActionChunk ReplayPolicy::predict(const Observation& obs) {
  ActionChunk chunk;
  chunk.start_timestep = obs.timestep;
  chunk.actions.reserve(static_cast<std::size_t>(n_));
  for (int k = 0; k < n_; ++k) {
    std::size_t idx = static_cast<std::size_t>(obs.timestep) + static_cast<std::size_t>(k);
    if (idx >= actions_.size()) idx = actions_.size() - 1;  // hold last
    chunk.actions.push_back(actions_[idx]);
  }
  return chunk;
}

namespace {
constexpr char kActionMagic[4] = {'A', 'A', 'C', 'T'};

template <typename T>
void put(std::ofstream& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i)
    out.put(static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xff));
}

template <typename T>
T get(std::ifstream& in) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    const int c = in.get();
    if (c < 0) throw std::runtime_error("truncated action file");
    v |= static_cast<std::uint64_t>(c) << (8 * i);
  }
  return static_cast<T>(v);
}
}  // namespace

void write_action_file(const std::string& path, const std::vector<Action>& actions) {
  if (actions.empty()) throw std::invalid_argument("refusing to write empty action file");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(kActionMagic, 4);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(actions[0].dim()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(actions.size()));
  for (const Action& a : actions)
    for (double v : a.values) {
      std::uint64_t bits;
      std::memcpy(&bits, &v, 8);
      put<std::uint64_t>(out, bits);
    }
}

std::vector<Action> read_action_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (in.gcount() != 4 || std::memcmp(magic, kActionMagic, 4) != 0)
    throw std::runtime_error(path + " is not an action file");
  const auto dim = get<std::uint32_t>(in);
  const auto count = get<std::uint32_t>(in);
  if (dim == 0 || count == 0) throw std::runtime_error("empty action file " + path);
  std::vector<Action> actions(count);
  for (auto& a : actions) {
    a.values.resize(dim);
    for (auto& v : a.values) {
      const auto bits = get<std::uint64_t>(in);
      std::memcpy(&v, &bits, 8);
    }
  }
  return actions;
}

}  // namespace ainfer
