#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "ainfer/types.hpp"

namespace ainfer {

// Stochastic latency description. Spec grammar (milliseconds):
//   const:<ms>
//   uniform:<lo>:<hi>
//   lognormal:<mu>:<sigma>:<clamp_lo>:<clamp_hi>
enum class LatencyKind { Constant, Uniform, LogNormal };

struct LatencySpec {
  LatencyKind kind = LatencyKind::Constant;
  double a = 0.0;         // const: ms; uniform: lo; lognormal: mu
  double b = 0.0;         // uniform: hi; lognormal: sigma
  double clamp_lo = 0.0;  // lognormal only
  double clamp_hi = 0.0;

  bool deterministic() const { return kind == LatencyKind::Constant; }
  double mean_ms() const;

  static LatencySpec constant(double ms) { return {LatencyKind::Constant, ms, 0, 0, 0}; }
  static LatencySpec uniform(double lo, double hi) {
    return {LatencyKind::Uniform, lo, hi, 0, 0};
  }
  static LatencySpec lognormal(double mu, double sigma, double lo, double hi) {
    return {LatencyKind::LogNormal, mu, sigma, lo, hi};
  }

  std::string to_string() const;
};

// Throws std::invalid_argument on malformed specs or negative bounds.
LatencySpec parse_latency_spec(const std::string& text);

// Draws non-negative integer-millisecond samples. Sampling is hand-rolled
// on top of mt19937_64 so identical seeds give identical sequences
// everywhere, independent of the standard library's distributions.
class LatencySampler {
 public:
  LatencySampler() : LatencySampler(LatencySpec::constant(0), 0) {}
  LatencySampler(const LatencySpec& spec, std::uint64_t seed)
      : spec_(spec), rng_(seed) {}

  TimeMs sample();
  const LatencySpec& spec() const { return spec_; }

 private:
  double unit();  // uniform in [0,1)
  LatencySpec spec_;
  std::mt19937_64 rng_;
};

}  // namespace ainfer
