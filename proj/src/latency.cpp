#include "ainfer/latency.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace ainfer {

double LatencySpec::mean_ms() const {
  switch (kind) {
    case LatencyKind::Constant: return a;
    case LatencyKind::Uniform: return 0.5 * (a + b);
    case LatencyKind::LogNormal: {
      // Mean of the unclamped distribution; clamping makes this an
      // approximation, which is all the analytic laws need.
      return std::exp(a + 0.5 * b * b);
    }
  }
  return 0.0;
}

std::string LatencySpec::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case LatencyKind::Constant: os << "const:" << a; break;
    case LatencyKind::Uniform: os << "uniform:" << a << ":" << b; break;
    case LatencyKind::LogNormal:
      os << "lognormal:" << a << ":" << b << ":" << clamp_lo << ":" << clamp_hi;
      break;
  }
  return os.str();
}

LatencySpec parse_latency_spec(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);

  const auto num = [&](std::size_t i) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(parts[i], &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("latency spec: bad number '" + parts[i] + "'");
    }
    if (used != parts[i].size())
      throw std::invalid_argument("latency spec: bad number '" + parts[i] + "'");
    if (!std::isfinite(v))
      throw std::invalid_argument("latency spec: non-finite value");
    return v;
  };

  if (parts.empty()) throw std::invalid_argument("empty latency spec");
  const std::string& kind = parts[0];
  if (kind == "const") {
    if (parts.size() != 2) throw std::invalid_argument("const latency wants 1 field: const:<ms>");
    const double ms = num(1);
    if (ms < 0) throw std::invalid_argument("latency must be >= 0");
    return LatencySpec::constant(ms);
  }
  if (kind == "uniform") {
    if (parts.size() != 3)
      throw std::invalid_argument("uniform latency wants 2 fields: uniform:<lo>:<hi>");
    const double lo = num(1), hi = num(2);
    if (lo < 0 || hi < lo) throw std::invalid_argument("uniform latency needs 0 <= lo <= hi");
    return LatencySpec::uniform(lo, hi);
  }
  if (kind == "lognormal") {
    if (parts.size() != 5)
      throw std::invalid_argument(
          "lognormal latency wants 4 fields: lognormal:<mu>:<sigma>:<lo>:<hi>");
    const double mu = num(1), sigma = num(2), lo = num(3), hi = num(4);
    if (sigma < 0 || lo < 0 || hi < lo)
      throw std::invalid_argument("lognormal latency needs sigma >= 0 and 0 <= lo <= hi");
    return LatencySpec::lognormal(mu, sigma, lo, hi);
  }
  throw std::invalid_argument("unknown latency kind '" + kind + "'");
}

double LatencySampler::unit() {
  // 53 random mantissa bits -> [0,1).
  return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

TimeMs LatencySampler::sample() {
  double ms = 0.0;
  switch (spec_.kind) {
    case LatencyKind::Constant:
      ms = spec_.a;
      break;
    case LatencyKind::Uniform:
      ms = spec_.a + unit() * (spec_.b - spec_.a);
      break;
    case LatencyKind::LogNormal: {
      // Box-Muller; one draw per sample keeps the stream position simple.
      const double u1 = std::max(unit(), 0x1.0p-60);
      const double u2 = unit();
      const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
      ms = std::exp(spec_.a + spec_.b * z);
      ms = std::min(std::max(ms, spec_.clamp_lo), spec_.clamp_hi);
      break;
    }
  }
  ms = std::max(ms, 0.0);
  return static_cast<TimeMs>(std::llround(ms));
}

}  // namespace ainfer
