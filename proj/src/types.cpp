#include "ainfer/types.hpp"

#include <stdexcept>

namespace ainfer {

void ClientConfig::validate() const {
  if (n < 1) throw std::invalid_argument("client.n must be >= 1");
  if (g < 0.0 || g > 1.0 || !std::isfinite(g))
    throw std::invalid_argument("client.g must be in [0,1]");
  if (epsilon < 0.0 || !std::isfinite(epsilon))
    throw std::invalid_argument("client.epsilon must be >= 0");
  if (delta_t_ms <= 0) throw std::invalid_argument("client.dt_ms must be > 0");
  if (horizon < 0) throw std::invalid_argument("horizon must be >= 0");
  if (aggregation.mode == AggregationMode::ExpBlend &&
      (aggregation.alpha <= 0.0 || aggregation.alpha >= 1.0))
    throw std::invalid_argument("blend alpha must be in (0,1)");
}

const char* to_string(ChunkValidity v) {
  switch (v) {
    case ChunkValidity::Ok: return "Ok";
    case ChunkValidity::DimMismatch: return "DimMismatch";
    case ChunkValidity::EmptyChunk: return "EmptyChunk";
    case ChunkValidity::NonFiniteValue: return "NonFiniteValue";
  }
  return "?";
}

ChunkValidity validate_chunk(const ActionChunk& chunk, std::size_t expected_dim) {
  if (chunk.actions.empty()) return ChunkValidity::EmptyChunk;
  for (const Action& a : chunk.actions) {
    if (a.dim() != expected_dim) return ChunkValidity::DimMismatch;
    for (double v : a.values) {
      if (!std::isfinite(v)) return ChunkValidity::NonFiniteValue;
    }
  }
  return ChunkValidity::Ok;
}

}  // namespace ainfer
