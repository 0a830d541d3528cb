#include "ainfer/similarity_filter.hpp"

#include <cmath>

namespace ainfer {

double joint_distance(const JointState& a, const JointState& b, SimilarityMetric metric) {
  if (a.dim() != b.dim())
    throw DimMismatchError("joint dimension mismatch in similarity filter");
  if (metric == SimilarityMetric::L2) {
    double sq = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      const double d = a.values[i] - b.values[i];
      sq += d * d;
    }
    return std::sqrt(sq);
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
  return worst;
}

std::optional<double> SimilarityFilter::distance_to_last(const Observation& obs) const {
  if (!last_processed_) return std::nullopt;
  return joint_distance(*last_processed_, obs.joints, metric_);
}

bool SimilarityFilter::needs_processing(const Observation& obs, bool queue_empty) const {
  if (queue_empty) return true;  // an empty queue is processed regardless of similarity
  if (!last_processed_) return true;
  return joint_distance(*last_processed_, obs.joints, metric_) >= epsilon_;
}

}  // namespace ainfer
