#pragma once

#include <optional>
#include <stdexcept>

#include "ainfer/types.hpp"

namespace ainfer {

class DimMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double joint_distance(const JointState& a, const JointState& b, SimilarityMetric metric);

// Near-duplicate suppression in joint space. An observation is processed
// when it moved at least epsilon away from the last processed one, or
// unconditionally when the queue is empty.
class SimilarityFilter {
 public:
  SimilarityFilter(double epsilon, SimilarityMetric metric)
      : epsilon_(epsilon), metric_(metric) {}

  bool needs_processing(const Observation& obs, bool queue_empty) const;

  // Distance to the last processed state; nullopt before the first send.
  std::optional<double> distance_to_last(const Observation& obs) const;

  // Call after the observation was actually sent.
  void mark_processed(const JointState& joints) { last_processed_ = joints; }

  double epsilon() const { return epsilon_; }
  SimilarityMetric metric() const { return metric_; }
  const std::optional<JointState>& last_processed() const { return last_processed_; }

 private:
  std::optional<JointState> last_processed_;
  double epsilon_ = 0.0;
  SimilarityMetric metric_ = SimilarityMetric::L2;
};

}  // namespace ainfer
