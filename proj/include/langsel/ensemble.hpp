#pragma once

#include <span>
#include <string>
#include <vector>

#include "langsel/metrics.hpp"

namespace langsel {

struct EnsembleMember {
  std::string model_id;
  double weight = 0.0;

  friend bool operator==(const EnsembleMember&, const EnsembleMember&) = default;
};

/// Members with convex weights plus the decision threshold applied to the mixture.
struct EnsembleConfig {
  std::vector<EnsembleMember> members;
  double tau = 0.5;

  /// Throws WeightError unless there is at least one member, every weight is
  /// non-negative and finite, and the weights sum to 1 within 1e-9.
  void validate() const;

  friend bool operator==(const EnsembleConfig&, const EnsembleConfig&) = default;
};

/// Synthetic id for a mixture, e.g. "A(0.65)+B(0.35)".
std::string mixture_id(std::span<const PredictionRun> members, std::span<const double> weights);

/// Per-sample weighted sum of member probabilities, accumulated in member order.
/// Weights are used as given; a bad sum is rejected, never renormalized.
PredictionRun soft_vote(std::span<const PredictionRun> members, std::span<const double> weights);

/// soft_vote with weights 1/k.
PredictionRun uniform_vote(std::span<const PredictionRun> members);

}  // namespace langsel
