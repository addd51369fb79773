#include "langsel/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace langsel {

namespace {

constexpr double kWeightSumTolerance = 1e-9;

void check_weights(std::span<const double> weights) {
  if (weights.empty()) throw WeightError("ensemble needs at least one member");
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw WeightError("weights must be finite and non-negative");
    sum += w;
  }
  if (std::fabs(sum - 1.0) > kWeightSumTolerance)
    throw WeightError("weights sum to " + std::to_string(sum) + ", expected 1");
}

std::string format_weight(double w) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", w);
  return buf;
}

}  // namespace

void EnsembleConfig::validate() const {
  std::vector<double> weights;
  weights.reserve(members.size());
  for (const auto& m : members) weights.push_back(m.weight);
  check_weights(weights);
  if (!std::isfinite(tau) || tau < 0.0 || tau > 1.0) throw RangeError("tau must lie in [0, 1]");
}

std::string mixture_id(std::span<const PredictionRun> members, std::span<const double> weights) {
  std::string id;
  for (std::size_t i = 0; i < members.size() && i < weights.size(); ++i) {
    if (i) id += '+';
    id += members[i].model_id + "(" + format_weight(weights[i]) + ")";
  }
  return id;
}

PredictionRun soft_vote(std::span<const PredictionRun> members, std::span<const double> weights) {
  if (members.size() != weights.size())
    throw WeightError("got " + std::to_string(weights.size()) + " weights for " +
                      std::to_string(members.size()) + " members");
  check_weights(weights);

  const PredictionRun& first = members.front();
  for (const auto& m : members) {
    m.validate();
    if (m.track != first.track || m.split != first.split)
      throw IdMismatch("member '" + m.model_id + "' is from a different track or split");
    if (!m.probs.same_ids(first.probs))
      throw IdMismatch("member '" + m.model_id + "' has a different sample id set than '" +
                       first.model_id + "'");
  }

  PredictionRun out;
  out.track = first.track;
  out.split = first.split;
  out.model_id = mixture_id(members, weights);
  for (const auto& [id, _] : first.probs) {
    double p = 0.0;
    double lo = 1.0;
    double hi = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i) {
      const double q = *members[i].probs.find(id);
      p += weights[i] * q;
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
    // Rounding can push a convex combination a hair outside the member range.
    out.probs.insert(id, std::clamp(p, lo, hi));
  }
  return out;
}

PredictionRun uniform_vote(std::span<const PredictionRun> members) {
  if (members.empty()) throw WeightError("ensemble needs at least one member");
  const std::vector<double> weights(members.size(), 1.0 / static_cast<double>(members.size()));
  return soft_vote(members, weights);
}

}  // namespace langsel
