#pragma once

#include <span>
#include <string>
#include <vector>

#include "langsel/ensemble.hpp"
#include "langsel/metrics.hpp"

namespace langsel {

/// Candidate mixture weights and thresholds. Both lists strictly ascending in [0, 1].
struct SearchGrid {
  std::vector<double> alpha_values;
  std::vector<double> tau_values;

  /// alpha 0.00..1.00 and tau 0.30..0.70, both in steps of 0.05.
  static SearchGrid defaults();
  void validate() const;
};

std::vector<double> default_alpha_grid();
std::vector<double> default_tau_grid();

/// Throws GridError if `values` is empty, not strictly ascending or leaves [0, 1].
void validate_grid_axis(std::span<const double> values, const std::string& name);

struct SurfaceCell {
  /// Weight of the first member (the specialist for pairs); 1 for single runs.
  double alpha = 1.0;
  double tau = 0.5;
  double f1_macro = 0.0;

  friend bool operator==(const SurfaceCell&, const SurfaceCell&) = default;
};

struct SearchResult {
  EnsembleConfig best_config;
  MetricReport best_dev_report;
  /// Row-major in (alpha, tau) grid order, independent of evaluation order.
  std::vector<SurfaceCell> full_surface;
};

/// True if `a` beats `b`: higher macro F1, then smaller |tau - 0.5|, then smaller
/// |alpha - 0.5|, then smaller tau, then smaller alpha.
bool preferred(const SurfaceCell& a, const SurfaceCell& b);

/// `threads` > 1 evaluates cells concurrently; the result is identical either way.
SearchResult tune_threshold(const GoldLabels& gold, const PredictionRun& run,
                            std::span<const double> taus, unsigned threads = 1);

/// Exhaustive alpha x tau search over P = alpha * spec + (1 - alpha) * gen.
SearchResult tune_pair(const GoldLabels& gold, const PredictionRun& spec, const PredictionRun& gen,
                       const SearchGrid& grid, unsigned threads = 1);

/// k-member search over explicit weight vectors (the uniform mean is always tried)
/// crossed with the tau grid. The first weight plays the role of alpha in tie-breaks.
SearchResult tune_weights(const GoldLabels& gold, std::span<const PredictionRun> members,
                          std::vector<std::vector<double>> weight_sets,
                          std::span<const double> taus, unsigned threads = 1);

/// `alpha,tau,macro_f1` with 6 decimals, one row per cell.
std::string surface_csv(const SearchResult& result);

}  // namespace langsel
