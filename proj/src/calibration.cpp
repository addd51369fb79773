#include "langsel/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <thread>

#include "langsel/numeric.hpp"

namespace langsel {

namespace {

std::vector<double> steps(int first, int last) {
  std::vector<double> out;
  for (int i = first; i <= last; ++i) out.push_back(i / 20.0);
  return out;
}

void require_dev(const PredictionRun& run) {
  if (run.split != Split::Dev)
    throw SplitError("calibration scores on the dev split; run '" + run.model_id + "' is " +
                     to_string(run.split));
}

/// Runs body(i) for i in [0, n), striding across `threads` workers.
void for_each_index(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n ? n : 1)));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < n; i += threads) body(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

struct Mixture {
  std::vector<double> weights;
  PredictionRun run;
};

SearchResult search(const GoldLabels& gold, std::span<const PredictionRun> members,
                    const std::vector<Mixture>& mixtures, std::span<const double> taus,
                    unsigned threads) {
  const std::size_t cells = mixtures.size() * taus.size();
  std::vector<MetricReport> reports(cells);
  std::vector<SurfaceCell> surface(cells);
  for_each_index(cells, threads, [&](std::size_t i) {
    const Mixture& mix = mixtures[i / taus.size()];
    const double tau = taus[i % taus.size()];
    reports[i] = metric_report(gold, binarize(mix.run.probs, tau));
    surface[i] = SurfaceCell{mix.weights.front(), tau, reports[i].f1_macro};
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < cells; ++i)
    if (preferred(surface[i], surface[best])) best = i;

  SearchResult result;
  const Mixture& winner = mixtures[best / taus.size()];
  for (std::size_t m = 0; m < members.size(); ++m)
    result.best_config.members.push_back({members[m].model_id, winner.weights[m]});
  result.best_config.tau = surface[best].tau;
  result.best_dev_report = reports[best];
  result.full_surface = std::move(surface);
  return result;
}

}  // namespace

std::vector<double> default_alpha_grid() { return steps(0, 20); }
std::vector<double> default_tau_grid() { return steps(6, 14); }

SearchGrid SearchGrid::defaults() { return {default_alpha_grid(), default_tau_grid()}; }

void validate_grid_axis(std::span<const double> values, const std::string& name) {
  if (values.empty()) throw GridError(name + " grid is empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || values[i] < 0.0 || values[i] > 1.0)
      throw GridError(name + " grid value outside [0, 1]");
    if (i && !(values[i] > values[i - 1])) throw GridError(name + " grid is not strictly ascending");
  }
}

void SearchGrid::validate() const {
  validate_grid_axis(alpha_values, "alpha");
  validate_grid_axis(tau_values, "tau");
}

bool preferred(const SurfaceCell& a, const SurfaceCell& b) {
  if (a.f1_macro != b.f1_macro) return a.f1_macro > b.f1_macro;
  const double da_tau = snap(std::fabs(a.tau - 0.5));
  const double db_tau = snap(std::fabs(b.tau - 0.5));
  if (da_tau != db_tau) return da_tau < db_tau;
  const double da_alpha = snap(std::fabs(a.alpha - 0.5));
  const double db_alpha = snap(std::fabs(b.alpha - 0.5));
  if (da_alpha != db_alpha) return da_alpha < db_alpha;
  if (a.tau != b.tau) return a.tau < b.tau;
  return a.alpha < b.alpha;
}

SearchResult tune_threshold(const GoldLabels& gold, const PredictionRun& run,
                            std::span<const double> taus, unsigned threads) {
  validate_grid_axis(taus, "tau");
  require_dev(run);
  run.validate();
  std::vector<Mixture> mixtures{{{1.0}, run}};
  return search(gold, std::span(&run, 1), mixtures, taus, threads);
}

SearchResult tune_pair(const GoldLabels& gold, const PredictionRun& spec, const PredictionRun& gen,
                       const SearchGrid& grid, unsigned threads) {
  grid.validate();
  require_dev(spec);
  require_dev(gen);
  const std::vector<PredictionRun> members{spec, gen};
  std::vector<Mixture> mixtures(grid.alpha_values.size());
  for_each_index(mixtures.size(), threads, [&](std::size_t i) {
    const double alpha = grid.alpha_values[i];
    mixtures[i].weights = {alpha, 1.0 - alpha};
    mixtures[i].run = soft_vote(members, mixtures[i].weights);
  });
  return search(gold, members, mixtures, grid.tau_values, threads);
}

SearchResult tune_weights(const GoldLabels& gold, std::span<const PredictionRun> members,
                          std::vector<std::vector<double>> weight_sets,
                          std::span<const double> taus, unsigned threads) {
  if (members.empty()) throw WeightError("ensemble needs at least one member");
  validate_grid_axis(taus, "tau");
  for (const auto& m : members) require_dev(m);
  const std::vector<double> uniform(members.size(), 1.0 / static_cast<double>(members.size()));
  if (std::find(weight_sets.begin(), weight_sets.end(), uniform) == weight_sets.end())
    weight_sets.insert(weight_sets.begin(), uniform);

  std::vector<Mixture> mixtures(weight_sets.size());
  for (std::size_t i = 0; i < weight_sets.size(); ++i) {
    mixtures[i].weights = weight_sets[i];
    mixtures[i].run = soft_vote(members, weight_sets[i]);
  }
  return search(gold, members, mixtures, taus, threads);
}

std::string surface_csv(const SearchResult& result) {
  std::string out = "alpha,tau,macro_f1\n";
  char buf[96];
  for (const auto& cell : result.full_surface) {
    std::snprintf(buf, sizeof buf, "%.6f,%.6f,%.6f\n", cell.alpha, cell.tau, cell.f1_macro);
    out += buf;
  }
  return out;
}

}  // namespace langsel
