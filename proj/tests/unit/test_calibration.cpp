#include <cmath>
#include <random>

#include "doctest.h"
#include "langsel/calibration.hpp"
#include "support.hpp"

using namespace langsel;
using namespace langsel::testing;

namespace {

/// Independent cell score: threshold by hand, recount with the oracle.
double oracle_cell(const std::vector<int>& gold, const std::vector<double>& probs, double tau) {
  std::vector<int> pred;
  for (double p : probs) pred.push_back(p >= tau ? 1 : 0);
  return oracle_metrics(gold, pred).macro_f1;
}

}  // namespace

TEST_SUITE("calibration") {
  TEST_CASE("default grids") {
    const auto g = SearchGrid::defaults();
    CHECK(g.alpha_values.size() == 21);
    CHECK(g.tau_values.size() == 9);
    CHECK(g.alpha_values.front() == 0.0);
    CHECK(g.alpha_values.back() == 1.0);
    CHECK(g.tau_values.front() == 0.30);
    CHECK(g.tau_values.back() == 0.70);
    for (double v : {0.35, 0.40, 0.45, 0.50, 0.60, 0.65}) {
      CHECK(std::find(g.alpha_values.begin(), g.alpha_values.end(), v) != g.alpha_values.end());
    }
    for (double v : {0.35, 0.45, 0.50, 0.60})
      CHECK(std::find(g.tau_values.begin(), g.tau_values.end(), v) != g.tau_values.end());
    CHECK_NOTHROW(g.validate());
  }

  TEST_CASE("grid validation") {
    CHECK_THROWS_AS(validate_grid_axis(std::vector<double>{}, "tau"), GridError);
    CHECK_THROWS_AS(validate_grid_axis(std::vector<double>{0.5, 0.4}, "tau"), GridError);
    CHECK_THROWS_AS(validate_grid_axis(std::vector<double>{0.5, 0.5}, "tau"), GridError);
    CHECK_THROWS_AS(validate_grid_axis(std::vector<double>{0.5, 1.1}, "tau"), GridError);
  }

  TEST_CASE("separated probabilities tie everywhere and resolve to tau 0.5") {
    const std::vector<int> g{1, 1, 0, 0, 1};
    const auto run = make_run({0.9, 0.9, 0.1, 0.1, 0.9});
    const auto r = tune_threshold(make_gold(g), run, default_tau_grid());
    for (const auto& cell : r.full_surface) CHECK(cell.f1_macro == 1.0);
    CHECK(r.best_config.tau == 0.5);
  }

  TEST_CASE("hand-enumerated threshold grid") {
    const std::vector<int> g{1, 1, 1, 0};
    const std::vector<double> p{0.9, 0.7, 0.45, 0.4};
    const std::vector<double> taus{0.35, 0.45, 0.50, 0.60};
    const auto r = tune_threshold(make_gold(g), make_run(p), taus);
    REQUIRE(r.full_surface.size() == 4);
    for (const auto& cell : r.full_surface)
      CHECK(cell.f1_macro == doctest::Approx(oracle_cell(g, p, cell.tau)).epsilon(1e-12));
    CHECK(r.best_config.tau == 0.45);
    CHECK(r.best_dev_report.f1_macro == 1.0);
    // Frozen from the oracle: 0.428571 at 0.35, 0.733333 at 0.50 and 0.60.
    CHECK(r.full_surface[0].f1_macro == doctest::Approx(3.0 / 7.0));
    CHECK(r.full_surface[2].f1_macro == doctest::Approx(11.0 / 15.0));
  }

  TEST_CASE("single-tau grid returns that tau") {
    const auto r = tune_threshold(make_gold({1, 0}), make_run({0.1, 0.9}), std::vector<double>{0.65});
    CHECK(r.best_config.tau == 0.65);
    CHECK(r.full_surface.size() == 1);
  }

  TEST_CASE("duplicated member makes alpha irrelevant") {
    std::mt19937_64 rng(5);
    const auto g = random_labels(rng, 30);
    const auto p = random_probs(rng, 30);
    const auto r = tune_pair(make_gold(g), make_run(p, "spec"), make_run(p, "gen"), SearchGrid::defaults());
    CHECK(r.best_config.members[0].weight == 0.5);
    const auto grid = SearchGrid::defaults();
    for (std::size_t t = 0; t < grid.tau_values.size(); ++t) {
      const double ref = r.full_surface[t].f1_macro;
      for (std::size_t a = 0; a < grid.alpha_values.size(); ++a)
        CHECK(r.full_surface[a * grid.tau_values.size() + t].f1_macro == doctest::Approx(ref).epsilon(1e-12));
    }
  }

  TEST_CASE("perfect specialist against anti-perfect generalist") {
    const std::vector<int> g{1, 0, 1, 1, 0, 0, 1, 0};
    std::vector<double> spec, gen;
    for (int v : g) {
      spec.push_back(v);
      gen.push_back(1 - v);
    }
    const auto grid = SearchGrid::defaults();
    const auto r = tune_pair(make_gold(g), make_run(spec, "spec"), make_run(gen, "gen"), grid);
    CHECK(r.best_dev_report.f1_macro == 1.0);
    // Every alpha >= 0.55 is perfect at tau 0.5; the tie-break prefers the
    // alpha closest to 0.5.
    CHECK(r.best_config.tau == 0.5);
    CHECK(r.best_config.members[0].weight == doctest::Approx(0.55));
    // alpha = 1.00 (last row) is perfect at every grid tau.
    for (std::size_t t = 0; t < grid.tau_values.size(); ++t)
      CHECK(r.full_surface[20 * grid.tau_values.size() + t].f1_macro == 1.0);
    // Oracle over the whole surface.
    for (const auto& cell : r.full_surface) {
      std::vector<double> mix;
      for (int v : g) mix.push_back(cell.alpha * v + (1 - cell.alpha) * (1 - v));
      CHECK(cell.f1_macro == doctest::Approx(oracle_cell(g, mix, cell.tau)).epsilon(1e-12));
    }
  }

  TEST_CASE("restricted grid returns the single configured cell") {
    const auto r = tune_pair(make_gold({1, 0, 1}), make_run({0.8, 0.3, 0.6}, "deberta-v3-large"),
                             make_run({0.6, 0.4, 0.2}, "bertweet"), SearchGrid{{0.65}, {0.45}});
    REQUIRE(r.best_config.members.size() == 2);
    CHECK(r.best_config.members[0].weight == 0.65);
    CHECK(r.best_config.members[1].weight == doctest::Approx(0.35));
    CHECK(r.best_config.tau == 0.45);
  }

  TEST_CASE("tie-break order") {
    CHECK(preferred({0.5, 0.5, 0.9}, {0.5, 0.5, 0.8}));
    CHECK(preferred({0.9, 0.5, 0.8}, {0.5, 0.45, 0.8}));   // tau closer to 0.5 first
    CHECK(preferred({0.55, 0.45, 0.8}, {0.9, 0.45, 0.8})); // then alpha closer to 0.5
    CHECK(preferred({0.5, 0.45, 0.8}, {0.5, 0.55, 0.8}));  // then smaller tau
    CHECK(preferred({0.45, 0.5, 0.8}, {0.55, 0.5, 0.8}));  // then smaller alpha
    CHECK_FALSE(preferred({0.5, 0.5, 0.8}, {0.5, 0.5, 0.8}));
  }

  TEST_CASE("serial and parallel searches agree") {
    std::mt19937_64 rng(17);
    const auto g = make_gold(random_labels(rng, 120));
    const auto spec = make_run(random_probs(rng, 120), "spec");
    const auto gen = make_run(random_probs(rng, 120), "gen");
    const auto serial = tune_pair(g, spec, gen, SearchGrid::defaults(), 1);
    const auto parallel = tune_pair(g, spec, gen, SearchGrid::defaults(), 8);
    CHECK(serial.best_config == parallel.best_config);
    CHECK(serial.full_surface == parallel.full_surface);
    CHECK(serial.best_dev_report == parallel.best_dev_report);
  }

  TEST_CASE("best cell dominates and round-trips through metric_report") {
    std::mt19937_64 rng(23);
    const auto g = make_gold(random_labels(rng, 60));
    const std::vector<PredictionRun> members{make_run(random_probs(rng, 60), "a"),
                                             make_run(random_probs(rng, 60), "b")};
    const auto r = tune_pair(g, members[0], members[1], SearchGrid::defaults());
    for (const auto& cell : r.full_surface) CHECK(r.best_dev_report.f1_macro >= cell.f1_macro);
    std::vector<double> w;
    for (const auto& m : r.best_config.members) w.push_back(m.weight);
    const auto again = metric_report(g, binarize(soft_vote(members, w), r.best_config.tau));
    CHECK(again == r.best_dev_report);
  }

  TEST_CASE("k-member search includes the uniform mean") {
    std::mt19937_64 rng(29);
    const auto g = make_gold(random_labels(rng, 40));
    const std::vector<PredictionRun> m{make_run(random_probs(rng, 40), "a"), make_run(random_probs(rng, 40), "b"),
                                       make_run(random_probs(rng, 40), "c")};
    const auto taus = default_tau_grid();
    const auto r = tune_weights(g, m, {{0.5, 0.3, 0.2}}, taus);
    CHECK(r.full_surface.size() == 2 * taus.size());
    CHECK(r.full_surface.front().alpha == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(tune_weights(g, m, {{0.5, 0.6, 0.2}}, taus), WeightError);
  }

  TEST_CASE("tuning requires dev runs") {
    const auto test_run = make_run({0.4, 0.6}, "m", "xx", Split::Test);
    CHECK_THROWS_AS(tune_threshold(make_gold({0, 1}), test_run, default_tau_grid()), SplitError);
  }

  TEST_CASE("positive predictions never increase with tau") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
      const auto run = make_run(random_probs(rng, 25));
      int prev = 26;
      for (double tau : default_tau_grid()) {
        int n = 0;
        for (const auto& [_, l] : binarize(run, tau)) n += l == Label::Polarized;
        CHECK(n <= prev);
        prev = n;
      }
    }
  }

  TEST_CASE("surface CSV") {
    const auto r = tune_threshold(make_gold({1, 0}), make_run({0.7, 0.2}), std::vector<double>{0.3, 0.5});
    CHECK(surface_csv(r) == "alpha,tau,macro_f1\n1.000000,0.300000,1.000000\n1.000000,0.500000,1.000000\n");
  }
}
