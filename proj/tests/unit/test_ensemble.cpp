#include <algorithm>
#include <random>

#include "doctest.h"
#include "langsel/ensemble.hpp"
#include "support.hpp"

using namespace langsel;
using namespace langsel::testing;

TEST_SUITE("ensemble") {
  TEST_CASE("weight one on the first member reproduces it exactly") {
    const std::vector<PredictionRun> m{make_run({0.13, 0.77, 0.5}, "A"), make_run({0.9, 0.1, 0.2}, "B")};
    const std::vector<double> w{1.0, 0.0};
    const auto out = soft_vote(m, w);
    CHECK(out.probs.entries() == m[0].probs.entries());
  }

  TEST_CASE("two-member mixture arithmetic") {
    const std::vector<PredictionRun> m{make_run({0.8}, "spec"), make_run({0.2}, "gen")};
    const std::vector<double> w{0.65, 0.35};
    const auto out = soft_vote(m, w);
    CHECK(*out.probs.find("s0") == doctest::Approx(0.59).epsilon(1e-12));
    CHECK(out.model_id == "spec(0.65)+gen(0.35)");
  }

  TEST_CASE("three-member uniform mean") {
    const std::vector<PredictionRun> m{make_run({0.9}, "a"), make_run({0.6}, "b"), make_run({0.3}, "c")};
    CHECK(*uniform_vote(m).probs.find("s0") == doctest::Approx(0.6).epsilon(1e-12));
  }

  TEST_CASE("uniform vote edge cases") {
    const std::vector<PredictionRun> single{make_run({0.31, 0.7}, "a")};
    CHECK(uniform_vote(single).probs.entries() == single[0].probs.entries());

    const std::vector<PredictionRun> pair{make_run({0.0}, "a"), make_run({1.0}, "b")};
    CHECK(*uniform_vote(pair).probs.find("s0") == 0.5);

    std::vector<PredictionRun> same;
    for (int i = 0; i < 7; ++i) same.push_back(make_run({0.37}, "m" + std::to_string(i)));
    CHECK(*uniform_vote(same).probs.find("s0") == 0.37);
  }

  TEST_CASE("weights are validated, not renormalized") {
    const std::vector<PredictionRun> m{make_run({0.8}, "a"), make_run({0.2}, "b")};
    CHECK_THROWS_AS(soft_vote(m, std::vector<double>{0.6, 0.6}), WeightError);
    CHECK_THROWS_AS(soft_vote(m, std::vector<double>{1.2, -0.2}), WeightError);
    CHECK_THROWS_AS(soft_vote(m, std::vector<double>{1.0}), WeightError);
    CHECK_THROWS_AS(uniform_vote(std::vector<PredictionRun>{}), WeightError);
    CHECK_NOTHROW(soft_vote(m, std::vector<double>{0.5, 0.5 + 5e-10}));
  }

  TEST_CASE("member id sets must match") {
    std::vector<PredictionRun> m{make_run({0.8, 0.1}, "a"), make_run({0.2}, "b")};
    CHECK_THROWS_AS(uniform_vote(m), IdMismatch);
    m[1] = make_run({0.2, 0.3}, "b", "other-track");
    CHECK_THROWS_AS(uniform_vote(m), IdMismatch);
  }

  TEST_CASE("member order of ids does not matter") {
    PredictionRun a = make_run({0.2, 0.8}, "a");
    PredictionRun b{"xx", "b", Split::Dev, {{"s1", 0.4}, {"s0", 0.6}}};
    const std::vector<PredictionRun> m{a, b};
    const auto out = uniform_vote(m);
    CHECK(*out.probs.find("s0") == doctest::Approx(0.4));
    CHECK(*out.probs.find("s1") == doctest::Approx(0.6));
  }

  TEST_CASE("convexity and range over random fixtures") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t k = 1 + rng() % 4;
      const std::size_t n = 1 + rng() % 15;
      std::vector<PredictionRun> m;
      std::vector<double> w;
      double sum = 0;
      for (std::size_t i = 0; i < k; ++i) {
        m.push_back(make_run(random_probs(rng, n), "m" + std::to_string(i)));
        w.push_back(std::uniform_real_distribution<double>(0.0, 1.0)(rng));
        sum += w.back();
      }
      for (auto& x : w) x /= sum;
      const auto out = soft_vote(m, w);
      for (std::size_t j = 0; j < n; ++j) {
        double lo = 1, hi = 0;
        for (const auto& r : m) {
          lo = std::min(lo, *r.probs.find(sample_id(j)));
          hi = std::max(hi, *r.probs.find(sample_id(j)));
        }
        const double p = *out.probs.find(sample_id(j));
        CHECK(p >= lo);
        CHECK(p <= hi);
      }
    }
  }

  TEST_CASE("EnsembleConfig validation") {
    EnsembleConfig ok{{{"a", 0.4}, {"b", 0.6}}, 0.45};
    CHECK_NOTHROW(ok.validate());
    EnsembleConfig empty{{}, 0.5};
    CHECK_THROWS_AS(empty.validate(), WeightError);
    EnsembleConfig bad_tau{{{"a", 1.0}}, 1.5};
    CHECK_THROWS_AS(bad_tau.validate(), RangeError);
  }
}
