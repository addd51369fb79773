#include "doctest.h"
#include "langsel/selection.hpp"

using namespace langsel;

namespace {

/// Report with a given macro F1 and macro precision/recall (split evenly over classes).
MetricReport report(double f1_macro, double p_macro = 0.8, double r_macro = 0.8) {
  MetricReport r;
  r.f1_macro = f1_macro;
  r.precision_pos = r.precision_neg = p_macro;
  r.recall_pos = r.recall_neg = r_macro;
  return r;
}

CandidateEvaluation cand(std::string id, Role role, double f1, double p = 0.8, double r = 0.8) {
  return {std::move(id), role, report(f1, p, r)};
}

}  // namespace

TEST_SUITE("selection") {
  TEST_CASE("Odia specialist clears the gain rule") {
    const auto d = decide("ori", cand("xlmr", Role::Baseline, 0.7257),
                          {cand("l3cube-odia", Role::Specialist, 0.8317)});
    CHECK(d.rule_fired == Rule::DeltaGain);
    CHECK(d.chosen == "l3cube-odia");
    CHECK(d.delta_dev == doctest::Approx(0.1060).epsilon(1e-9));
    CHECK(to_json(d)["delta_dev_pp"] == "+10.60%");
  }

  TEST_CASE("marginal Spanish specialist keeps the baseline") {
    const auto d = decide("spa", cand("xlmr", Role::Baseline, 0.6964),
                          {cand("robertuito", Role::Specialist, 0.7024)});
    CHECK(d.rule_fired == Rule::BaselineRetained);
    CHECK(d.chosen == "xlmr");
    CHECK(d.delta_dev == 0.0);
  }

  TEST_CASE("equal scores and profile keep the baseline") {
    const auto d = decide("xx", cand("b", Role::Baseline, 0.8), {cand("c", Role::Generalist, 0.8)});
    CHECK(d.rule_fired == Rule::BaselineRetained);
  }

  TEST_CASE("empty candidate list keeps the baseline") {
    const auto d = decide("xx", cand("b", Role::Baseline, 0.8), {});
    CHECK(d.rule_fired == Rule::BaselineRetained);
    CHECK(d.chosen == "b");
  }

  TEST_CASE("gain boundary is inclusive") {
    const auto d = decide("nep", cand("b", Role::Baseline, 0.85), {cand("mdeberta", Role::Generalist, 0.87)});
    CHECK(d.rule_fired == Rule::DeltaGain);
    const auto below = decide("nep", cand("b", Role::Baseline, 0.85), {cand("m", Role::Generalist, 0.8699)});
    CHECK(below.rule_fired == Rule::BaselineRetained);
  }

  TEST_CASE("best qualifying candidate wins, with tie-breaks") {
    const auto base = cand("b", Role::Baseline, 0.70);
    auto d = decide("xx", base,
                    {cand("s1", Role::Specialist, 0.75), cand("e1", Role::Ensemble, 0.78),
                     cand("g1", Role::Generalist, 0.71)});
    CHECK(d.chosen == "e1");
    // Same macro F1: the more balanced one.
    d = decide("xx", base,
               {cand("s1", Role::Specialist, 0.75, 0.9, 0.7), cand("s2", Role::Specialist, 0.75, 0.8, 0.78)});
    CHECK(d.chosen == "s2");
    // Fully tied: lexicographic id.
    d = decide("xx", base, {cand("zz", Role::Specialist, 0.75), cand("aa", Role::Specialist, 0.75)});
    CHECK(d.chosen == "aa");
  }

  TEST_CASE("candidate order does not change the decision") {
    const auto base = cand("b", Role::Baseline, 0.70);
    std::vector<CandidateEvaluation> cs{cand("a", Role::Specialist, 0.74), cand("c", Role::Ensemble, 0.74),
                                        cand("d", Role::Generalist, 0.73, 0.9, 0.6)};
    const auto first = decide("xx", base, cs);
    std::reverse(cs.begin(), cs.end());
    const auto second = decide("xx", base, cs);
    CHECK(first.chosen == second.chosen);
    CHECK(first.rule_fired == second.rule_fired);
  }

  TEST_CASE("balance clause") {
    // Baseline gap 0.20; candidate 0.005 below with gap 0.02.
    const auto base = cand("b", Role::Baseline, 0.80, 0.9, 0.7);
    auto d = decide("xx", base, {cand("c", Role::Specialist, 0.795, 0.81, 0.79)});
    CHECK(d.rule_fired == Rule::Balance);
    CHECK(d.chosen == "c");
    CHECK(d.balance_gap_baseline == doctest::Approx(0.2));
    CHECK(d.balance_gap_chosen == doctest::Approx(0.02));
    // Too far below the baseline.
    d = decide("xx", base, {cand("c", Role::Specialist, 0.785, 0.81, 0.79)});
    CHECK(d.rule_fired == Rule::BaselineRetained);
    // Not enough balance gained (0.20 -> 0.19).
    d = decide("xx", base, {cand("c", Role::Specialist, 0.80, 0.895, 0.705)});
    CHECK(d.rule_fired == Rule::BaselineRetained);
    // A delta_gain candidate takes precedence.
    d = decide("xx", base, {cand("c", Role::Specialist, 0.80, 0.81, 0.79), cand("g", Role::Generalist, 0.83, 0.9, 0.7)});
    CHECK(d.rule_fired == Rule::DeltaGain);
    CHECK(d.chosen == "g");
  }

  TEST_CASE("invalid candidate sets") {
    CHECK_THROWS_AS(decide("xx", cand("b", Role::Specialist, 0.8), {}), NoBaseline);
    CHECK_THROWS_AS(decide("xx", cand("b", Role::Baseline, 0.8), {cand("b", Role::Specialist, 0.9)}),
                    DuplicateModelId);
    CHECK_THROWS_AS(decide("xx", cand("b", Role::Baseline, 0.8), {cand("c", Role::Baseline, 0.9)}), NoBaseline);
    CHECK_THROWS_AS(decide("xx", std::vector<CandidateEvaluation>{cand("c", Role::Specialist, 0.9)}), NoBaseline);
    const auto d = decide("xx", std::vector<CandidateEvaluation>{cand("c", Role::Specialist, 0.9),
                                                                  cand("b", Role::Baseline, 0.8)});
    CHECK(d.chosen == "c");
  }

  TEST_CASE("ledger replay") {
    const auto rows = ledger_replay({{"hin", "mDeBERTa-v3 + L3Cube-Hindi", Role::Ensemble, 0.7750, 0.8882},
                                     {"nep", "mDeBERTa-v3 (Base)", Role::Generalist, 0.8500, 0.8700},
                                     {"bad", "worse", Role::Specialist, 0.8, 0.7}});
    CHECK(rows[0].delta_dev == doctest::Approx(0.1132).epsilon(1e-9));
    CHECK(rows[0].satisfies_rule);
    CHECK(rows[1].satisfies_rule);
    CHECK(rows[2].delta_dev < 0);
    CHECK_FALSE(rows[2].satisfies_rule);
    const auto md = replay_markdown(rows);
    CHECK(md.find("+11.32%") != std::string::npos);
    CHECK(md.find("VIOLATION") != std::string::npos);
    CHECK(md.find("Hybrid Ensemble") != std::string::npos);
  }

  TEST_CASE("role names round-trip") {
    for (Role r : {Role::Baseline, Role::Specialist, Role::Generalist, Role::Ensemble})
      CHECK(parse_role(to_string(r)) == r);
    CHECK_THROWS_AS(parse_role("oracle"), RangeError);
  }
}
