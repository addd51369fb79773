#include "langsel/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "langsel/numeric.hpp"

namespace langsel {

SkewReport prediction_skew(const Labels& pred, const GoldLabels& gold,
                           const CollapseThresholds& thresholds) {
  const ConfusionCounts c = confusion(gold, pred);
  SkewReport s;
  s.positive_rate = static_cast<double>(c.tp + c.fp) / static_cast<double>(c.total());
  const std::size_t neutrals = c.tn + c.fp;
  s.neutral_recall = neutrals ? static_cast<double>(c.tn) / static_cast<double>(neutrals) : 0.0;
  s.collapsed = s.positive_rate >= thresholds.min_positive_rate &&
                s.neutral_recall < thresholds.max_neutral_recall;
  return s;
}

double majority_baseline(double prevalence) {
  if (prevalence == 0.0) throw DegenerateGold("gold has no polarized samples");
  if (!std::isfinite(prevalence) || prevalence < 0.0 || prevalence > 1.0)
    throw RangeError("prevalence must lie in (0, 1]");
  // F1(pos) = 2p / (1 + p), F1(neg) = 0.
  return prevalence / (1.0 + prevalence);
}

double dev_test_shift(double dev_f1, double test_f1) { return test_f1 - dev_f1; }

std::string to_string(ShiftGroup group) {
  switch (group) {
    case ShiftGroup::AnomalousGain: return "anomalous_gain";
    case ShiftGroup::Gain: return "gain";
    case ShiftGroup::Stable: return "stable";
    case ShiftGroup::Loss: return "loss";
  }
  return "?";
}

ShiftGroup classify_shift(double delta, const std::optional<SkewReport>& skew,
                          double stable_band) {
  const double d = snap(delta);
  const double band = snap(stable_band);
  if (std::fabs(d) <= band) return ShiftGroup::Stable;
  if (d < 0.0) return ShiftGroup::Loss;
  return skew && skew->collapsed ? ShiftGroup::AnomalousGain : ShiftGroup::Gain;
}

ShiftRecord make_shift_record(const std::string& track, double dev_f1, double test_f1,
                              const std::optional<SkewReport>& skew, double stable_band) {
  ShiftRecord r{track, dev_f1, test_f1, dev_test_shift(dev_f1, test_f1), ShiftGroup::Stable};
  r.group = classify_shift(r.delta, skew, stable_band);
  return r;
}

std::string shift_markdown(const std::vector<ShiftRecord>& records) {
  std::string md = "| Language | Dev F1 | Test F1 | Delta |\n|---|---|---|---|\n";
  const std::pair<ShiftGroup, const char*> sections[] = {
      {ShiftGroup::AnomalousGain, "Special Case: Anomalous Gain"},
      {ShiftGroup::Gain, "Group 1: Top Gains"},
      {ShiftGroup::Stable, "Group 2: Stable Performers"},
      {ShiftGroup::Loss, "Group 3: Top Losses"},
  };
  for (const auto& [group, title] : sections) {
    std::vector<ShiftRecord> rows;
    for (const auto& r : records)
      if (r.group == group) rows.push_back(r);
    if (rows.empty()) continue;
    std::stable_sort(rows.begin(), rows.end(), [](const ShiftRecord& a, const ShiftRecord& b) {
      return snap(a.delta) > snap(b.delta);
    });
    md += std::string("| *") + title + "* | | | |\n";
    for (const auto& r : rows)
      md += "| " + r.track + " | " + fixed(r.dev_f1, 3) + " | " + fixed(r.test_f1, 3) + " | " +
            percent_points(r.delta, 1) + " |\n";
  }
  return md;
}

nlohmann::json to_json(const SkewReport& s) {
  return {{"positive_rate", s.positive_rate},
          {"neutral_recall", s.neutral_recall},
          {"collapsed", s.collapsed}};
}

nlohmann::json to_json(const ShiftRecord& r) {
  return {{"track", r.track},
          {"dev_f1", r.dev_f1},
          {"test_f1", r.test_f1},
          {"delta", r.delta},
          {"delta_pp", percent_points(r.delta, 1)},
          {"group", to_string(r.group)}};
}

}  // namespace langsel
