#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "langsel/metrics.hpp"

namespace langsel {

struct CollapseThresholds {
  /// Positive-prediction rate at or above which a run may be collapsed.
  double min_positive_rate = 0.90;
  /// Neutral-class recall strictly below which a run may be collapsed.
  double max_neutral_recall = 0.25;
};

struct SkewReport {
  double positive_rate = 0.0;
  double neutral_recall = 0.0;
  bool collapsed = false;
};

SkewReport prediction_skew(const Labels& pred, const GoldLabels& gold,
                           const CollapseThresholds& thresholds = {});

/// Macro F1 of the all-polarized predictor on gold with polarized fraction `prevalence`:
/// p / (1 + p). Throws DegenerateGold for prevalence 0, RangeError outside (0, 1].
double majority_baseline(double prevalence);

/// test - dev.
double dev_test_shift(double dev_f1, double test_f1);

enum class ShiftGroup { AnomalousGain, Gain, Stable, Loss };

std::string to_string(ShiftGroup group);

struct ShiftRecord {
  std::string track;
  double dev_f1 = 0.0;
  double test_f1 = 0.0;
  double delta = 0.0;
  ShiftGroup group = ShiftGroup::Stable;
};

/// Stable iff |delta| <= band (inclusive); gains on a collapsed run become AnomalousGain.
ShiftGroup classify_shift(double delta, const std::optional<SkewReport>& skew,
                          double stable_band = 0.02);

ShiftRecord make_shift_record(const std::string& track, double dev_f1, double test_f1,
                              const std::optional<SkewReport>& skew = std::nullopt,
                              double stable_band = 0.02);

/// Four sections (anomalous gain, gains, stable, losses), each sorted by delta descending.
std::string shift_markdown(const std::vector<ShiftRecord>& records);

nlohmann::json to_json(const SkewReport& skew);
nlohmann::json to_json(const ShiftRecord& record);

}  // namespace langsel
