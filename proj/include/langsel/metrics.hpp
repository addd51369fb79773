#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "langsel/id_table.hpp"

namespace langsel {

/// Binary label; polarized is the positive class.
enum class Label : std::uint8_t { Neutral = 0, Polarized = 1 };

enum class Split { Dev, Test };

std::string to_string(Split split);
Split parse_split(const std::string& text);

using Labels = IdTable<Label>;

/// Reference labels for one (track, split). Non-empty by construction.
struct GoldLabels {
  Labels labels;

  /// Fraction of polarized samples.
  double prevalence() const;
};

/// Polarized-class probabilities produced by one model on one split.
struct PredictionRun {
  std::string track;
  std::string model_id;
  Split split = Split::Dev;
  IdTable<double> probs;

  /// Throws RangeError on any non-finite or out-of-range probability.
  void validate() const;
};

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const noexcept { return tp + fp + fn + tn; }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

struct MetricReport {
  ConfusionCounts counts;
  std::size_t n = 0;
  double accuracy = 0.0;
  double precision_pos = 0.0;
  double recall_pos = 0.0;
  double f1_binary = 0.0;
  double precision_neg = 0.0;
  double recall_neg = 0.0;
  double f1_neg = 0.0;
  double f1_macro = 0.0;

  double precision_macro() const noexcept { return (precision_pos + precision_neg) / 2.0; }
  double recall_macro() const noexcept { return (recall_pos + recall_neg) / 2.0; }
  /// |P_macro - R_macro|; smaller is more balanced.
  double balance_gap() const noexcept;

  friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

/// Polarized iff prob >= tau.
Labels binarize(const PredictionRun& run, double tau);
Labels binarize(const IdTable<double>& probs, double tau);

ConfusionCounts confusion(const GoldLabels& gold, const Labels& pred);

/// Derives every rate from the counts. A class with P + R = 0 gets F1 = 0.
MetricReport report_from_counts(const ConfusionCounts& counts);

MetricReport metric_report(const GoldLabels& gold, const Labels& pred);

}  // namespace langsel
