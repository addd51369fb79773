#include "langsel/metrics.hpp"

#include <cmath>

namespace langsel {

std::string to_string(Split split) { return split == Split::Dev ? "dev" : "test"; }

Split parse_split(const std::string& text) {
  if (text == "dev") return Split::Dev;
  if (text == "test") return Split::Test;
  throw RangeError("split must be 'dev' or 'test', got '" + text + "'");
}

double GoldLabels::prevalence() const {
  if (labels.empty()) throw EmptyInput("gold labels are empty");
  std::size_t pos = 0;
  for (const auto& [_, label] : labels) pos += label == Label::Polarized;
  return static_cast<double>(pos) / static_cast<double>(labels.size());
}

void PredictionRun::validate() const {
  for (const auto& [id, p] : probs) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0)
      throw RangeError("probability for '" + id + "' is outside [0, 1]");
  }
}

Labels binarize(const IdTable<double>& probs, double tau) {
  Labels out;
  for (const auto& [id, p] : probs) out.insert(id, p >= tau ? Label::Polarized : Label::Neutral);
  return out;
}

Labels binarize(const PredictionRun& run, double tau) {
  run.validate();
  return binarize(run.probs, tau);
}

ConfusionCounts confusion(const GoldLabels& gold, const Labels& pred) {
  if (gold.labels.empty()) throw EmptyInput("gold labels are empty");
  ConfusionCounts c;
  for (const auto& [id, truth] : gold.labels) {
    const Label* guess = pred.find(id);
    if (!guess) throw MissingPrediction("no prediction for gold id '" + id + "'");
    const bool t = truth == Label::Polarized;
    const bool g = *guess == Label::Polarized;
    if (t && g) ++c.tp;
    else if (!t && g) ++c.fp;
    else if (t && !g) ++c.fn;
    else ++c.tn;
  }
  if (pred.size() != gold.labels.size()) {
    for (const auto& [id, _] : pred)
      if (!gold.labels.contains(id)) throw UnknownId("prediction id '" + id + "' is not in gold");
  }
  return c;
}

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double harmonic(double p, double r) { return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0; }

}  // namespace

double MetricReport::balance_gap() const noexcept {
  return std::fabs(precision_macro() - recall_macro());
}

MetricReport report_from_counts(const ConfusionCounts& c) {
  MetricReport r;
  r.counts = c;
  r.n = c.total();
  r.accuracy = ratio(c.tp + c.tn, r.n);
  r.precision_pos = ratio(c.tp, c.tp + c.fp);
  r.recall_pos = ratio(c.tp, c.tp + c.fn);
  r.f1_binary = harmonic(r.precision_pos, r.recall_pos);
  r.precision_neg = ratio(c.tn, c.tn + c.fn);
  r.recall_neg = ratio(c.tn, c.tn + c.fp);
  r.f1_neg = harmonic(r.precision_neg, r.recall_neg);
  r.f1_macro = (r.f1_binary + r.f1_neg) / 2.0;
  return r;
}

MetricReport metric_report(const GoldLabels& gold, const Labels& pred) {
  return report_from_counts(confusion(gold, pred));
}

}  // namespace langsel
