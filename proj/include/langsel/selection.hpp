#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "langsel/metrics.hpp"

namespace langsel {

enum class Role { Baseline, Specialist, Generalist, Ensemble };

std::string to_string(Role role);
Role parse_role(const std::string& text);

struct CandidateEvaluation {
  std::string model_id;
  Role role = Role::Specialist;
  MetricReport dev_report;
};

enum class Rule { DeltaGain, Balance, BaselineRetained };

std::string to_string(Rule rule);

/// Thresholds of the adoption rule, all in macro-F1 fractions.
struct SelectionPolicy {
  /// Minimum dev gain to adopt a non-baseline architecture (inclusive).
  double min_gain = 0.02;
  /// Balance clause: how far below the baseline a candidate may score.
  double balance_tolerance = 0.01;
  /// Balance clause: required shrinkage of |P_macro - R_macro|.
  double balance_improvement = 0.02;
};

struct SelectionDecision {
  std::string track;
  std::string chosen;
  Role chosen_role = Role::Baseline;
  Rule rule_fired = Rule::BaselineRetained;
  double baseline_f1 = 0.0;
  double chosen_f1 = 0.0;
  /// chosen macro F1 minus baseline macro F1; 0 when the baseline is retained.
  double delta_dev = 0.0;
  double balance_gap_baseline = 0.0;
  double balance_gap_chosen = 0.0;
};

/// Adopt the best candidate clearing `min_gain`; otherwise the best candidate
/// qualifying under the balance clause; otherwise keep the baseline.
/// Throws NoBaseline if `baseline` is not in the baseline role or a candidate is,
/// DuplicateModelId if a model id repeats.
SelectionDecision decide(const std::string& track, const CandidateEvaluation& baseline,
                         const std::vector<CandidateEvaluation>& candidates,
                         const SelectionPolicy& policy = {});

/// Same, with the baseline picked out of a full candidate set.
SelectionDecision decide(const std::string& track, const std::vector<CandidateEvaluation>& all,
                         const SelectionPolicy& policy = {});

/// One printed row of a selection ledger (baseline score vs adopted score).
struct LedgerRow {
  std::string track;
  std::string architecture;
  /// Transition kind of the adopted model: specialist, generalist or ensemble.
  Role transition = Role::Specialist;
  double baseline_f1 = 0.0;
  double chosen_f1 = 0.0;
};

struct ReplaySummary {
  LedgerRow row;
  double delta_dev = 0.0;
  bool satisfies_rule = false;
};

/// Recomputes every delta and flags rows that violate the gain rule.
std::vector<ReplaySummary> ledger_replay(const std::vector<LedgerRow>& rows,
                                         double min_gain = 0.02);

/// Three-section table (specialist / generalist / ensemble transitions).
std::string replay_markdown(const std::vector<ReplaySummary>& rows);
std::string decisions_markdown(const std::vector<SelectionDecision>& decisions);

nlohmann::json to_json(const SelectionDecision& decision);
nlohmann::json to_json(const ReplaySummary& summary);

}  // namespace langsel
