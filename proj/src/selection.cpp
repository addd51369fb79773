#include "langsel/selection.hpp"

#include <set>

#include "langsel/numeric.hpp"

namespace langsel {

std::string to_string(Role role) {
  switch (role) {
    case Role::Baseline: return "baseline";
    case Role::Specialist: return "specialist";
    case Role::Generalist: return "generalist";
    case Role::Ensemble: return "ensemble";
  }
  return "?";
}

Role parse_role(const std::string& text) {
  if (text == "baseline") return Role::Baseline;
  if (text == "specialist") return Role::Specialist;
  if (text == "generalist") return Role::Generalist;
  if (text == "ensemble") return Role::Ensemble;
  throw RangeError("unknown role '" + text + "'");
}

std::string to_string(Rule rule) {
  switch (rule) {
    case Rule::DeltaGain: return "delta_gain";
    case Rule::Balance: return "balance";
    case Rule::BaselineRetained: return "baseline_retained";
  }
  return "?";
}

namespace {

/// Orders qualifying candidates: higher macro F1, then smaller gap, then model id.
bool ranks_above(const CandidateEvaluation& a, const CandidateEvaluation& b) {
  if (a.dev_report.f1_macro != b.dev_report.f1_macro)
    return a.dev_report.f1_macro > b.dev_report.f1_macro;
  const double ga = snap(a.dev_report.balance_gap());
  const double gb = snap(b.dev_report.balance_gap());
  if (ga != gb) return ga < gb;
  return a.model_id < b.model_id;
}

}  // namespace

SelectionDecision decide(const std::string& track, const CandidateEvaluation& baseline,
                         const std::vector<CandidateEvaluation>& candidates,
                         const SelectionPolicy& policy) {
  if (baseline.role != Role::Baseline)
    throw NoBaseline("track '" + track + "': '" + baseline.model_id + "' is not a baseline");
  std::set<std::string> seen{baseline.model_id};
  for (const auto& c : candidates) {
    if (c.role == Role::Baseline)
      throw NoBaseline("track '" + track + "' has more than one baseline ('" + c.model_id + "')");
    if (!seen.insert(c.model_id).second)
      throw DuplicateModelId("track '" + track + "': model '" + c.model_id + "' listed twice");
  }

  const double base_f1 = baseline.dev_report.f1_macro;
  const double base_gap = baseline.dev_report.balance_gap();

  const CandidateEvaluation* by_gain = nullptr;
  const CandidateEvaluation* by_balance = nullptr;
  for (const auto& c : candidates) {
    const double delta = snap(c.dev_report.f1_macro - base_f1);
    if (delta >= snap(policy.min_gain)) {
      if (!by_gain || ranks_above(c, *by_gain)) by_gain = &c;
    } else if (delta >= -snap(policy.balance_tolerance) &&
               snap(base_gap - c.dev_report.balance_gap()) >= snap(policy.balance_improvement)) {
      if (!by_balance || ranks_above(c, *by_balance)) by_balance = &c;
    }
  }

  SelectionDecision d;
  d.track = track;
  d.baseline_f1 = base_f1;
  d.balance_gap_baseline = base_gap;
  const CandidateEvaluation* winner = by_gain ? by_gain : by_balance;
  if (!winner) {
    d.chosen = baseline.model_id;
    d.chosen_role = Role::Baseline;
    d.rule_fired = Rule::BaselineRetained;
    d.chosen_f1 = base_f1;
    d.balance_gap_chosen = base_gap;
    return d;
  }
  d.chosen = winner->model_id;
  d.chosen_role = winner->role;
  d.rule_fired = by_gain ? Rule::DeltaGain : Rule::Balance;
  d.chosen_f1 = winner->dev_report.f1_macro;
  d.delta_dev = d.chosen_f1 - base_f1;
  d.balance_gap_chosen = winner->dev_report.balance_gap();
  return d;
}

SelectionDecision decide(const std::string& track, const std::vector<CandidateEvaluation>& all,
                         const SelectionPolicy& policy) {
  const CandidateEvaluation* baseline = nullptr;
  std::vector<CandidateEvaluation> rest;
  for (const auto& c : all) {
    if (c.role == Role::Baseline) {
      if (baseline)
        throw NoBaseline("track '" + track + "' has more than one baseline ('" + c.model_id + "')");
      baseline = &c;
    } else {
      rest.push_back(c);
    }
  }
  if (!baseline) throw NoBaseline("track '" + track + "' has no baseline candidate");
  return decide(track, *baseline, rest, policy);
}

std::vector<ReplaySummary> ledger_replay(const std::vector<LedgerRow>& rows, double min_gain) {
  std::vector<ReplaySummary> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    const double delta = row.chosen_f1 - row.baseline_f1;
    out.push_back({row, delta, snap(delta) >= snap(min_gain)});
  }
  return out;
}

std::string replay_markdown(const std::vector<ReplaySummary>& rows) {
  std::string md = "| Lang | Selected Architecture | XLM-R | Selected | Delta Dev | Rule |\n"
                   "|---|---|---|---|---|---|\n";
  const std::pair<Role, const char*> sections[] = {
      {Role::Specialist, "Baseline -> Monolingual Specialist"},
      {Role::Generalist, "Baseline -> High-Capacity Generalist"},
      {Role::Ensemble, "Baseline -> Hybrid Ensemble"},
  };
  for (const auto& [role, title] : sections) {
    bool header = false;
    for (const auto& s : rows) {
      if (s.row.transition != role) continue;
      if (!header) {
        md += std::string("| *") + title + "* | | | | | |\n";
        header = true;
      }
      md += "| " + s.row.track + " | " + s.row.architecture + " | " + fixed(s.row.baseline_f1, 4) +
            " | " + fixed(s.row.chosen_f1, 4) + " | " + percent_points(s.delta_dev, 2) + " | " +
            (s.satisfies_rule ? "ok" : "VIOLATION") + " |\n";
    }
  }
  return md;
}

std::string decisions_markdown(const std::vector<SelectionDecision>& decisions) {
  std::string md = "| Track | Chosen | Role | Rule | Baseline | Chosen F1 | Delta Dev | Gap (base) | "
                   "Gap (chosen) |\n|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& d : decisions) {
    md += "| " + d.track + " | " + d.chosen + " | " + to_string(d.chosen_role) + " | " +
          to_string(d.rule_fired) + (d.rule_fired == Rule::Balance ? "" : "") +
          " | " + fixed(d.baseline_f1, 4) + " | " + fixed(d.chosen_f1, 4) + " | " +
          percent_points(d.delta_dev, 2) + " | " + fixed(d.balance_gap_baseline, 4) + " | " +
          fixed(d.balance_gap_chosen, 4) + " |\n";
  }
  return md;
}

nlohmann::json to_json(const SelectionDecision& d) {
  return {{"track", d.track},
          {"chosen", d.chosen},
          {"chosen_role", to_string(d.chosen_role)},
          {"rule_fired", to_string(d.rule_fired)},
          {"baseline_f1", d.baseline_f1},
          {"chosen_f1", d.chosen_f1},
          {"delta_dev", d.delta_dev},
          {"delta_dev_pp", percent_points(d.delta_dev, 2)},
          {"balance_gap_baseline", d.balance_gap_baseline},
          {"balance_gap_chosen", d.balance_gap_chosen}};
}

nlohmann::json to_json(const ReplaySummary& s) {
  return {{"track", s.row.track},
          {"architecture", s.row.architecture},
          {"transition", to_string(s.row.transition)},
          {"baseline_f1", s.row.baseline_f1},
          {"chosen_f1", s.row.chosen_f1},
          {"delta_dev", s.delta_dev},
          {"delta_dev_pp", percent_points(s.delta_dev, 2)},
          {"satisfies_rule", s.satisfies_rule}};
}

}  // namespace langsel
