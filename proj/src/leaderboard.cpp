#include "langsel/leaderboard.hpp"

#include <algorithm>

#include "langsel/error.hpp"
#include "langsel/numeric.hpp"

namespace langsel {

double delta_sota(double our, double sota) { return our - sota; }

LeaderboardEntry make_entry(std::string track, double our, double sota, std::optional<int> rank) {
  return {std::move(track), our, sota, rank, delta_sota(our, sota)};
}

std::vector<LeaderboardEntry> proximity_window(const std::vector<LeaderboardEntry>& entries,
                                               double floor) {
  std::vector<LeaderboardEntry> out;
  for (const auto& e : entries)
    if (snap(e.delta_sota) >= snap(floor)) out.push_back(e);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return snap(a.delta_sota) > snap(b.delta_sota);
  });
  return out;
}

std::vector<LeaderboardEntry> challenge_tracks(const std::vector<LeaderboardEntry>& entries,
                                               double cutoff) {
  std::vector<LeaderboardEntry> out;
  for (const auto& e : entries)
    if (snap(e.delta_sota) < snap(cutoff)) out.push_back(e);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return snap(a.delta_sota) < snap(b.delta_sota);
  });
  return out;
}

std::vector<LeaderboardEntry> mid_band(const std::vector<LeaderboardEntry>& entries, double floor,
                                       double cutoff) {
  std::vector<LeaderboardEntry> out;
  for (const auto& e : entries) {
    const double d = snap(e.delta_sota);
    if (d < snap(floor) && d >= snap(cutoff)) out.push_back(e);
  }
  return out;
}

std::string window_markdown(const std::vector<LeaderboardEntry>& entries) {
  std::string md = "| Language | Rank | Our Score | SOTA | Delta SOTA |\n|---|---|---|---|---|\n";
  for (const auto& e : entries)
    md += "| " + e.track + " | " + (e.rank ? std::to_string(*e.rank) : std::string("-")) + " | " +
          fixed(e.our_score, 4) + " | " + fixed(e.sota_score, 4) + " | " +
          signed_fixed(e.delta_sota, 4) + " |\n";
  return md;
}

std::string challenge_markdown(const std::vector<LeaderboardEntry>& entries) {
  std::string md = "| Language | Macro F1 | SOTA | Delta SOTA |\n|---|---|---|---|\n";
  for (const auto& e : entries)
    md += "| " + e.track + " | " + fixed(e.our_score, 4) + " | " + fixed(e.sota_score, 4) + " | " +
          signed_fixed(e.delta_sota, 4) + " |\n";
  return md;
}

nlohmann::json to_json(const LeaderboardEntry& e) {
  nlohmann::json j = {{"track", e.track},
                      {"our_score", e.our_score},
                      {"sota_score", e.sota_score},
                      {"delta_sota", e.delta_sota},
                      {"delta_sota_4dp", signed_fixed(e.delta_sota, 4)}};
  j["rank"] = e.rank ? nlohmann::json(*e.rank) : nlohmann::json(nullptr);
  return j;
}

std::string to_string(Variant v) {
  switch (v) {
    case Variant::Baseline: return "baseline";
    case Variant::Augmented: return "augmented";
    case Variant::Final: return "final";
  }
  return "?";
}

AblationReport ablation_report(const std::vector<AblationInput>& rows) {
  AblationReport report;
  for (const auto& in : rows) {
    AblationRow row{in, Variant::Final, Variant::Final, false};
    row.winner = in.augmented_f1 > in.final_f1 ? Variant::Augmented : Variant::Final;
    const double top = std::max({in.baseline_f1, in.augmented_f1, in.final_f1});
    row.best = in.final_f1 == top       ? Variant::Final
               : in.augmented_f1 == top ? Variant::Augmented
                                        : Variant::Baseline;
    row.degraded = in.augmented_f1 < in.baseline_f1;
    if (row.winner == Variant::Final) ++report.final_wins;
    else ++report.augmented_wins;
    if (row.degraded) report.degraded_tracks.push_back(in.track);
    report.rows.push_back(row);
  }
  return report;
}

std::string ablation_markdown(const AblationReport& report) {
  std::string md = "| Lang | Aug. Model | Baseline | Augmented | Final | Winner | Degraded |\n"
                   "|---|---|---|---|---|---|---|\n";
  for (const auto& r : report.rows) {
    auto cell = [&](double v, Variant which) {
      return r.winner == which ? "**" + fixed(v, 3) + "**" : fixed(v, 3);
    };
    md += "| " + r.input.track + " | " + r.input.augmented_model + " | " +
          fixed(r.input.baseline_f1, 3) + " | " + cell(r.input.augmented_f1, Variant::Augmented) +
          " | " + cell(r.input.final_f1, Variant::Final) + " | " + to_string(r.winner) + " | " +
          (r.degraded ? "yes" : "no") + " |\n";
  }
  md += "\nFinal beats augmented in " + std::to_string(report.final_wins) + " of " +
        std::to_string(report.rows.size()) + " tracks; augmented wins " +
        std::to_string(report.augmented_wins) + ".\n";
  return md;
}

nlohmann::json to_json(const AblationReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows)
    rows.push_back({{"track", r.input.track},
                    {"augmented_model", r.input.augmented_model},
                    {"baseline_f1", r.input.baseline_f1},
                    {"augmented_f1", r.input.augmented_f1},
                    {"final_f1", r.input.final_f1},
                    {"winner", to_string(r.winner)},
                    {"best", to_string(r.best)},
                    {"degraded", r.degraded}});
  return {{"rows", rows},
          {"final_wins", report.final_wins},
          {"augmented_wins", report.augmented_wins},
          {"degraded_tracks", report.degraded_tracks}};
}

std::vector<BaselineComparison> baseline_context(const std::map<std::string, double>& organizer,
                                                 const std::map<std::string, double>& inhouse) {
  for (const auto& [track, _] : organizer)
    if (!inhouse.count(track)) throw TrackMismatch("track '" + track + "' has no in-house score");
  for (const auto& [track, _] : inhouse)
    if (!organizer.count(track)) throw TrackMismatch("track '" + track + "' has no organizer score");

  std::vector<BaselineComparison> out;
  for (const auto& [track, org] : organizer) {
    const double mine = inhouse.at(track);
    const double diff = org - mine;
    const double d = snap(diff);
    out.push_back({track, org, mine, diff, d > 0 ? "organizer" : d < 0 ? "inhouse" : "tie"});
  }
  return out;
}

std::string baseline_markdown(const std::vector<BaselineComparison>& rows) {
  std::string md = "| Language | Organizer Baseline | XLM-R (Dev) | Difference | Stronger |\n"
                   "|---|---|---|---|---|\n";
  for (const auto& r : rows)
    md += "| " + r.track + " | " + fixed(r.organizer, 3) + " | " + fixed(r.inhouse, 3) + " | " +
          signed_fixed(r.difference, 3) + " | " + r.stronger + " |\n";
  return md;
}

nlohmann::json to_json(const BaselineComparison& r) {
  return {{"track", r.track},         {"organizer", r.organizer},
          {"inhouse", r.inhouse},     {"difference", r.difference},
          {"stronger", r.stronger}};
}

}  // namespace langsel
