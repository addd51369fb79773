#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace langsel {

struct LeaderboardEntry {
  std::string track;
  double our_score = 0.0;
  double sota_score = 0.0;
  /// Display-only; taken from the leaderboard snapshot, never recomputed.
  std::optional<int> rank;
  double delta_sota = 0.0;
};

/// our - sota, unrounded. Reports render it at 4 decimals.
double delta_sota(double our, double sota);

LeaderboardEntry make_entry(std::string track, double our, double sota,
                            std::optional<int> rank = std::nullopt);

/// Entries with delta_sota >= floor, sorted by delta descending.
std::vector<LeaderboardEntry> proximity_window(const std::vector<LeaderboardEntry>& entries,
                                               double floor = -0.04);

/// Entries with delta_sota < cutoff, sorted by delta ascending.
std::vector<LeaderboardEntry> challenge_tracks(const std::vector<LeaderboardEntry>& entries,
                                               double cutoff = -0.05);

/// Entries in neither list: cutoff <= delta < floor.
std::vector<LeaderboardEntry> mid_band(const std::vector<LeaderboardEntry>& entries,
                                       double floor = -0.04, double cutoff = -0.05);

std::string window_markdown(const std::vector<LeaderboardEntry>& entries);
std::string challenge_markdown(const std::vector<LeaderboardEntry>& entries);
nlohmann::json to_json(const LeaderboardEntry& entry);

enum class Variant { Baseline, Augmented, Final };

std::string to_string(Variant v);

struct AblationInput {
  std::string track;
  std::string augmented_model;
  double baseline_f1 = 0.0;
  double augmented_f1 = 0.0;
  double final_f1 = 0.0;
};

struct AblationRow {
  AblationInput input;
  /// Augmented vs final head-to-head; ties go to final.
  Variant winner = Variant::Final;
  /// Row maximum over all three; ties resolve final, then augmented, then baseline.
  Variant best = Variant::Final;
  /// Augmentation scored below the unaugmented baseline.
  bool degraded = false;
};

struct AblationReport {
  std::vector<AblationRow> rows;
  int final_wins = 0;
  int augmented_wins = 0;
  std::vector<std::string> degraded_tracks;
};

AblationReport ablation_report(const std::vector<AblationInput>& rows);
std::string ablation_markdown(const AblationReport& report);
nlohmann::json to_json(const AblationReport& report);

struct BaselineComparison {
  std::string track;
  double organizer = 0.0;
  double inhouse = 0.0;
  /// organizer - inhouse.
  double difference = 0.0;
  /// "organizer", "inhouse" or "tie".
  std::string stronger;
};

/// Per-track comparison in `organizer` key order. Throws TrackMismatch when the
/// two maps cover different tracks.
std::vector<BaselineComparison> baseline_context(const std::map<std::string, double>& organizer,
                                                 const std::map<std::string, double>& inhouse);
std::string baseline_markdown(const std::vector<BaselineComparison>& rows);
nlohmann::json to_json(const BaselineComparison& row);

}  // namespace langsel
