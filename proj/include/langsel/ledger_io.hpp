#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "langsel/ensemble.hpp"
#include "langsel/fragmentation.hpp"
#include "langsel/leaderboard.hpp"
#include "langsel/metrics.hpp"
#include "langsel/selection.hpp"

namespace langsel::io {

namespace fs = std::filesystem;

/// Environment variable naming the directory that relative ledger paths resolve against.
inline constexpr const char* kLedgerRootEnv = "LANGSEL_LEDGER_ROOT";

std::string read_file(const fs::path& path);
/// Writes via a temporary sibling and rename.
void write_file(const fs::path& path, std::string_view contents);

// Predictions: `id,prob`. Gold: `id,label`.

/// Track, model and split are not stored in the file; the caller supplies them.
PredictionRun parse_predictions(std::string_view text, const std::string& source,
                                std::string track = "", std::string model_id = "",
                                Split split = Split::Dev);
PredictionRun load_predictions(const fs::path& path, std::string track = "",
                               std::string model_id = "", Split split = Split::Dev);
/// Probabilities at 6 decimals, LF line endings.
std::string emit_predictions(const PredictionRun& run);

GoldLabels parse_gold(std::string_view text, const std::string& source);
GoldLabels load_gold(const fs::path& path);
std::string emit_gold(const GoldLabels& gold);

// Development ledger (JSONL).

struct RunRecord {
  std::string timestamp;  // UTC ISO-8601, e.g. 2026-01-31T12:00:00Z
  std::string track;
  std::string model_id;
  Split split = Split::Dev;
  std::optional<EnsembleConfig> config;
  MetricReport metrics;
  /// Free-form metadata (seed, learning rate, ...). Recorded, never interpreted.
  nlohmann::json provenance = nlohmann::json::object();

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

std::string utc_now_iso8601();

nlohmann::json to_json(const MetricReport& report);
MetricReport metric_report_from_json(const nlohmann::json& j);
nlohmann::json to_json(const EnsembleConfig& config);
EnsembleConfig ensemble_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunRecord& record);
RunRecord run_record_from_json(const nlohmann::json& j);

/// One JSON object per line.
std::string emit_ledger_line(const RunRecord& record);

/// Relative paths resolve against $LANGSEL_LEDGER_ROOT when it is set.
fs::path resolve_ledger_path(const fs::path& path);

/// All records in append order; a missing file reads as empty.
std::vector<RunRecord> read_ledger(const fs::path& path);

/// Appends one line. Throws ConflictError, leaving the file untouched, when a
/// record with the same (timestamp, track, model_id, split) already exists.
void append_ledger(const RunRecord& record, const fs::path& path);

// Track registry (single JSON document).

struct RegistryCandidate {
  std::string model_id;
  Role role = Role::Specialist;

  friend bool operator==(const RegistryCandidate&, const RegistryCandidate&) = default;
};

struct RegistryTrack {
  std::string code;
  std::string language;
  std::string group;
  std::string strategy;
  std::string model_details;
  std::vector<RegistryCandidate> candidates;
  /// Final configuration; tau defaults to 0.5 when the document omits it.
  std::optional<EnsembleConfig> final_config;

  std::optional<Role> role_of(const std::string& model_id) const;
  friend bool operator==(const RegistryTrack&, const RegistryTrack&) = default;
};

struct TrackRegistry {
  std::vector<RegistryTrack> tracks;

  /// Unique codes, exactly one baseline per track, valid final configs.
  void validate() const;
  const RegistryTrack* find(const std::string& code) const;
  friend bool operator==(const TrackRegistry&, const TrackRegistry&) = default;
};

TrackRegistry parse_registry(std::string_view text, const std::string& source);
TrackRegistry load_registry(const fs::path& path);
std::string emit_registry(const TrackRegistry& registry);

// Analysis tables (CSV).

/// `track,our_score,sota_score[,rank]`
std::vector<LeaderboardEntry> load_leaderboard(const fs::path& path);
std::vector<LeaderboardEntry> parse_leaderboard(std::string_view text, const std::string& source);

struct ShiftInput {
  std::string track;
  double dev_f1 = 0.0;
  double test_f1 = 0.0;
};
/// `track,dev_f1,test_f1`
std::vector<ShiftInput> load_shift_table(const fs::path& path);

/// `track,augmented_model,baseline,augmented,final`
std::vector<AblationInput> load_ablation_table(const fs::path& path);

/// `track,score`
std::map<std::string, double> load_track_scores(const fs::path& path);

/// `track,architecture,transition,baseline,chosen`
std::vector<LedgerRow> load_selection_table(const fs::path& path);

/// `language,generalist_ratio,specialist_ratio,specialist`
std::vector<FragmentationRow> load_fragmentation_table(const fs::path& path);

/// `word,subword_count`
std::vector<WordCount> load_subword_counts(const fs::path& path);
std::vector<WordCount> parse_subword_counts(std::string_view text, const std::string& source);

/// One token per line, UTF-8.
SubwordVocabulary load_vocabulary(const fs::path& path, std::string continuation_prefix = "##",
                                  std::size_t unknown_token_cost = 1);

}  // namespace langsel::io
