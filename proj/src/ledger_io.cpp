#include "langsel/ledger_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "langsel/csv.hpp"
#include "langsel/error.hpp"

namespace langsel::io {

using nlohmann::json;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
  return ss.str();
}

void write_file(const fs::path& path, std::string_view contents) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
  }
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw IoError("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
}

namespace {

void require_id(const std::string& id, const std::string& source, std::size_t line) {
  if (id.empty()) throw ParseError(source, line, "empty sample id");
}

std::string six_decimals(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

PredictionRun parse_predictions(std::string_view text, const std::string& source,
                                std::string track, std::string model_id, Split split) {
  const csv::Table table = csv::parse(text, source);
  csv::require_header(table, {"id", "prob"}, source);
  if (table.rows.empty()) throw EmptyInput(source + ": no predictions");
  PredictionRun run{std::move(track), std::move(model_id), split, {}};
  for (const auto& row : table.rows) {
    const std::string& id = row.fields[0];
    require_id(id, source, row.line);
    const double p = csv::to_double(row.fields[1], source, row.line, "prob");
    if (!std::isfinite(p) || p < 0.0 || p > 1.0)
      throw RangeError(source + ":" + std::to_string(row.line) + ": probability " + row.fields[1] +
                       " for id '" + id + "' is outside [0, 1]");
    if (run.probs.contains(id))
      throw DuplicateId(source + ":" + std::to_string(row.line) + ": id '" + id + "' repeated");
    run.probs.insert(id, p);
  }
  return run;
}

PredictionRun load_predictions(const fs::path& path, std::string track, std::string model_id,
                               Split split) {
  return parse_predictions(read_file(path), path.string(), std::move(track), std::move(model_id),
                           split);
}

std::string emit_predictions(const PredictionRun& run) {
  std::string out = "id,prob\n";
  for (const auto& [id, p] : run.probs) out += csv::escape(id) + "," + six_decimals(p) + "\n";
  return out;
}

GoldLabels parse_gold(std::string_view text, const std::string& source) {
  const csv::Table table = csv::parse(text, source);
  csv::require_header(table, {"id", "label"}, source);
  if (table.rows.empty()) throw EmptyInput(source + ": no gold labels");
  GoldLabels gold;
  for (const auto& row : table.rows) {
    const std::string& id = row.fields[0];
    require_id(id, source, row.line);
    const std::string& label = row.fields[1];
    if (label != "0" && label != "1")
      throw ParseError(source, row.line, "label '" + label + "' is not 0 or 1");
    if (gold.labels.contains(id))
      throw DuplicateId(source + ":" + std::to_string(row.line) + ": id '" + id + "' repeated");
    gold.labels.insert(id, label == "1" ? Label::Polarized : Label::Neutral);
  }
  return gold;
}

GoldLabels load_gold(const fs::path& path) { return parse_gold(read_file(path), path.string()); }

std::string emit_gold(const GoldLabels& gold) {
  std::string out = "id,label\n";
  for (const auto& [id, label] : gold.labels)
    out += csv::escape(id) + (label == Label::Polarized ? ",1\n" : ",0\n");
  return out;
}

std::string utc_now_iso8601() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json to_json(const MetricReport& r) {
  return {{"counts", {{"tp", r.counts.tp}, {"fp", r.counts.fp}, {"fn", r.counts.fn}, {"tn", r.counts.tn}}},
          {"n", r.n},
          {"accuracy", r.accuracy},
          {"precision_pos", r.precision_pos},
          {"recall_pos", r.recall_pos},
          {"f1_binary", r.f1_binary},
          {"precision_neg", r.precision_neg},
          {"recall_neg", r.recall_neg},
          {"f1_neg", r.f1_neg},
          {"f1_macro", r.f1_macro}};
}

MetricReport metric_report_from_json(const json& j) {
  MetricReport r;
  const json& c = j.at("counts");
  r.counts = {c.at("tp").get<std::size_t>(), c.at("fp").get<std::size_t>(),
              c.at("fn").get<std::size_t>(), c.at("tn").get<std::size_t>()};
  r.n = j.at("n").get<std::size_t>();
  r.accuracy = j.at("accuracy").get<double>();
  r.precision_pos = j.at("precision_pos").get<double>();
  r.recall_pos = j.at("recall_pos").get<double>();
  r.f1_binary = j.at("f1_binary").get<double>();
  r.precision_neg = j.at("precision_neg").get<double>();
  r.recall_neg = j.at("recall_neg").get<double>();
  r.f1_neg = j.at("f1_neg").get<double>();
  r.f1_macro = j.at("f1_macro").get<double>();
  return r;
}

json to_json(const EnsembleConfig& config) {
  json members = json::array();
  for (const auto& m : config.members) members.push_back({{"model_id", m.model_id}, {"weight", m.weight}});
  return {{"members", members}, {"tau", config.tau}};
}

EnsembleConfig ensemble_config_from_json(const json& j) {
  EnsembleConfig config;
  for (const auto& m : j.at("members"))
    config.members.push_back({m.at("model_id").get<std::string>(), m.at("weight").get<double>()});
  config.tau = j.value("tau", 0.5);
  config.validate();
  return config;
}

json to_json(const RunRecord& r) {
  return {{"timestamp", r.timestamp},
          {"track", r.track},
          {"model_id", r.model_id},
          {"split", to_string(r.split)},
          {"config", r.config ? to_json(*r.config) : json(nullptr)},
          {"metrics", to_json(r.metrics)},
          {"provenance", r.provenance}};
}

RunRecord run_record_from_json(const json& j) {
  RunRecord r;
  r.timestamp = j.at("timestamp").get<std::string>();
  r.track = j.at("track").get<std::string>();
  r.model_id = j.at("model_id").get<std::string>();
  r.split = parse_split(j.at("split").get<std::string>());
  if (j.contains("config") && !j.at("config").is_null())
    r.config = ensemble_config_from_json(j.at("config"));
  r.metrics = metric_report_from_json(j.at("metrics"));
  r.provenance = j.value("provenance", json::object());
  if (r.provenance.is_null()) r.provenance = json::object();
  return r;
}

std::string emit_ledger_line(const RunRecord& record) { return to_json(record).dump() + "\n"; }

fs::path resolve_ledger_path(const fs::path& path) {
  if (path.is_absolute()) return path;
  if (const char* root = std::getenv(kLedgerRootEnv); root && *root) return fs::path(root) / path;
  return path;
}

std::vector<RunRecord> read_ledger(const fs::path& path) {
  std::vector<RunRecord> records;
  if (!fs::exists(path)) return records;
  const std::string text = read_file(path);
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.empty()) throw ParseError(path.string(), line_no, "blank ledger line");
    try {
      records.push_back(run_record_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw ParseError(path.string(), line_no, e.what());
    } catch (const Error& e) {
      throw ParseError(path.string(), line_no, e.what());
    }
  }
  return records;
}

void append_ledger(const RunRecord& record, const fs::path& path) {
  if (record.timestamp.empty() || record.track.empty() || record.model_id.empty())
    throw RangeError("ledger record needs timestamp, track and model_id");
  if (record.config) record.config->validate();
  const auto key = std::tie(record.timestamp, record.track, record.model_id, record.split);
  for (const auto& existing : read_ledger(path))
    if (std::tie(existing.timestamp, existing.track, existing.model_id, existing.split) == key)
      throw ConflictError("ledger already holds " + record.track + "/" + record.model_id + "/" +
                          to_string(record.split) + " at " + record.timestamp);

  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory '" + path.parent_path().string() + "'");
  }
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw IoError("cannot open ledger '" + path.string() + "' for append");
  out << emit_ledger_line(record);
  out.flush();
  if (!out) throw IoError("failed appending to ledger '" + path.string() + "'");
}

std::optional<Role> RegistryTrack::role_of(const std::string& model_id) const {
  for (const auto& c : candidates)
    if (c.model_id == model_id) return c.role;
  return std::nullopt;
}

void TrackRegistry::validate() const {
  std::set<std::string> codes;
  for (const auto& t : tracks) {
    if (t.code.empty()) throw RangeError("registry track with empty code");
    if (!codes.insert(t.code).second) throw DuplicateId("registry track '" + t.code + "' repeated");
    int baselines = 0;
    std::set<std::string> ids;
    for (const auto& c : t.candidates) {
      baselines += c.role == Role::Baseline;
      if (!ids.insert(c.model_id).second)
        throw DuplicateModelId("track '" + t.code + "': model '" + c.model_id + "' listed twice");
    }
    if (baselines != 1)
      throw NoBaseline("track '" + t.code + "' needs exactly one baseline, has " +
                       std::to_string(baselines));
    if (t.final_config) t.final_config->validate();
  }
}

const RegistryTrack* TrackRegistry::find(const std::string& code) const {
  for (const auto& t : tracks)
    if (t.code == code) return &t;
  return nullptr;
}

TrackRegistry parse_registry(std::string_view text, const std::string& source) {
  TrackRegistry reg;
  try {
    const json doc = json::parse(text);
    for (const auto& t : doc.at("tracks")) {
      RegistryTrack track;
      track.code = t.at("code").get<std::string>();
      track.language = t.value("language", "");
      track.group = t.value("group", "");
      track.strategy = t.value("strategy", "");
      track.model_details = t.value("model_details", "");
      for (const auto& c : t.at("candidates"))
        track.candidates.push_back({c.at("model_id").get<std::string>(),
                                    parse_role(c.at("role").get<std::string>())});
      if (t.contains("final") && !t.at("final").is_null())
        track.final_config = ensemble_config_from_json(t.at("final"));
      reg.tracks.push_back(std::move(track));
    }
  } catch (const json::exception& e) {
    throw ParseError(source, 0, e.what());
  }
  reg.validate();
  return reg;
}

TrackRegistry load_registry(const fs::path& path) {
  return parse_registry(read_file(path), path.string());
}

std::string emit_registry(const TrackRegistry& registry) {
  json tracks = json::array();
  for (const auto& t : registry.tracks) {
    json candidates = json::array();
    for (const auto& c : t.candidates)
      candidates.push_back({{"model_id", c.model_id}, {"role", to_string(c.role)}});
    tracks.push_back({{"code", t.code},
                      {"language", t.language},
                      {"group", t.group},
                      {"strategy", t.strategy},
                      {"model_details", t.model_details},
                      {"candidates", candidates},
                      {"final", t.final_config ? to_json(*t.final_config) : json(nullptr)}});
  }
  return json{{"tracks", tracks}}.dump(2) + "\n";
}

namespace {

csv::Table load_table(const fs::path& path, const std::vector<std::string>& header,
                      const std::vector<std::string>& optional = {}) {
  csv::Table table = csv::parse(read_file(path), path.string());
  csv::require_header(table, header, path.string(), optional);
  if (table.rows.empty()) throw EmptyInput(path.string() + ": no rows");
  return table;
}

double fraction(const csv::Row& row, std::size_t col, const std::string& source,
                const std::string& name) {
  const double v = csv::to_double(row.fields[col], source, row.line, name);
  if (!std::isfinite(v) || v < 0.0 || v > 1.0)
    throw RangeError(source + ":" + std::to_string(row.line) + ": " + name + " " + row.fields[col] +
                     " is outside [0, 1]");
  return v;
}

}  // namespace

std::vector<LeaderboardEntry> parse_leaderboard(std::string_view text, const std::string& source) {
  csv::Table table = csv::parse(text, source);
  csv::require_header(table, {"track", "our_score", "sota_score"}, source, {"rank"});
  std::vector<LeaderboardEntry> out;
  std::set<std::string> seen;
  for (const auto& row : table.rows) {
    if (!seen.insert(row.fields[0]).second)
      throw DuplicateId(source + ":" + std::to_string(row.line) + ": track repeated");
    std::optional<int> rank;
    if (row.fields.size() > 3 && !row.fields[3].empty()) {
      const long long r = csv::to_integer(row.fields[3], source, row.line, "rank");
      if (r <= 0) throw RangeError(source + ":" + std::to_string(row.line) + ": rank must be positive");
      rank = static_cast<int>(r);
    }
    out.push_back(make_entry(row.fields[0], fraction(row, 1, source, "our_score"),
                             fraction(row, 2, source, "sota_score"), rank));
  }
  return out;
}

std::vector<LeaderboardEntry> load_leaderboard(const fs::path& path) {
  return parse_leaderboard(read_file(path), path.string());
}

std::vector<ShiftInput> load_shift_table(const fs::path& path) {
  const auto table = load_table(path, {"track", "dev_f1", "test_f1"});
  std::vector<ShiftInput> out;
  for (const auto& row : table.rows)
    out.push_back({row.fields[0], fraction(row, 1, path.string(), "dev_f1"),
                   fraction(row, 2, path.string(), "test_f1")});
  return out;
}

std::vector<AblationInput> load_ablation_table(const fs::path& path) {
  const auto table = load_table(path, {"track", "augmented_model", "baseline", "augmented", "final"});
  std::vector<AblationInput> out;
  for (const auto& row : table.rows)
    out.push_back({row.fields[0], row.fields[1], fraction(row, 2, path.string(), "baseline"),
                   fraction(row, 3, path.string(), "augmented"),
                   fraction(row, 4, path.string(), "final")});
  return out;
}

std::map<std::string, double> load_track_scores(const fs::path& path) {
  const auto table = load_table(path, {"track", "score"});
  std::map<std::string, double> out;
  for (const auto& row : table.rows)
    if (!out.emplace(row.fields[0], fraction(row, 1, path.string(), "score")).second)
      throw DuplicateId(path.string() + ":" + std::to_string(row.line) + ": track repeated");
  return out;
}

std::vector<LedgerRow> load_selection_table(const fs::path& path) {
  const auto table = load_table(path, {"track", "architecture", "transition", "baseline", "chosen"});
  std::vector<LedgerRow> out;
  for (const auto& row : table.rows) {
    const Role role = parse_role(row.fields[2]);
    if (role == Role::Baseline)
      throw ParseError(path.string(), row.line, "transition must be specialist, generalist or ensemble");
    out.push_back({row.fields[0], row.fields[1], role, fraction(row, 3, path.string(), "baseline"),
                   fraction(row, 4, path.string(), "chosen")});
  }
  return out;
}

std::vector<FragmentationRow> load_fragmentation_table(const fs::path& path) {
  const auto table =
      load_table(path, {"language", "generalist_ratio", "specialist_ratio", "specialist"});
  std::vector<FragmentationRow> out;
  for (const auto& row : table.rows) {
    const double base = csv::to_double(row.fields[1], path.string(), row.line, "generalist_ratio");
    const double spec = csv::to_double(row.fields[2], path.string(), row.line, "specialist_ratio");
    if (!(base > 0.0) || !(spec > 0.0))
      throw RangeError(path.string() + ":" + std::to_string(row.line) + ": ratios must be positive");
    out.push_back({row.fields[0], base, spec, row.fields[3]});
  }
  return out;
}

std::vector<WordCount> parse_subword_counts(std::string_view text, const std::string& source) {
  const csv::Table table = csv::parse(text, source);
  csv::require_header(table, {"word", "subword_count"}, source);
  if (table.rows.empty()) throw EmptyCorpus(source + ": no words");
  std::vector<WordCount> out;
  for (const auto& row : table.rows) {
    if (row.fields[0].empty()) throw ParseError(source, row.line, "empty word");
    const long long n = csv::to_integer(row.fields[1], source, row.line, "subword_count");
    if (n <= 0) throw RangeError(source + ":" + std::to_string(row.line) + ": subword_count must be positive");
    out.push_back({row.fields[0], static_cast<std::size_t>(n)});
  }
  return out;
}

std::vector<WordCount> load_subword_counts(const fs::path& path) {
  return parse_subword_counts(read_file(path), path.string());
}

SubwordVocabulary load_vocabulary(const fs::path& path, std::string continuation_prefix,
                                  std::size_t unknown_token_cost) {
  SubwordVocabulary vocab;
  vocab.continuation_prefix = std::move(continuation_prefix);
  vocab.unknown_token_cost = unknown_token_cost;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) vocab.tokens.insert(line);
  }
  vocab.validate();
  return vocab;
}

}  // namespace langsel::io
