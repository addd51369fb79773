#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "langsel/calibration.hpp"
#include "langsel/csv.hpp"
#include "langsel/diagnostics.hpp"
#include "langsel/ensemble.hpp"
#include "langsel/error.hpp"
#include "langsel/fragmentation.hpp"
#include "langsel/leaderboard.hpp"
#include "langsel/ledger_io.hpp"
#include "langsel/metrics.hpp"
#include "langsel/numeric.hpp"
#include "langsel/selection.hpp"

namespace langsel::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

/// Output flags shared by every subcommand.
struct Output {
  std::string format = "json";
  std::string path;

  void add_to(CLI::App& cmd, std::vector<std::string> formats) {
    cmd.add_option("--format", format, "Output format")
        ->check(CLI::IsMember(formats))
        ->capture_default_str();
    cmd.add_option("--output,-o", path, "Write the output here instead of stdout");
  }

  void emit(std::ostream& out, const std::string& text) const {
    if (path.empty()) {
      out << text;
    } else {
      io::write_file(path, text);
    }
  }
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string stem(const std::string& path) { return fs::path(path).stem().string(); }

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const double v = csv::to_double(item, what, 0, what);
    values.push_back(v);
  }
  if (values.empty()) throw UsageError(what + " is empty");
  return values;
}

// evaluate ------------------------------------------------------------------

struct EvaluateArgs {
  std::string gold;
  std::string pred;
  double tau = 0.5;
  std::string track;
  std::string model;
  std::string split = "dev";
  std::string ledger;
  std::vector<std::string> meta;
  Output output;
};

json parse_meta(const std::vector<std::string>& meta) {
  json provenance = json::object();
  for (const auto& kv : meta) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--meta expects key=value, got '" + kv + "'");
    provenance[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return provenance;
}

void run_evaluate(const EvaluateArgs& a, std::ostream& out) {
  const GoldLabels gold = io::load_gold(a.gold);
  const std::string model = a.model.empty() ? stem(a.pred) : a.model;
  const PredictionRun run = io::load_predictions(a.pred, a.track, model, parse_split(a.split));
  const MetricReport report = metric_report(gold, binarize(run, a.tau));

  if (!a.ledger.empty()) {
    if (a.track.empty()) throw UsageError("--ledger requires --track");
    io::RunRecord record;
    record.timestamp = io::utc_now_iso8601();
    record.track = a.track;
    record.model_id = model;
    record.split = run.split;
    if (a.tau != 0.5) record.config = EnsembleConfig{{{model, 1.0}}, a.tau};
    record.metrics = report;
    record.provenance = parse_meta(a.meta);
    io::append_ledger(record, io::resolve_ledger_path(a.ledger));
  }

  const std::string track = a.track.empty() ? "-" : a.track;
  if (a.output.format == "md") {
    a.output.emit(out, "| Lang | Acc | F1(B) | F1(M) |\n|---|---|---|---|\n| " + track + " | " +
                           fixed(report.accuracy, 3) + " | " + fixed(report.f1_binary, 3) + " | " +
                           fixed(report.f1_macro, 3) + " |\n");
  } else if (a.output.format == "csv") {
    a.output.emit(out, "track,accuracy,f1_binary,f1_macro\n" + csv::escape(track) + "," +
                           fixed(report.accuracy, 6) + "," + fixed(report.f1_binary, 6) + "," +
                           fixed(report.f1_macro, 6) + "\n");
  } else {
    json j = io::to_json(report);
    j["track"] = a.track;
    j["model_id"] = model;
    j["tau"] = a.tau;
    a.output.emit(out, dump(j));
  }
}

// ensemble ------------------------------------------------------------------

struct EnsembleArgs {
  std::vector<std::string> preds;
  std::vector<double> weights;
  std::string gold;
  double tau = 0.5;
  std::string track;
  std::string split = "dev";
  std::string out_probs;
  Output output;
};

std::vector<PredictionRun> load_members(const std::vector<std::string>& paths, const std::string& track,
                                        Split split) {
  std::vector<PredictionRun> runs;
  for (const auto& p : paths) runs.push_back(io::load_predictions(p, track, stem(p), split));
  return runs;
}

void run_ensemble(const EnsembleArgs& a, std::ostream& out) {
  const auto members = load_members(a.preds, a.track, parse_split(a.split));
  const PredictionRun mixed = a.weights.empty() ? uniform_vote(members) : soft_vote(members, a.weights);
  if (!a.out_probs.empty()) io::write_file(a.out_probs, io::emit_predictions(mixed));

  json j = {{"model_id", mixed.model_id}, {"n", mixed.probs.size()}, {"tau", a.tau}};
  if (!a.gold.empty()) j["metrics"] = io::to_json(metric_report(io::load_gold(a.gold), binarize(mixed, a.tau)));
  if (a.output.format == "csv") {
    a.output.emit(out, io::emit_predictions(mixed));
  } else {
    a.output.emit(out, dump(j));
  }
}

// tune ----------------------------------------------------------------------

struct TuneArgs {
  std::string gold;
  std::string pred;
  std::string spec;
  std::string gen;
  std::vector<std::string> members;
  std::vector<std::string> weight_sets;
  std::string alpha_grid;
  std::string tau_grid;
  unsigned threads = 1;
  std::string surface;
  std::string track;
  Output output;
};

void run_tune(const TuneArgs& a, std::ostream& out) {
  const int modes = !a.pred.empty() + (!a.spec.empty() || !a.gen.empty()) + !a.members.empty();
  if (modes != 1) throw UsageError("use exactly one of --pred, --spec/--gen, or --member");
  if (a.spec.empty() != a.gen.empty())
    throw UsageError("--spec and --gen go together");

  const GoldLabels gold = io::load_gold(a.gold);
  SearchGrid grid = SearchGrid::defaults();
  if (!a.alpha_grid.empty()) grid.alpha_values = parse_list(a.alpha_grid, "--alpha-grid");
  if (!a.tau_grid.empty()) grid.tau_values = parse_list(a.tau_grid, "--tau-grid");

  SearchResult result;
  if (!a.pred.empty()) {
    const auto run = io::load_predictions(a.pred, a.track, stem(a.pred), Split::Dev);
    result = tune_threshold(gold, run, grid.tau_values, a.threads);
  } else if (!a.spec.empty()) {
    const auto spec = io::load_predictions(a.spec, a.track, stem(a.spec), Split::Dev);
    const auto gen = io::load_predictions(a.gen, a.track, stem(a.gen), Split::Dev);
    result = tune_pair(gold, spec, gen, grid, a.threads);
  } else {
    const auto runs = load_members(a.members, a.track, Split::Dev);
    std::vector<std::vector<double>> sets;
    for (const auto& w : a.weight_sets) sets.push_back(parse_list(w, "--weights"));
    result = tune_weights(gold, runs, sets, grid.tau_values, a.threads);
  }

  if (!a.surface.empty()) io::write_file(a.surface, surface_csv(result));
  if (a.output.format == "csv") {
    a.output.emit(out, surface_csv(result));
    return;
  }
  const SurfaceCell* best = nullptr;
  for (const auto& cell : result.full_surface)
    if (!best || preferred(cell, *best)) best = &cell;
  json j = {{"best_alpha", best->alpha},
            {"best_tau", result.best_config.tau},
            {"best_config", io::to_json(result.best_config)},
            {"best_dev_report", io::to_json(result.best_dev_report)},
            {"cells", result.full_surface.size()},
            {"grid", (a.alpha_grid.empty() && a.tau_grid.empty()) ? "default" : "custom"}};
  if (a.output.format == "md") {
    std::string md = "| Members | Weights | tau | Macro F1 |\n|---|---|---|---|\n| ";
    std::string names;
    std::string weights;
    for (const auto& m : result.best_config.members) {
      names += (names.empty() ? "" : " + ") + m.model_id;
      weights += (weights.empty() ? "" : "/") + fixed(m.weight * 100.0, 0);
    }
    md += names + " | " + weights + " | " + fixed(result.best_config.tau, 2) + " | " +
          fixed(result.best_dev_report.f1_macro, 4) + " |\n";
    a.output.emit(out, md);
  } else {
    a.output.emit(out, dump(j));
  }
}

// select --------------------------------------------------------------------

struct SelectArgs {
  std::string replay;
  std::string gold;
  std::vector<std::string> candidates;
  double tau = 0.5;
  std::string track;
  SelectionPolicy policy;
  Output output;
};

void run_select(const SelectArgs& a, std::ostream& out) {
  if (!a.replay.empty()) {
    if (!a.candidates.empty()) throw UsageError("--replay cannot be combined with --candidate");
    const auto rows = ledger_replay(io::load_selection_table(a.replay), a.policy.min_gain);
    if (a.output.format == "md") {
      a.output.emit(out, replay_markdown(rows));
    } else {
      json j = json::array();
      for (const auto& r : rows) j.push_back(to_json(r));
      a.output.emit(out, dump(j));
    }
    return;
  }
  if (a.gold.empty() || a.candidates.empty())
    throw UsageError("select needs --replay, or --gold with one or more --candidate");
  const GoldLabels gold = io::load_gold(a.gold);
  std::vector<CandidateEvaluation> evals;
  for (const auto& spec : a.candidates) {
    // role:model_id=path
    const auto colon = spec.find(':');
    const auto eq = spec.find('=', colon == std::string::npos ? 0 : colon);
    if (colon == std::string::npos || eq == std::string::npos)
      throw UsageError("--candidate expects role:model_id=path, got '" + spec + "'");
    const Role role = parse_role(spec.substr(0, colon));
    const std::string model = spec.substr(colon + 1, eq - colon - 1);
    const auto run = io::load_predictions(spec.substr(eq + 1), a.track, model, Split::Dev);
    evals.push_back({model, role, metric_report(gold, binarize(run, a.tau))});
  }
  const SelectionDecision d = decide(a.track, evals, a.policy);
  if (a.output.format == "md") {
    a.output.emit(out, decisions_markdown({d}));
  } else {
    a.output.emit(out, dump(to_json(d)));
  }
}

// shift ---------------------------------------------------------------------

struct ShiftArgs {
  std::string table;
  std::vector<std::string> skews;
  double skew_tau = 0.5;
  double stable_band = 0.02;
  CollapseThresholds collapse;
  Output output;
};

void run_shift(const ShiftArgs& a, std::ostream& out) {
  std::map<std::string, SkewReport> skews;
  for (const auto& spec : a.skews) {
    // track:gold.csv:pred.csv
    const auto c1 = spec.find(':');
    const auto c2 = c1 == std::string::npos ? c1 : spec.find(':', c1 + 1);
    if (c2 == std::string::npos) throw UsageError("--skew expects track:gold.csv:pred.csv, got '" + spec + "'");
    const std::string track = spec.substr(0, c1);
    const GoldLabels gold = io::load_gold(spec.substr(c1 + 1, c2 - c1 - 1));
    const auto run = io::load_predictions(spec.substr(c2 + 1), track, track, Split::Test);
    skews[track] = prediction_skew(binarize(run, a.skew_tau), gold, a.collapse);
  }
  std::vector<ShiftRecord> records;
  for (const auto& row : io::load_shift_table(a.table)) {
    std::optional<SkewReport> skew;
    if (auto it = skews.find(row.track); it != skews.end()) skew = it->second;
    records.push_back(make_shift_record(row.track, row.dev_f1, row.test_f1, skew, a.stable_band));
  }
  if (a.output.format == "md") {
    a.output.emit(out, shift_markdown(records));
  } else {
    json j = json::array();
    for (const auto& r : records) {
      json item = to_json(r);
      if (auto it = skews.find(r.track); it != skews.end()) item["skew"] = to_json(it->second);
      j.push_back(item);
    }
    a.output.emit(out, dump(j));
  }
}

// leaderboard ---------------------------------------------------------------

struct LeaderboardArgs {
  std::string scores;
  double window = -0.04;
  double cutoff = -0.05;
  std::string organizer;
  std::string inhouse;
  Output output;
};

void run_leaderboard(const LeaderboardArgs& a, std::ostream& out) {
  if (a.organizer.empty() != a.inhouse.empty())
    throw UsageError("--organizer and --inhouse go together");
  std::vector<LeaderboardEntry> entries;
  if (!a.scores.empty()) entries = io::load_leaderboard(a.scores);
  else if (a.organizer.empty()) throw UsageError("leaderboard needs --scores and/or --organizer/--inhouse");

  std::vector<BaselineComparison> context;
  if (!a.organizer.empty())
    context = baseline_context(io::load_track_scores(a.organizer), io::load_track_scores(a.inhouse));

  const auto window = proximity_window(entries, a.window);
  const auto challenge = challenge_tracks(entries, a.cutoff);
  const auto middle = mid_band(entries, a.window, a.cutoff);

  if (a.output.format == "md") {
    std::string md;
    if (!a.scores.empty()) {
      md += "## Within " + fixed(-a.window * 100.0, 0) + " points of SOTA (delta >= " +
            signed_fixed(a.window, 2) + "): " + std::to_string(window.size()) + " of " +
            std::to_string(entries.size()) + " tracks\n\n" + window_markdown(window);
      md += "\n## Challenge tracks (delta < " + signed_fixed(a.cutoff, 2) + "): " +
            std::to_string(challenge.size()) + "\n\n" + challenge_markdown(challenge);
      md += "\n## Mid-band: " + std::to_string(middle.size()) + "\n\n" + challenge_markdown(middle);
    }
    if (!context.empty()) md += (md.empty() ? "" : "\n") + std::string("## Baseline context\n\n") + baseline_markdown(context);
    a.output.emit(out, md);
    return;
  }
  auto list = [](const std::vector<LeaderboardEntry>& v) {
    json arr = json::array();
    for (const auto& e : v) arr.push_back(to_json(e));
    return arr;
  };
  json j = {{"window_floor", a.window}, {"challenge_cutoff", a.cutoff}, {"total", entries.size()},
            {"window", list(window)},   {"challenge", list(challenge)}, {"mid_band", list(middle)}};
  if (!context.empty()) {
    json arr = json::array();
    for (const auto& r : context) arr.push_back(to_json(r));
    j["baseline_context"] = arr;
  }
  a.output.emit(out, dump(j));
}

// frag ----------------------------------------------------------------------

struct FragArgs {
  std::string table;
  std::string corpus;
  std::vector<std::string> vocabs;
  std::vector<std::string> counts;
  std::string prefix = "##";
  std::size_t unk_cost = 1;
  std::string md_out;
  Output output;
};

void run_frag(const FragArgs& a, std::ostream& out) {
  json j = json::object();
  std::string md;
  if (!a.table.empty()) {
    const auto rows = io::load_fragmentation_table(a.table);
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    j["table"] = arr;
    md += fragmentation_markdown(rows);
  }

  std::vector<FragmentationReport> reports;
  if (!a.vocabs.empty()) {
    if (a.corpus.empty()) throw UsageError("--vocab needs --corpus");
    const std::string text = io::read_file(a.corpus);
    const auto words = split_words(text);
    for (const auto& path : a.vocabs) {
      const auto vocab = io::load_vocabulary(path, a.prefix, a.unk_cost);
      reports.push_back(fragmentation_ratio(
          words, [&vocab](std::string_view w) { return tokenize_word(vocab, w); }, stem(path),
          stem(a.corpus)));
    }
  }
  for (const auto& path : a.counts) {
    const auto counts = io::load_subword_counts(path);
    reports.push_back(fragmentation_from_counts(counts, stem(path), a.corpus.empty() ? "counts" : stem(a.corpus)));
  }
  if (a.table.empty() && reports.empty()) throw UsageError("frag needs --table, --vocab or --counts");

  if (!reports.empty()) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    j["tokenizers"] = arr;
    md += (md.empty() ? "" : "\n") + std::string("| Tokenizer | Words | Subwords | Ratio |\n|---|---|---|---|\n");
    for (const auto& r : reports)
      md += "| " + r.tokenizer_id + " | " + std::to_string(r.word_count) + " | " +
            std::to_string(r.subword_count) + " | " + fixed(r.ratio, 4) + " |\n";
    if (reports.size() >= 2) {
      const double pct = reduction(reports[0].ratio, reports[1].ratio);
      j["reduction_pct"] = pct;
      md += "\nReduction (" + reports[0].tokenizer_id + " -> " + reports[1].tokenizer_id + "): " +
            fixed(pct, 1) + "%\n";
    }
  }
  if (!a.md_out.empty()) io::write_file(a.md_out, md);
  a.output.emit(out, a.output.format == "md" ? md : dump(j));
}

// ablation ------------------------------------------------------------------

struct AblationArgs {
  std::string table;
  Output output;
};

void run_ablation(const AblationArgs& a, std::ostream& out) {
  const auto report = ablation_report(io::load_ablation_table(a.table));
  a.output.emit(out, a.output.format == "md" ? ablation_markdown(report) : dump(to_json(report)));
}

// report --------------------------------------------------------------------

struct ReportArgs {
  std::string ledger;
  std::string registry;
  std::string out_dir;
  SelectionPolicy policy;
  double stable_band = 0.02;
  Output output;
};

std::string registry_markdown(const io::TrackRegistry& reg) {
  std::string md = "| Lang | Code | Strategy | Model Details | Weights & tau |\n|---|---|---|---|---|\n";
  std::string group;
  for (const auto& t : reg.tracks) {
    if (!t.group.empty() && t.group != group) {
      group = t.group;
      md += "| *" + group + "* | | | | |\n";
    }
    std::string cfg = "-";
    if (t.final_config) {
      std::string weights;
      if (t.final_config->members.size() > 1)
        for (const auto& m : t.final_config->members)
          weights += (weights.empty() ? "" : "/") + fixed(m.weight * 100.0, 0);
      const bool custom_tau = snap(t.final_config->tau) != 0.5;
      if (!weights.empty() || custom_tau)
        cfg = weights + (custom_tau ? (weights.empty() ? "" : ", ") + std::string("tau=") + fixed(t.final_config->tau, 2) : "");
    }
    md += "| " + t.language + " | " + t.code + " | " + t.strategy + " | " + t.model_details + " | " + cfg + " |\n";
  }
  return md;
}

void run_report(const ReportArgs& a, std::ostream& out) {
  const auto records = io::read_ledger(io::resolve_ledger_path(a.ledger));
  const auto reg = io::load_registry(a.registry);

  // Latest record per (track, model, split) wins; the ledger is append-only.
  std::map<std::string, std::map<std::string, io::RunRecord>> dev;
  std::map<std::string, io::RunRecord> test;
  for (const auto& r : records) {
    if (r.split == Split::Dev) dev[r.track][r.model_id] = r;
    else test[r.track] = r;
  }

  std::vector<SelectionDecision> decisions;
  std::vector<ShiftRecord> shifts;
  json j = {{"records", records.size()}};
  json decisions_json = json::array();
  for (const auto& t : reg.tracks) {
    auto it = dev.find(t.code);
    if (it == dev.end()) continue;
    std::vector<CandidateEvaluation> evals;
    for (const auto& [model, rec] : it->second) {
      auto role = t.role_of(model);
      if (!role) role = rec.config && rec.config->members.size() > 1 ? Role::Ensemble : Role::Specialist;
      evals.push_back({model, *role, rec.metrics});
    }
    const bool has_baseline = std::any_of(evals.begin(), evals.end(),
                                          [](const auto& e) { return e.role == Role::Baseline; });
    if (!has_baseline) continue;
    decisions.push_back(decide(t.code, evals, a.policy));
    decisions_json.push_back(to_json(decisions.back()));

    if (auto tt = test.find(t.code); tt != test.end()) {
      auto dv = it->second.find(tt->second.model_id);
      if (dv != it->second.end())
        shifts.push_back(make_shift_record(t.code, dv->second.metrics.f1_macro,
                                           tt->second.metrics.f1_macro, std::nullopt, a.stable_band));
    }
  }

  std::string results = "| Lang | Acc | F1(B) | F1(M) |\n|---|---|---|---|\n";
  json results_json = json::array();
  for (const auto& [track, r] : test) {
    results += "| " + track + " | " + fixed(r.metrics.accuracy, 3) + " | " + fixed(r.metrics.f1_binary, 3) +
               " | " + fixed(r.metrics.f1_macro, 3) + " |\n";
    results_json.push_back({{"track", track}, {"model_id", r.model_id}, {"metrics", io::to_json(r.metrics)}});
  }

  json shifts_json = json::array();
  for (const auto& s : shifts) shifts_json.push_back(to_json(s));
  j["decisions"] = decisions_json;
  j["test_results"] = results_json;
  j["shifts"] = shifts_json;

  const std::map<std::string, std::string> files = {
      {"configuration.md", registry_markdown(reg)},
      {"test_results.md", results},
      {"selection.md", decisions_markdown(decisions)},
      {"shift.md", shift_markdown(shifts)},
  };
  if (!a.out_dir.empty()) {
    for (const auto& [name, text] : files) io::write_file(fs::path(a.out_dir) / name, text);
    io::write_file(fs::path(a.out_dir) / "report.json", dump(j));
  }
  if (a.output.format == "md") {
    std::string md;
    const std::pair<const char*, const char*> order[] = {{"configuration.md", "Final system configuration"},
                                                         {"test_results.md", "Test results"},
                                                         {"selection.md", "Architecture selection"},
                                                         {"shift.md", "Dev-test shift"}};
    for (const auto& [name, title] : order) md += std::string(md.empty() ? "" : "\n") + "## " + title + "\n\n" + files.at(name);
    a.output.emit(out, md);
  } else {
    a.output.emit(out, dump(j));
  }
}

void add_policy_flags(CLI::App& cmd, SelectionPolicy& policy) {
  cmd.add_option("--min-gain", policy.min_gain, "Minimum dev macro-F1 gain to adopt a candidate")
      ->capture_default_str();
  cmd.add_option("--balance-tolerance", policy.balance_tolerance,
                 "Balance clause: max macro-F1 shortfall vs baseline")
      ->capture_default_str();
  cmd.add_option("--balance-improvement", policy.balance_improvement,
                 "Balance clause: required |P-R| reduction")
      ->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Model selection, ensemble calibration and leaderboard analytics over prediction files", "langsel"};
  app.require_subcommand(1);

  EvaluateArgs ev;
  auto* evaluate = app.add_subcommand("evaluate", "Accuracy, binary F1 and macro F1 for one prediction file");
  evaluate->add_option("--gold", ev.gold, "Gold labels CSV (id,label)")->required();
  evaluate->add_option("--pred", ev.pred, "Predictions CSV (id,prob)")->required();
  evaluate->add_option("--tau", ev.tau, "Decision threshold")->capture_default_str();
  evaluate->add_option("--track", ev.track, "Language code");
  evaluate->add_option("--model", ev.model, "Model id (default: prediction file stem)");
  evaluate->add_option("--split", ev.split, "dev or test")->check(CLI::IsMember({"dev", "test"}))->capture_default_str();
  evaluate->add_option("--ledger", ev.ledger, "Append the result to this JSONL ledger");
  evaluate->add_option("--meta", ev.meta, "Provenance key=value recorded in the ledger (repeatable)");
  ev.output.add_to(*evaluate, {"json", "md", "csv"});

  EnsembleArgs en;
  auto* ensemble = app.add_subcommand("ensemble", "Weighted soft voting over prediction files");
  ensemble->add_option("--pred", en.preds, "Member predictions CSV (repeatable, in weight order)")->required();
  ensemble->add_option("--weight", en.weights, "Member weight (repeatable; default uniform)");
  ensemble->add_option("--gold", en.gold, "Score the mixture against these labels");
  ensemble->add_option("--tau", en.tau, "Decision threshold for scoring")->capture_default_str();
  ensemble->add_option("--track", en.track, "Language code");
  ensemble->add_option("--split", en.split, "dev or test")->check(CLI::IsMember({"dev", "test"}))->capture_default_str();
  ensemble->add_option("--out-probs", en.out_probs, "Write mixed probabilities CSV here");
  en.output.add_to(*ensemble, {"json", "csv"});

  TuneArgs tu;
  auto* tune = app.add_subcommand("tune", "Grid search over weights and thresholds on dev");
  tune->add_option("--gold", tu.gold, "Dev gold labels CSV")->required();
  tune->add_option("--pred", tu.pred, "Single run: tune tau only");
  tune->add_option("--spec", tu.spec, "Specialist predictions (weight alpha)");
  tune->add_option("--gen", tu.gen, "Generalist predictions (weight 1 - alpha)");
  tune->add_option("--member", tu.members, "k-member ensemble prediction file (repeatable)");
  tune->add_option("--weights", tu.weight_sets, "Comma-separated weight vector for --member (repeatable)");
  tune->add_option("--alpha-grid", tu.alpha_grid, "Comma-separated alphas (default 0.00..1.00 step 0.05)");
  tune->add_option("--tau-grid", tu.tau_grid, "Comma-separated taus (default 0.30..0.70 step 0.05)");
  tune->add_option("--threads", tu.threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  tune->add_option("--surface", tu.surface, "Write the alpha,tau,macro_f1 surface CSV here");
  tune->add_option("--track", tu.track, "Language code");
  tu.output.add_to(*tune, {"json", "md", "csv"});

  SelectArgs se;
  auto* select = app.add_subcommand("select", "Apply the architecture selection rule");
  select->add_option("--replay", se.replay, "Selection table CSV (track,architecture,transition,baseline,chosen)");
  select->add_option("--gold", se.gold, "Dev gold labels CSV");
  select->add_option("--candidate", se.candidates, "role:model_id=predictions.csv (repeatable)");
  select->add_option("--tau", se.tau, "Decision threshold for candidates")->capture_default_str();
  select->add_option("--track", se.track, "Language code");
  add_policy_flags(*select, se.policy);
  se.output.add_to(*select, {"json", "md"});

  ShiftArgs sh;
  auto* shift = app.add_subcommand("shift", "Dev-test shift groups with collapse detection");
  shift->add_option("--table", sh.table, "Shift table CSV (track,dev_f1,test_f1)")->required();
  shift->add_option("--skew", sh.skews, "track:gold.csv:pred.csv test predictions for skew checks (repeatable)");
  shift->add_option("--skew-tau", sh.skew_tau, "Threshold applied to --skew predictions")->capture_default_str();
  shift->add_option("--stable-band", sh.stable_band, "Half-width of the stable band")->capture_default_str();
  shift->add_option("--collapse-rate", sh.collapse.min_positive_rate, "Positive-rate floor for collapse")->capture_default_str();
  shift->add_option("--neutral-recall-max", sh.collapse.max_neutral_recall, "Neutral recall ceiling for collapse")->capture_default_str();
  sh.output.add_to(*shift, {"json", "md"});

  LeaderboardArgs lb;
  auto* leaderboard = app.add_subcommand("leaderboard", "SOTA gaps, proximity window, challenge tracks, baseline context");
  leaderboard->add_option("--scores", lb.scores, "Leaderboard CSV (track,our_score,sota_score[,rank])");
  leaderboard->add_option("--window", lb.window, "Proximity floor (inclusive)")->capture_default_str();
  leaderboard->add_option("--cutoff", lb.cutoff, "Challenge cutoff (strict)")->capture_default_str();
  leaderboard->add_option("--organizer", lb.organizer, "Organizer baseline CSV (track,score)");
  leaderboard->add_option("--inhouse", lb.inhouse, "In-house baseline CSV (track,score)");
  lb.output.add_to(*leaderboard, {"json", "md"});

  FragArgs fr;
  auto* frag = app.add_subcommand("frag", "Tokenizer fragmentation ratios and reductions");
  frag->add_option("--table", fr.table, "Ratio table CSV (language,generalist_ratio,specialist_ratio,specialist)");
  frag->add_option("--corpus", fr.corpus, "Whitespace-segmented corpus (UTF-8)");
  frag->add_option("--vocab", fr.vocabs, "Subword vocabulary, one token per line (repeatable)");
  frag->add_option("--counts", fr.counts, "Precomputed word,subword_count CSV (repeatable)");
  frag->add_option("--continuation-prefix", fr.prefix, "Continuation marker in --vocab files")->capture_default_str();
  frag->add_option("--unk-cost", fr.unk_cost, "Subwords charged for an untokenizable word")->check(CLI::PositiveNumber)->capture_default_str();
  frag->add_option("--md-out", fr.md_out, "Also write the Markdown report here");
  fr.output.add_to(*frag, {"json", "md"});

  AblationArgs ab;
  auto* ablation = app.add_subcommand("ablation", "Translation ablation winners and degradations");
  ablation->add_option("--table", ab.table, "Ablation CSV (track,augmented_model,baseline,augmented,final)")->required();
  ab.output.add_to(*ablation, {"json", "md"});

  ReportArgs rp;
  auto* report = app.add_subcommand("report", "Regenerate Markdown tables from the ledger and registry");
  report->add_option("--ledger", rp.ledger, "Development ledger (JSONL)")->required();
  report->add_option("--registry", rp.registry, "Track registry (JSON)")->required();
  report->add_option("--out-dir", rp.out_dir, "Write one Markdown file per table plus report.json here");
  report->add_option("--stable-band", rp.stable_band, "Half-width of the stable band")->capture_default_str();
  add_policy_flags(*report, rp.policy);
  rp.output.add_to(*report, {"json", "md"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*evaluate) run_evaluate(ev, out);
    else if (*ensemble) run_ensemble(en, out);
    else if (*tune) run_tune(tu, out);
    else if (*select) run_select(se, out);
    else if (*shift) run_shift(sh, out);
    else if (*leaderboard) run_leaderboard(lb, out);
    else if (*frag) run_frag(fr, out);
    else if (*ablation) run_ablation(ab, out);
    else if (*report) run_report(rp, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::Usage: return kExitUsage;
      case ErrorKind::Io: return kExitIo;
      case ErrorKind::Validation: return kExitValidation;
    }
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace langsel::cli
