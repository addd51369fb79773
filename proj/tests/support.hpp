#pragma once

#include <array>
#include <atomic>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "langsel/metrics.hpp"

namespace langsel::testing {

inline std::string sample_id(std::size_t i) { return "s" + std::to_string(i); }

inline GoldLabels make_gold(const std::vector<int>& labels) {
  GoldLabels gold;
  for (std::size_t i = 0; i < labels.size(); ++i)
    gold.labels.insert(sample_id(i), labels[i] ? Label::Polarized : Label::Neutral);
  return gold;
}

inline Labels make_labels(const std::vector<int>& labels) { return make_gold(labels).labels; }

inline PredictionRun make_run(const std::vector<double>& probs, std::string model = "m",
                              std::string track = "xx", Split split = Split::Dev) {
  PredictionRun run{std::move(track), std::move(model), split, {}};
  for (std::size_t i = 0; i < probs.size(); ++i) run.probs.insert(sample_id(i), probs[i]);
  return run;
}

/// Brute-force recount: walks samples one at a time, tallying a 2x2 table
/// indexed [gold][pred], then derives each class's P/R/F1 independently.
struct OracleMetrics {
  double accuracy;
  std::array<double, 2> precision;  // index 0 neutral, 1 polarized
  std::array<double, 2> recall;
  std::array<double, 2> f1;
  double macro_f1;
};

inline OracleMetrics oracle_metrics(const std::vector<int>& gold, const std::vector<int>& pred) {
  long table[2][2] = {{0, 0}, {0, 0}};
  for (std::size_t i = 0; i < gold.size(); ++i) table[gold[i]][pred[i]] += 1;
  OracleMetrics m{};
  long correct = 0;
  for (int c = 0; c < 2; ++c) {
    correct += table[c][c];
    const long predicted = table[0][c] + table[1][c];
    const long actual = table[c][0] + table[c][1];
    m.precision[c] = predicted ? double(table[c][c]) / double(predicted) : 0.0;
    m.recall[c] = actual ? double(table[c][c]) / double(actual) : 0.0;
    const double s = m.precision[c] + m.recall[c];
    m.f1[c] = s > 0 ? 2 * m.precision[c] * m.recall[c] / s : 0.0;
  }
  m.accuracy = double(correct) / double(gold.size());
  m.macro_f1 = 0.5 * (m.f1[0] + m.f1[1]);
  return m;
}

/// Random labels of length n with a random class balance.
inline std::vector<int> random_labels(std::mt19937_64& rng, std::size_t n) {
  std::bernoulli_distribution coin(std::uniform_real_distribution<double>(0.05, 0.95)(rng));
  std::vector<int> out(n);
  for (auto& v : out) v = coin(rng);
  return out;
}

inline std::vector<double> random_probs(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> out(n);
  for (auto& v : out) v = u(rng);
  return out;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("langsel_test_" + std::to_string(std::random_device{}()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace langsel::testing
