#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "json.hpp"

namespace langsel {

/// WordPiece-style vocabulary. Word-initial pieces are stored plain, later
/// pieces carry `continuation_prefix` ("un", "##happi").
struct SubwordVocabulary {
  std::unordered_set<std::string> tokens;
  std::string continuation_prefix = "##";
  std::size_t unknown_token_cost = 1;

  void validate() const;
};

/// Greedy longest-match subword count. A word with any unmatched position
/// costs `unknown_token_cost` as a whole.
std::size_t tokenize_word(const SubwordVocabulary& vocab, std::string_view word);

/// Any word -> subword count function: the built-in tokenizer, a precomputed
/// counts table, or a test double.
using WordTokenizer = std::function<std::size_t(std::string_view)>;

struct FragmentationReport {
  std::string tokenizer_id;
  std::string corpus_id;
  std::size_t word_count = 0;
  std::size_t subword_count = 0;
  /// subword_count / word_count.
  double ratio = 0.0;
};

/// Micro-averaged subwords per word. Throws EmptyCorpus on an empty corpus.
FragmentationReport fragmentation_ratio(std::span<const std::string> corpus,
                                        const WordTokenizer& tokenizer,
                                        std::string tokenizer_id = "tokenizer",
                                        std::string corpus_id = "corpus");

struct WordCount {
  std::string word;
  std::size_t subwords = 0;
};

/// Ratio straight from a precomputed `word,subword_count` table.
FragmentationReport fragmentation_from_counts(std::span<const WordCount> counts,
                                              std::string tokenizer_id, std::string corpus_id);

/// (base - spec) / base * 100. Positive when `spec` fragments less.
double reduction(double base_ratio, double spec_ratio);

/// Splits on Unicode whitespace (UTF-8 input); punctuation stays attached.
std::vector<std::string> split_words(std::string_view text);

struct FragmentationRow {
  std::string language;
  double generalist_ratio = 0.0;
  double specialist_ratio = 0.0;
  std::string specialist_name;
};

std::string fragmentation_markdown(std::span<const FragmentationRow> rows,
                                   const std::string& generalist_name = "XLM-R");
nlohmann::json to_json(const FragmentationReport& report);
nlohmann::json to_json(const FragmentationRow& row);

}  // namespace langsel
