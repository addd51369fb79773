#include "langsel/fragmentation.hpp"

#include <cstdint>

#include "langsel/error.hpp"
#include "langsel/numeric.hpp"

namespace langsel {

void SubwordVocabulary::validate() const {
  if (tokens.empty()) throw EmptyInput("subword vocabulary is empty");
  if (unknown_token_cost == 0) throw RangeError("unknown_token_cost must be positive");
}

namespace {

/// Byte length of a Unicode whitespace sequence starting at `i`, or 0.
std::size_t whitespace_at(std::string_view s, std::size_t i) {
  const auto b = [&](std::size_t k) { return static_cast<std::uint8_t>(s[i + k]); };
  const std::size_t left = s.size() - i;
  const std::uint8_t c = b(0);
  if (c == ' ' || (c >= 0x09 && c <= 0x0D)) return 1;
  if (left >= 2 && c == 0xC2 && (b(1) == 0x85 || b(1) == 0xA0)) return 2;
  if (left >= 3) {
    const std::uint32_t cp = (c << 16) | (b(1) << 8) | b(2);
    if (cp == 0xE19A80) return 3;                     // U+1680
    if (cp >= 0xE28080 && cp <= 0xE2808A) return 3;   // U+2000..U+200A
    if (cp == 0xE280A8 || cp == 0xE280A9) return 3;   // U+2028, U+2029
    if (cp == 0xE280AF || cp == 0xE2819F) return 3;   // U+202F, U+205F
    if (cp == 0xE38080) return 3;                     // U+3000
  }
  return 0;
}

}  // namespace

std::size_t tokenize_word(const SubwordVocabulary& vocab, std::string_view word) {
  if (word.empty()) throw EmptyWord("cannot tokenize an empty word");
  for (std::size_t i = 0; i < word.size(); ++i)
    if (whitespace_at(word, i)) throw RangeError("word contains whitespace: '" + std::string(word) + "'");

  std::size_t pieces = 0;
  std::size_t pos = 0;
  std::string probe;
  while (pos < word.size()) {
    const std::string_view prefix = pos == 0 ? std::string_view() : vocab.continuation_prefix;
    std::size_t match = 0;
    for (std::size_t len = word.size() - pos; len > 0; --len) {
      probe.assign(prefix);
      probe.append(word.substr(pos, len));
      if (vocab.tokens.count(probe)) {
        match = len;
        break;
      }
    }
    if (match == 0) return vocab.unknown_token_cost;
    pos += match;
    ++pieces;
  }
  return pieces;
}

FragmentationReport fragmentation_ratio(std::span<const std::string> corpus,
                                        const WordTokenizer& tokenizer, std::string tokenizer_id,
                                        std::string corpus_id) {
  if (corpus.empty()) throw EmptyCorpus("corpus '" + corpus_id + "' has no words");
  FragmentationReport r{std::move(tokenizer_id), std::move(corpus_id), corpus.size(), 0, 0.0};
  for (const auto& word : corpus) r.subword_count += tokenizer(word);
  r.ratio = static_cast<double>(r.subword_count) / static_cast<double>(r.word_count);
  return r;
}

FragmentationReport fragmentation_from_counts(std::span<const WordCount> counts,
                                              std::string tokenizer_id, std::string corpus_id) {
  if (counts.empty()) throw EmptyCorpus("counts for '" + corpus_id + "' are empty");
  FragmentationReport r{std::move(tokenizer_id), std::move(corpus_id), counts.size(), 0, 0.0};
  for (const auto& c : counts) r.subword_count += c.subwords;
  r.ratio = static_cast<double>(r.subword_count) / static_cast<double>(r.word_count);
  return r;
}

double reduction(double base_ratio, double spec_ratio) {
  if (!(base_ratio > 0.0) || !(spec_ratio > 0.0))
    throw RangeError("fragmentation ratios must be positive");
  return (base_ratio - spec_ratio) / base_ratio * 100.0;
}

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::size_t i = 0;
  std::size_t start = 0;
  while (i < text.size()) {
    if (const std::size_t ws = whitespace_at(text, i)) {
      if (i > start) words.emplace_back(text.substr(start, i - start));
      i += ws;
      start = i;
    } else {
      ++i;
    }
  }
  if (start < text.size()) words.emplace_back(text.substr(start));
  return words;
}

std::string fragmentation_markdown(std::span<const FragmentationRow> rows,
                                   const std::string& generalist_name) {
  std::string md = "| Lang | " + generalist_name + " | Specialist | Reduction |\n|---|---|---|---|\n";
  for (const auto& r : rows) {
    md += "| " + r.language + " | " + fixed(r.generalist_ratio, 2) + " | " +
          fixed(r.specialist_ratio, 2);
    if (!r.specialist_name.empty()) md += " (" + r.specialist_name + ")";
    md += " | " + fixed(reduction(r.generalist_ratio, r.specialist_ratio), 1) + "% |\n";
  }
  return md;
}

nlohmann::json to_json(const FragmentationReport& r) {
  return {{"tokenizer_id", r.tokenizer_id}, {"corpus_id", r.corpus_id},
          {"word_count", r.word_count},     {"subword_count", r.subword_count},
          {"ratio", r.ratio}};
}

nlohmann::json to_json(const FragmentationRow& r) {
  const double pct = reduction(r.generalist_ratio, r.specialist_ratio);
  return {{"language", r.language},
          {"generalist_ratio", r.generalist_ratio},
          {"specialist_ratio", r.specialist_ratio},
          {"specialist", r.specialist_name},
          {"reduction_pct", pct},
          {"reduction_1dp", fixed(pct, 1)}};
}

}  // namespace langsel
