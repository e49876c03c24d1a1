#pragma once

#include "emodyn/corpus.hpp"
#include "emodyn/lexicon.hpp"
#include "emodyn/types.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace emodyn {

struct TokenizeOptions {
  // Emit "." marker tokens at sentence-ending punctuation so negation scoping
  // can stop at sentence boundaries. Off for the plain token stream.
  bool keep_sentence_breaks = false;
};

// Lowercased word tokens in text order. URLs and @-mentions are removed,
// hashtags keep their bare word, punctuation is stripped, and tokens that
// were nothing but punctuation disappear.
std::vector<std::string> tokenize(std::string_view body,
                                  const TokenizeOptions& opts = {});

struct TokenSequence {
  std::vector<std::string> tokens;
  std::string source_post_id;
};

// Per-document raw term counts over the lexicon categories.
struct RawCounts {
  EmotionArray<int> n = EmotionArray<int>::Zero();
  int positive = 0;
  int negative = 0;

  int emotion_total() const { return n.sum(); }
  int valence_total() const { return positive + negative; }
};

// Relative intensity of the basic emotions; has_signal is false when the
// document matched no emotion terms at all.
struct EmotionVector {
  bool has_signal = false;
  EmotionArray<double> rho = EmotionArray<double>::Zero();
};

struct DocumentScore {
  std::string post_id;
  RawCounts raw;
  EmotionVector rho;
  std::optional<double> sentiment;
  std::optional<DyadArray<double>> dyads;
};

inline const std::vector<std::string>& default_negators() {
  static const std::vector<std::string> kNegators = {
      "not",    "no",      "never",   "cannot", "cant",    "dont",
      "wont",   "didnt",   "doesnt",  "isnt",   "arent",   "wasnt",
      "werent", "shouldnt", "wouldnt", "couldnt", "neither", "nor",
      "without", "aint",   "hasnt",   "havent", "hadnt",   "nothing",
      "none"};
  return kNegators;
}

// Negator word list files: one token per line, '#' starts a comment.
std::vector<std::string> load_negators(const std::filesystem::path& path);

// Marks the tokens in scope of a negation: up to `window` tokens after each
// negator, stopping at sentence punctuation. A marked token that matches the
// lexicon is counted with positive/negative swapped and each basic emotion
// replaced by its opposite.
std::vector<unsigned char> apply_negation(const std::vector<std::string>& tokens,
                                          const std::vector<std::string>& negators,
                                          int window);

RawCounts count_terms(const std::vector<std::string>& tokens,
                      const EmotionLexicon& lex);
RawCounts count_terms(const std::vector<std::string>& tokens,
                      const EmotionLexicon& lex,
                      const std::vector<unsigned char>& flips);

// rho = n / sum(n); no-signal when the document matched nothing. With
// shared_denominator the division uses the all-category total instead
// (sensitivity-analysis mode; components then sum below one).
EmotionVector normalize(const RawCounts& raw, bool shared_denominator = false);

// (positive - negative) / (positive + negative); no-signal when no valence
// terms matched.
std::optional<double> sentiment(const RawCounts& raw,
                                bool shared_denominator = false);

// Each dyad is the sum of its two component intensities (or their mean when
// mean_dyads is set; that halves every value and preserves all ranks).
std::optional<DyadArray<double>> derived(const EmotionVector& rho,
                                         const DyadTable& table,
                                         bool mean_dyads = false);

struct ScoreOptions {
  bool negation = false;
  int negation_window = 3;
  std::vector<std::string> negators = default_negators();
  bool shared_denominator = false;
  bool mean_dyads = false;
  DyadTable dyad_table = DyadTable::standard();
};

DocumentScore score_document(const Post& post, const EmotionLexicon& lex,
                             const ScoreOptions& opts = {});

// Parallel map over posts; output order and values are independent of the
// thread count.
std::vector<DocumentScore> score_posts(const std::vector<Post>& posts,
                                       const EmotionLexicon& lex,
                                       const ScoreOptions& opts = {},
                                       int threads = 0);

// Per-post value of a metric; nullopt when the post has no signal for it.
// neg_words is the raw negative-term count and is always defined.
std::optional<double> metric_value(const DocumentScore& score, Metric metric);

}  // namespace emodyn
