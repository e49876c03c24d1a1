#include "emodyn/affect.hpp"

#include "emodyn/text.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <thread>
#include <unordered_set>

namespace emodyn {

namespace {

bool is_url(std::string_view raw) {
  const std::string lower = to_lower_ascii(raw.substr(0, 8));
  return lower.rfind("http://", 0) == 0 || lower.rfind("https://", 0) == 0 ||
         lower.rfind("www.", 0) == 0;
}

bool has_sentence_punct(std::string_view raw) {
  return raw.find_first_of(".!?") != std::string_view::npos;
}

bool is_sentence_break(std::string_view token) {
  return token == "." || token == "!" || token == "?";
}

}  // namespace

std::vector<std::string> tokenize(std::string_view body,
                                  const TokenizeOptions& opts) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < body.size()) {
    while (i < body.size() &&
           std::isspace(static_cast<unsigned char>(body[i])))
      ++i;
    std::size_t j = i;
    while (j < body.size() &&
           !std::isspace(static_cast<unsigned char>(body[j])))
      ++j;
    if (j == i) break;
    const std::string_view raw = body.substr(i, j - i);
    i = j;

    if (is_url(raw)) continue;
    if (raw.front() == '@') continue;

    std::string word;
    word.reserve(raw.size());
    for (char c : raw) {
      if (static_cast<unsigned char>(c) < 0x80 && is_ascii_punct(c)) continue;
      word.push_back(static_cast<char>(
          std::tolower(static_cast<unsigned char>(c))));
    }
    if (!word.empty()) tokens.push_back(std::move(word));
    if (opts.keep_sentence_breaks && has_sentence_punct(raw))
      tokens.emplace_back(".");
  }
  return tokens;
}

std::vector<std::string> load_negators(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot open negator list: " + path.string());
  std::vector<std::string> negators;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string_view t = trim(line);
    if (!t.empty()) negators.push_back(to_lower_ascii(t));
  }
  return negators;
}

std::vector<unsigned char> apply_negation(
    const std::vector<std::string>& tokens,
    const std::vector<std::string>& negators, int window) {
  std::vector<unsigned char> flips(tokens.size(), 0);
  const std::unordered_set<std::string_view> negset(negators.begin(),
                                                    negators.end());
  int remaining = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (is_sentence_break(tokens[i])) {
      remaining = 0;
      continue;
    }
    if (negset.count(tokens[i])) {
      remaining = window;  // a fresh negator restarts the scope
      continue;
    }
    if (remaining > 0) {
      flips[i] = 1;
      --remaining;
    }
  }
  return flips;
}

namespace {

void add_mask(RawCounts& counts, std::uint16_t mask, bool flipped) {
  for (int i = 0; i < kNumEmotions; ++i) {
    if (!(mask & (1u << i))) continue;
    const Emotion e = static_cast<Emotion>(i);
    ++counts.n[static_cast<int>(flipped ? opposite(e) : e)];
  }
  const bool pos = mask & category_bit(Category::positive);
  const bool neg = mask & category_bit(Category::negative);
  if (pos) ++(flipped ? counts.negative : counts.positive);
  if (neg) ++(flipped ? counts.positive : counts.negative);
}

RawCounts count_impl(const std::vector<std::string>& tokens,
                     const EmotionLexicon& lex,
                     const std::vector<unsigned char>* flips) {
  RawCounts counts;
  const int max_words = std::max(1, lex.max_phrase_words);
  std::string phrase;
  std::size_t i = 0;
  while (i < tokens.size()) {
    // Greedy longest match starting at token i.
    int matched_len = 0;
    std::uint16_t matched_mask = 0;
    phrase.clear();
    for (int len = 1; len <= max_words &&
                      i + static_cast<std::size_t>(len) <= tokens.size();
         ++len) {
      if (len > 1) phrase.push_back(' ');
      phrase += tokens[i + static_cast<std::size_t>(len) - 1];
      const auto it = lex.entries.find(phrase);
      if (it != lex.entries.end()) {
        matched_len = len;
        matched_mask = it->second;
      }
    }
    if (matched_len > 0) {
      const bool flipped = flips != nullptr && (*flips)[i] != 0;
      add_mask(counts, matched_mask, flipped);
      i += static_cast<std::size_t>(matched_len);
    } else {
      ++i;
    }
  }
  return counts;
}

}  // namespace

RawCounts count_terms(const std::vector<std::string>& tokens,
                      const EmotionLexicon& lex) {
  return count_impl(tokens, lex, nullptr);
}

RawCounts count_terms(const std::vector<std::string>& tokens,
                      const EmotionLexicon& lex,
                      const std::vector<unsigned char>& flips) {
  return count_impl(tokens, lex, &flips);
}

EmotionVector normalize(const RawCounts& raw, bool shared_denominator) {
  EmotionVector v;
  const int et = raw.emotion_total();
  if (et == 0) return v;
  const int denom = shared_denominator ? et + raw.valence_total() : et;
  v.has_signal = true;
  v.rho = raw.n.cast<double>() / static_cast<double>(denom);
  return v;
}

std::optional<double> sentiment(const RawCounts& raw, bool shared_denominator) {
  const int vt = raw.valence_total();
  if (vt == 0) return std::nullopt;
  const int denom = shared_denominator ? vt + raw.emotion_total() : vt;
  return static_cast<double>(raw.positive - raw.negative) /
         static_cast<double>(denom);
}

std::optional<DyadArray<double>> derived(const EmotionVector& rho,
                                         const DyadTable& table,
                                         bool mean_dyads) {
  if (!rho.has_signal) return std::nullopt;
  DyadArray<double> d;
  for (int i = 0; i < kNumDyads; ++i) {
    const auto& [a, b] = table.pairs[static_cast<std::size_t>(i)];
    d[i] = rho.rho[static_cast<int>(a)] + rho.rho[static_cast<int>(b)];
    if (mean_dyads) d[i] *= 0.5;
  }
  return d;
}

DocumentScore score_document(const Post& post, const EmotionLexicon& lex,
                             const ScoreOptions& opts) {
  DocumentScore score;
  score.post_id = post.id;
  TokenizeOptions topts;
  topts.keep_sentence_breaks = opts.negation;
  const auto tokens = tokenize(post.body, topts);
  if (opts.negation) {
    const auto flips =
        apply_negation(tokens, opts.negators, opts.negation_window);
    score.raw = count_terms(tokens, lex, flips);
  } else {
    score.raw = count_terms(tokens, lex);
  }
  score.rho = normalize(score.raw, opts.shared_denominator);
  score.sentiment = sentiment(score.raw, opts.shared_denominator);
  score.dyads = derived(score.rho, opts.dyad_table, opts.mean_dyads);
  return score;
}

std::vector<DocumentScore> score_posts(const std::vector<Post>& posts,
                                       const EmotionLexicon& lex,
                                       const ScoreOptions& opts, int threads) {
  std::vector<DocumentScore> scores(posts.size());
  if (posts.empty()) return scores;
  unsigned n_threads = threads > 0
                           ? static_cast<unsigned>(threads)
                           : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(
      n_threads, static_cast<unsigned>(posts.size()));
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < posts.size(); ++i)
      scores[i] = score_document(posts[i], lex, opts);
    return scores;
  }
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (unsigned t = 0; t < n_threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < posts.size(); i += n_threads)
        scores[i] = score_document(posts[i], lex, opts);
    });
  }
  for (auto& th : pool) th.join();
  return scores;
}

std::optional<double> metric_value(const DocumentScore& score, Metric metric) {
  if (metric == Metric::sentiment) return score.sentiment;
  if (metric == Metric::neg_words)
    return static_cast<double>(score.raw.negative);
  const int i = static_cast<int>(metric);
  if (i <= kNumEmotions) {
    if (!score.rho.has_signal) return std::nullopt;
    return score.rho.rho[i - 1];
  }
  if (!score.dyads) return std::nullopt;
  return (*score.dyads)[i - 1 - kNumEmotions];
}

}  // namespace emodyn
