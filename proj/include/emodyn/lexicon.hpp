#pragma once

#include "emodyn/types.hpp"

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace emodyn {

enum class LexiconFormat { nrc_flags, category_list };

inline std::uint16_t category_bit(Category c) {
  return static_cast<std::uint16_t>(1u << static_cast<int>(c));
}

// Term -> category-set map. Keys are lowercase and whitespace-trimmed;
// multi-word entries are stored with single internal spaces and matched by
// greedy longest match during counting. Immutable after load.
struct EmotionLexicon {
  std::string name;
  std::string file_hash;  // fnv1a over the source bytes; empty if built in code
  std::unordered_map<std::string, std::uint16_t> entries;
  int max_phrase_words = 1;

  std::size_t term_count() const { return entries.size(); }

  void add(std::string term, std::uint16_t categories);
};

struct LexiconError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// nrc_flags: term<TAB>category<TAB>0|1, one association per row; only
// flag=1 rows become associations. category_list: term<TAB>cat1;cat2;...
// Unknown category names and empty terms are fatal, with line numbers.
EmotionLexicon load_lexicon(const std::filesystem::path& path,
                            LexiconFormat format);

struct LexiconValidation {
  std::vector<std::string> uppercase_keys;
  std::vector<std::string> whitespace_keys;
  std::vector<std::string> empty_set_keys;

  bool ok() const {
    return uppercase_keys.empty() && whitespace_keys.empty() &&
           empty_set_keys.empty();
  }
};

LexiconValidation validate_lexicon(const EmotionLexicon& lex);

// Mirrors the input formats; terms and categories are emitted in sorted
// order so a load/export cycle is stable byte for byte.
void export_lexicon(const EmotionLexicon& lex,
                    const std::filesystem::path& path, LexiconFormat format);

}  // namespace emodyn
