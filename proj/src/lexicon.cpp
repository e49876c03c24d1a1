#include "emodyn/lexicon.hpp"

#include "emodyn/text.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace emodyn {

namespace {

// Collapse runs of whitespace to single spaces so multi-word entries match
// the token stream they are compared against.
std::string normalize_term(std::string_view raw) {
  std::string out;
  bool in_space = false;
  for (char c : trim(raw)) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      in_space = true;
      continue;
    }
    if (in_space && !out.empty()) out.push_back(' ');
    in_space = false;
    out.push_back(static_cast<char>(
        std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

int word_count(std::string_view term) {
  if (term.empty()) return 0;
  return 1 + static_cast<int>(std::count(term.begin(), term.end(), ' '));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw LexiconError("cannot open lexicon file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

[[noreturn]] void fail(const std::filesystem::path& path, std::size_t line,
                       const std::string& what) {
  throw LexiconError(path.string() + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

void EmotionLexicon::add(std::string term, std::uint16_t categories) {
  auto [it, inserted] = entries.emplace(std::move(term), categories);
  if (!inserted) it->second |= categories;
  max_phrase_words = std::max(max_phrase_words, word_count(it->first));
}

EmotionLexicon load_lexicon(const std::filesystem::path& path,
                            LexiconFormat format) {
  const std::string content = read_file(path);
  EmotionLexicon lex;
  lex.name = path.filename().string();
  lex.file_hash = fnv1a_hex(content);

  std::istringstream in(content);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;

    const auto tab1 = line.find('\t');
    if (tab1 == std::string::npos)
      fail(path, lineno, "expected tab-separated fields");
    const std::string term = normalize_term(line.substr(0, tab1));
    if (term.empty()) fail(path, lineno, "empty term");

    if (format == LexiconFormat::nrc_flags) {
      const auto tab2 = line.find('\t', tab1 + 1);
      if (tab2 == std::string::npos)
        fail(path, lineno, "expected term<TAB>category<TAB>flag");
      const std::string cat_name =
          to_lower_ascii(trim(std::string_view(line).substr(
              tab1 + 1, tab2 - tab1 - 1)));
      const auto cat = parse_category(cat_name);
      if (!cat) fail(path, lineno, "unknown category '" + cat_name + "'");
      const std::string_view flag = trim(std::string_view(line).substr(tab2 + 1));
      if (flag == "1")
        lex.add(term, category_bit(*cat));
      else if (flag != "0")
        fail(path, lineno, "flag must be 0 or 1");
    } else {
      std::uint16_t mask = 0;
      std::string_view rest = std::string_view(line).substr(tab1 + 1);
      while (!rest.empty()) {
        const auto semi = rest.find(';');
        const std::string cat_name =
            to_lower_ascii(trim(rest.substr(0, semi)));
        if (!cat_name.empty()) {
          const auto cat = parse_category(cat_name);
          if (!cat) fail(path, lineno, "unknown category '" + cat_name + "'");
          mask |= category_bit(*cat);
        }
        if (semi == std::string_view::npos) break;
        rest.remove_prefix(semi + 1);
      }
      if (mask == 0) fail(path, lineno, "empty category list");
      lex.add(term, mask);
    }
  }
  if (lex.entries.empty())
    std::cerr << "warning: lexicon '" << lex.name << "' has 0 terms\n";
  return lex;
}

LexiconValidation validate_lexicon(const EmotionLexicon& lex) {
  LexiconValidation v;
  for (const auto& [term, mask] : lex.entries) {
    if (std::any_of(term.begin(), term.end(), [](char c) {
          return std::isupper(static_cast<unsigned char>(c));
        }))
      v.uppercase_keys.push_back(term);
    if (!term.empty() &&
        (std::isspace(static_cast<unsigned char>(term.front())) ||
         std::isspace(static_cast<unsigned char>(term.back()))))
      v.whitespace_keys.push_back(term);
    if (mask == 0) v.empty_set_keys.push_back(term);
  }
  return v;
}

void export_lexicon(const EmotionLexicon& lex,
                    const std::filesystem::path& path, LexiconFormat format) {
  std::map<std::string, std::uint16_t> sorted(lex.entries.begin(),
                                              lex.entries.end());
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw LexiconError("cannot write lexicon file: " + path.string());
  for (const auto& [term, mask] : sorted) {
    if (format == LexiconFormat::nrc_flags) {
      for (int i = 0; i < kNumCategories; ++i)
        if (mask & (1u << i))
          out << term << '\t' << category_name(static_cast<Category>(i))
              << "\t1\n";
    } else {
      out << term << '\t';
      bool first = true;
      for (int i = 0; i < kNumCategories; ++i) {
        if (!(mask & (1u << i))) continue;
        if (!first) out << ';';
        out << category_name(static_cast<Category>(i));
        first = false;
      }
      out << '\n';
    }
  }
}

}  // namespace emodyn
