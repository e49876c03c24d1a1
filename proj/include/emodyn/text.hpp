#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace emodyn {

// ASCII-only case folding; bytes >= 0x80 pass through untouched.
std::string to_lower_ascii(std::string_view s);

std::string_view trim(std::string_view s);

bool is_ascii_punct(char c);
bool is_word_char(char c);  // [A-Za-z0-9_] or any non-ASCII byte

// Hashtag tokens of a text: '#' followed by a maximal run of word
// characters, lowercased, '#' included. "#Trump2020landslide" yields
// exactly "#trump2020landslide", never its prefixes.
std::vector<std::string> extract_hashtags(std::string_view text);

// Case-insensitive substring search (ASCII folding).
bool contains_ci(std::string_view haystack, std::string_view needle);

// FNV-1a 64-bit, hex encoded; used for config and lexicon provenance.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace emodyn
