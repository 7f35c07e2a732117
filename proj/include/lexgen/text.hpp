#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lexgen::text {

struct EncodingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Canonical text form used everywhere words are compared: Unicode case fold,
// NFC normalization, whitespace runs collapsed to single ASCII spaces,
// leading/trailing whitespace removed. Throws EncodingError on invalid UTF-8.
std::string normalize(std::string_view s);

// normalize() with internal spaces encoded as underscores: the in-index lemma
// form used by Wordnet keys and expansion sets.
std::string to_lemma(std::string_view s);

// Underscores back to spaces: the external form written to files and handed
// to translation backends and dictionaries.
std::string lemma_to_phrase(std::string_view s);

std::vector<std::string> split_words(std::string_view s);

bool is_multiword(std::string_view s);

}  // namespace lexgen::text
