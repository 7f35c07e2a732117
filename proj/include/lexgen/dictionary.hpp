#pragma once

#include <compare>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lexgen/pos.hpp"
#include "lexgen/wordnet.hpp"

namespace lexgen {

struct DictEntry {
  std::string headword;    // normalized, may be multiword (space-separated)
  Pos pos = Pos::Unknown;
  std::string translation; // normalized, may be multiword

  bool operator==(const DictEntry&) const = default;
};

// Canonical order: lexicographic by (headword, pos token, translation).
bool entry_less(const DictEntry& a, const DictEntry& b);

struct LanguageMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ordered multimap of (headword, POS) -> translations for one language pair.
// Entries are kept deduplicated in canonical order; all mutating operations
// return new values.
class BilingualDict {
 public:
  BilingualDict(std::string source_lang, std::string target_lang,
                std::vector<DictEntry> entries = {});

  const std::string& source_lang() const { return source_lang_; }
  const std::string& target_lang() const { return target_lang_; }
  const std::vector<DictEntry>& entries() const { return entries_; }
  size_t size() const { return entries_.size(); }
  bool operator==(const BilingualDict&) const = default;

  // All translations of a headword; pos Unknown matches any POS.
  std::vector<std::string> translations(const std::string& headword,
                                        std::optional<Pos> pos = std::nullopt) const;

 private:
  std::string source_lang_;
  std::string target_lang_;
  std::vector<DictEntry> entries_;
};

using TagMap = std::map<std::string, Pos>;

TagMap load_tag_map(const std::filesystem::path& path);

// TSV: headword<TAB>pos<TAB>translation, '#' comments, UTF-8. save_dict
// records the language pair in a leading comment; load_dict reads it back,
// with explicit arguments taking precedence. Unknown POS tokens (after the
// optional tag map) keep the entry with pos = unknown.
BilingualDict load_dict(const std::filesystem::path& path,
                        std::optional<std::string> source_lang = std::nullopt,
                        std::optional<std::string> target_lang = std::nullopt,
                        const TagMap* tag_map = nullptr);
void save_dict(const BilingualDict& dict, const std::filesystem::path& path);
std::string dict_to_tsv(const BilingualDict& dict);

// Deduplicated union; requires matching language pairs.
BilingualDict merge_dicts(const BilingualDict& a, const BilingualDict& b);

// POS of the first-ordered PWN sense of the English word; noun when absent.
Pos resolve_pos(const std::string& english_word, const WordnetIndex& eng_index);

}  // namespace lexgen
