#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lexgen/pos.hpp"

namespace lexgen {

// Parse/format error carrying the offending line number.
struct ParseError : std::runtime_error {
  ParseError(const std::filesystem::path& path, size_t line, const std::string& what)
      : std::runtime_error(path.string() + ":" + std::to_string(line) + ": " + what),
        line_number(line) {}
  size_t line_number;
};

// Canonical synset key: 8-digit zero-padded offset plus POS letter,
// rendered as "09426788-n". Aligned Wordnets share these keys.
struct OffsetPos {
  std::string offset;
  Pos pos = Pos::Noun;

  std::string str() const { return offset + "-" + pos_char(pos); }
  static std::optional<OffsetPos> parse(std::string_view s);

  auto operator<=>(const OffsetPos&) const = default;
};

struct OffsetPosHash {
  size_t operator()(const OffsetPos& k) const {
    return std::hash<std::string>()(k.offset) * 31u +
           static_cast<size_t>(pos_char(k.pos));
  }
};

struct Synset {
  OffsetPos id;
  std::vector<std::string> lemmas;  // lemma form, deduplicated, file order
  std::vector<OffsetPos> hypernyms;
  std::vector<OffsetPos> hyponyms;
};

enum class WordnetFormat { PwnData, OmwTab };

std::optional<WordnetFormat> wordnet_format_from_token(std::string_view t);

struct LoadWarnings {
  uint64_t duplicate_lemmas = 0;   // repeated (offset-POS, lemma) pairs
  uint64_t dangling_relations = 0; // hypernym/hyponym targets missing from the index
};

// Immutable store of one language's synsets, keyed by offset-POS and inverted
// by lemma. Safe to share across threads once built. OMW tab files carry no
// relation links; such an index resolves hypernym/hyponym structure through
// the English index given as relation_source at load time.
class WordnetIndex {
 public:
  class Builder {
   public:
    explicit Builder(std::string language) : language_(std::move(language)) {}

    // Lemmas are taken in raw external form and normalized to lemma form.
    Builder& add_synset(OffsetPos id, const std::vector<std::string>& lemmas,
                        std::vector<OffsetPos> hypernyms = {},
                        std::vector<OffsetPos> hyponyms = {});
    // Accretes one lemma onto a synset, creating it if needed (omw-tab rows).
    Builder& add_lemma(const OffsetPos& id, const std::string& lemma);

    std::shared_ptr<const WordnetIndex> build(
        std::shared_ptr<const WordnetIndex> relation_source = nullptr);

   private:
    std::string language_;
    std::vector<Synset> synsets_;                                // file order
    std::unordered_map<OffsetPos, size_t, OffsetPosHash> by_id_;
    LoadWarnings warnings_;
  };

  const std::string& language() const { return language_; }
  size_t synset_count() const { return synsets_.size(); }

  // Synsets in canonical offset-POS order.
  const std::vector<Synset>& synsets() const { return synsets_; }
  const Synset* find(const OffsetPos& id) const;

  // Synset ids containing the lemma, in file order (PWN files are
  // frequency-ordered, so the first entry is the first sense). The lemma is
  // matched after normalization to lemma form.
  std::vector<OffsetPos> senses(std::string_view lemma,
                                std::optional<Pos> pos = std::nullopt) const;

  // Link targets for a synset; falls back to the relation source's link
  // structure when this synset carries none (omw-tab indexes).
  std::vector<OffsetPos> hypernym_ids(const OffsetPos& id) const;
  std::vector<OffsetPos> hyponym_ids(const OffsetPos& id) const;

  const LoadWarnings& warnings() const { return warnings_; }

  // Rebuild the lemma index from the synsets and compare (round-trip
  // integrity check used by tests).
  bool verify_lemma_index() const;

 private:
  friend class Builder;
  WordnetIndex() = default;

  std::string language_;
  std::vector<Synset> synsets_;  // sorted by id
  std::unordered_map<OffsetPos, size_t, OffsetPosHash> by_id_;
  std::unordered_map<std::string, std::vector<OffsetPos>> lemma_index_;  // file order
  LoadWarnings warnings_;
  std::shared_ptr<const WordnetIndex> relation_source_;
};

using WordnetPtr = std::shared_ptr<const WordnetIndex>;
using WordnetMap = std::map<std::string, WordnetPtr>;  // keyed by language

WordnetPtr load_wordnet(const std::filesystem::path& path, const std::string& language,
                        WordnetFormat format, WordnetPtr relation_source = nullptr);

// Lemmas sharing a synset with (lemma, pos), excluding the query lemma.
std::set<std::string> synonyms(const WordnetIndex& index, std::string_view lemma,
                               std::optional<Pos> pos = std::nullopt);

enum ExpandPart : unsigned {
  kPartSynset = 1u << 0,
  kPartSynonyms = 1u << 1,
  kPartHyponyms = 1u << 2,
  kPartHypernyms = 1u << 3,
};
using ExpandParts = unsigned;
inline constexpr ExpandParts kAllParts =
    kPartSynset | kPartSynonyms | kPartHyponyms | kPartHypernyms;

std::optional<ExpandParts> expand_parts_from_tokens(const std::vector<std::string>& tokens);

// Union of the requested lemma sets over every synset containing (lemma, pos),
// always including the query lemma itself. Hyponym/hypernym parts take lemmas
// of directly linked synsets only (depth 1). Unknown lemmas yield {lemma}.
std::set<std::string> expansion_set(const WordnetIndex& index, std::string_view lemma,
                                    std::optional<Pos> pos = std::nullopt,
                                    ExpandParts parts = kAllParts);

// Per-language lemma sets for one offset-POS; languages lacking the synset
// map to the empty set.
std::map<std::string, std::set<std::string>> aligned_lemmas(const WordnetMap& indexes,
                                                            const OffsetPos& id);

struct WordnetStats {
  uint64_t synsets = 0;
  uint64_t lemmas = 0;  // distinct lemma strings
  std::map<Pos, uint64_t> synsets_by_pos;
  std::optional<double> core_coverage_pct;
};

WordnetStats wordnet_stats(const WordnetIndex& index,
                           const std::optional<std::set<OffsetPos>>& core_list = std::nullopt);

// Core list file: one offset-POS per line, '#' comments.
std::set<OffsetPos> load_core_list(const std::filesystem::path& path);

}  // namespace lexgen
