#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lexgen/dictionary.hpp"
#include "lexgen/translate.hpp"
#include "lexgen/wordnet.hpp"

namespace lexgen {

// Multiset of translation candidates; rank(c) = count(c) / total.
struct CandidateTally {
  std::map<std::string, uint64_t> counts;
  uint64_t total = 0;

  void add(const std::string& candidate, uint64_t n = 1);
  double rank(const std::string& candidate) const;
  // Descending by rank, ties broken lexicographically ascending.
  std::vector<std::pair<std::string, double>> ranked() const;
  // Candidates with the maximal count (the full argmax set).
  std::set<std::string> argmax_set() const;
  // Candidates with rank strictly above the threshold.
  std::set<std::string> above(double threshold) const;
};

std::vector<std::pair<std::string, double>> rank_candidates(
    const std::vector<std::string>& raw_candidates);

enum class RankPolicy { Argmax, Threshold };

struct PivotConfig {
  std::vector<std::string> helper_langs{"eng", "fin", "fra", "jpn"};
  RankPolicy policy = RankPolicy::Argmax;
  double theta = 0.0;  // used by RankPolicy::Threshold, rank > theta
};

// SYN_eng = {word} ∪ synonyms(word, pos); for each other language in the
// index map, the union of aligned lemmas over every synset containing any
// SYN_eng member. Lemmas are in internal lemma form.
std::map<std::string, std::set<std::string>> expand_synonyms(
    const std::string& english_word, std::optional<Pos> pos, const WordnetMap& indexes);

struct PivotFailure {
  std::string headword;
  std::string english;
  std::string error;
};

struct PivotStats {
  uint64_t entries_in = 0;
  uint64_t entries_out = 0;
  uint64_t entries_failed = 0;
  uint64_t entries_no_candidates = 0;
  uint64_t unsupported_pairs = 0;  // helper languages skipped per entry
  uint64_t oov_english = 0;        // English translations absent from PWN
};

// Builds Dict(S, target) from Dict(S, eng) by expanding every English
// translation through the helper Wordnets, translating all expansion members
// with the backend, and keeping candidates by rank policy. Hard backend
// failures skip the entry and are reported; the pipeline continues.
BilingualDict build_pivot_dict(const BilingualDict& src, const WordnetMap& indexes,
                               TranslationBackend& backend, const std::string& target_lang,
                               const PivotConfig& config = {}, int jobs = 1,
                               std::vector<PivotFailure>* failures = nullptr,
                               PivotStats* stats = nullptr);

}  // namespace lexgen
