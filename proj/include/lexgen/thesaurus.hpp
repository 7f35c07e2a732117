#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lexgen/dictionary.hpp"
#include "lexgen/reversal.hpp"
#include "lexgen/wordnet.hpp"

namespace lexgen {

// One thesaurus entry: aligned per-language synonym sets for one sense.
// offset_pos is retained for provenance; syn holds every helper language plus
// the endangered language S, lemmas in external (space) form.
struct ThesaurusEntry {
  uint64_t id = 0;  // 1-based, assigned in canonical offset order
  OffsetPos offset_pos;
  Pos pos = Pos::Noun;
  std::map<std::string, std::set<std::string>> syn;

  bool operator==(const ThesaurusEntry&) const = default;
};

enum class ThresholdKind { AboveAverage, Fixed };

struct ThresholdPolicy {
  ThresholdKind kind = ThresholdKind::AboveAverage;
  double alpha = 0.0;  // used when kind == Fixed; accept rank > alpha
};

struct ThesaurusCoverage {
  uint64_t entries = 0;
  uint64_t entries_with_translations = 0;  // non-empty SYN_S
  uint64_t words_translated = 0;
  uint64_t words_untranslated = 0;
  std::map<std::string, uint64_t> untranslated_by_lang;
};

// One entry per offset-POS in the English index, in canonical order. SYN_L
// comes from the aligned index for each language; candidates are the
// dictionary translations of every SYN_L member into S; SYN_S keeps the
// candidates whose rank clears the policy cut (strictly).
std::vector<ThesaurusEntry> build_thesaurus(const WordnetMap& indexes,
                                            const std::map<std::string, BilingualDict>& dicts_to_s,
                                            const ThresholdPolicy& policy = {}, int jobs = 1,
                                            ThesaurusCoverage* coverage = nullptr);

// Helper dictionaries for the thesaurus build: eng->S from DRwS of the input
// Dict(S, eng); every other language from plain DR of its pivot dictionary.
std::map<std::string, BilingualDict> derive_helper_dicts(
    const BilingualDict& dict_s_eng, const std::map<std::string, BilingualDict>& pivot_dicts,
    const WordnetIndex& eng_index, const SimConfig& config = {}, int jobs = 1);

enum class ThesaurusFormat { Jsonl, Tsv };

std::vector<ThesaurusEntry> drop_empty_entries(const std::vector<ThesaurusEntry>& entries,
                                               const std::string& s_lang);

std::string thesaurus_to_jsonl(const std::vector<ThesaurusEntry>& entries);
// TSV columns: id, offset_pos, pos, then one column per language with the S
// language first; set members joined by '|'.
std::string thesaurus_to_tsv(const std::vector<ThesaurusEntry>& entries,
                             const std::string& s_lang);

void save_thesaurus(const std::vector<ThesaurusEntry>& entries,
                    const std::filesystem::path& path, ThesaurusFormat format,
                    const std::string& s_lang);

std::vector<ThesaurusEntry> load_thesaurus_jsonl(const std::filesystem::path& path);

}  // namespace lexgen
