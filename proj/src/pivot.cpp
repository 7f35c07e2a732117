#include "lexgen/pivot.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lexgen/text.hpp"

namespace lexgen {

void CandidateTally::add(const std::string& candidate, uint64_t n) {
  counts[candidate] += n;
  total += n;
}

double CandidateTally::rank(const std::string& candidate) const {
  auto it = counts.find(candidate);
  if (it == counts.end() || total == 0) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(total);
}

std::vector<std::pair<std::string, double>> CandidateTally::ranked() const {
  std::vector<std::pair<std::string, uint64_t>> items(counts.begin(), counts.end());
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<std::pair<std::string, double>> out;
  out.reserve(items.size());
  for (const auto& [candidate, count] : items)
    out.emplace_back(candidate, static_cast<double>(count) / static_cast<double>(total));
  return out;
}

std::set<std::string> CandidateTally::argmax_set() const {
  std::set<std::string> out;
  uint64_t best = 0;
  for (const auto& [candidate, count] : counts) best = std::max(best, count);
  for (const auto& [candidate, count] : counts)
    if (count == best && best > 0) out.insert(candidate);
  return out;
}

std::set<std::string> CandidateTally::above(double threshold) const {
  std::set<std::string> out;
  for (const auto& [candidate, count] : counts)
    if (rank(candidate) > threshold) out.insert(candidate);
  return out;
}

std::vector<std::pair<std::string, double>> rank_candidates(
    const std::vector<std::string>& raw_candidates) {
  CandidateTally tally;
  for (const std::string& c : raw_candidates) tally.add(c);
  return tally.ranked();
}

std::map<std::string, std::set<std::string>> expand_synonyms(
    const std::string& english_word, std::optional<Pos> pos, const WordnetMap& indexes) {
  auto eng_it = indexes.find("eng");
  if (eng_it == indexes.end())
    throw std::invalid_argument("expand_synonyms requires an English index");
  const WordnetIndex& eng = *eng_it->second;

  std::string lemma = text::to_lemma(english_word);
  std::map<std::string, std::set<std::string>> out;
  std::set<std::string>& syn_eng = out["eng"];
  syn_eng.insert(lemma);
  for (const std::string& s : synonyms(eng, lemma, pos)) syn_eng.insert(s);

  // Every synset containing any SYN_eng member, then aligned lemmas per language.
  std::set<OffsetPos> offsets;
  for (const std::string& w : syn_eng)
    for (const OffsetPos& id : eng.senses(w, pos)) offsets.insert(id);

  for (const auto& [lang, index] : indexes) {
    if (lang == "eng") continue;
    std::set<std::string>& syn_l = out[lang];
    for (const OffsetPos& id : offsets)
      if (const Synset* s = index->find(id))
        syn_l.insert(s->lemmas.begin(), s->lemmas.end());
  }
  return out;
}

namespace {

struct EntryOutcome {
  std::vector<DictEntry> entries;
  std::optional<PivotFailure> failure;
  bool no_candidates = false;
  bool oov_english = false;
  uint64_t unsupported_pairs = 0;
};

EntryOutcome process_entry(const DictEntry& entry, const WordnetMap& indexes,
                           const WordnetIndex& eng, TranslationBackend& backend,
                           const std::string& target_lang, const PivotConfig& config) {
  EntryOutcome outcome;
  Pos pos = entry.pos == Pos::Unknown ? resolve_pos(entry.translation, eng) : entry.pos;
  if (eng.senses(text::to_lemma(entry.translation)).empty()) outcome.oov_english = true;

  auto expansion = expand_synonyms(entry.translation, pos, indexes);

  CandidateTally tally;
  try {
    for (const std::string& lang : config.helper_langs) {
      auto it = expansion.find(lang);
      if (it == expansion.end() || it->second.empty()) continue;
      if (!backend.supports(lang, target_lang)) {
        ++outcome.unsupported_pairs;
        continue;
      }
      for (const std::string& member : it->second) {
        for (const std::string& candidate :
             backend.translate(text::lemma_to_phrase(member), lang, target_lang)) {
          tally.add(text::normalize(candidate));
        }
      }
    }
  } catch (const std::exception& e) {
    outcome.failure = PivotFailure{entry.headword, entry.translation, e.what()};
    return outcome;
  }

  if (tally.total == 0) {
    outcome.no_candidates = true;
    return outcome;
  }
  std::set<std::string> accepted = config.policy == RankPolicy::Argmax
                                       ? tally.argmax_set()
                                       : tally.above(config.theta);
  for (const std::string& candidate : accepted)
    outcome.entries.push_back(DictEntry{entry.headword, pos, candidate});
  return outcome;
}

}  // namespace

BilingualDict build_pivot_dict(const BilingualDict& src, const WordnetMap& indexes,
                               TranslationBackend& backend, const std::string& target_lang,
                               const PivotConfig& config, int jobs,
                               std::vector<PivotFailure>* failures, PivotStats* stats) {
  if (src.target_lang() != "eng")
    throw std::invalid_argument("pivot source must be a Dict(S, eng); got target " +
                                src.target_lang());
  auto eng_it = indexes.find("eng");
  if (eng_it == indexes.end())
    throw std::invalid_argument("pivot requires an English index");
  if (std::find(config.helper_langs.begin(), config.helper_langs.end(), "eng") ==
      config.helper_langs.end())
    throw std::invalid_argument("helper languages must include eng");
  for (const std::string& lang : config.helper_langs)
    if (!indexes.contains(lang))
      throw std::invalid_argument("no Wordnet index for helper language " + lang);

  const WordnetIndex& eng = *eng_it->second;
  const std::vector<DictEntry>& entries = src.entries();
  std::vector<EntryOutcome> outcomes(entries.size());

  const auto work = [&](size_t i) {
    outcomes[i] = process_entry(entries[i], indexes, eng, backend, target_lang, config);
  };
#ifdef _OPENMP
  if (jobs > 1) {
#pragma omp parallel for schedule(dynamic, 8) num_threads(jobs)
    for (size_t i = 0; i < entries.size(); ++i) work(i);
  } else
#endif
  {
    (void)jobs;
    for (size_t i = 0; i < entries.size(); ++i) work(i);
  }

  std::vector<DictEntry> result;
  for (EntryOutcome& o : outcomes) {
    result.insert(result.end(), o.entries.begin(), o.entries.end());
    if (o.failure && failures) failures->push_back(*o.failure);
    if (stats) {
      stats->entries_failed += o.failure ? 1 : 0;
      stats->entries_no_candidates += o.no_candidates ? 1 : 0;
      stats->unsupported_pairs += o.unsupported_pairs;
      stats->oov_english += o.oov_english ? 1 : 0;
    }
  }
  BilingualDict out(src.source_lang(), target_lang, std::move(result));
  if (stats) {
    stats->entries_in += entries.size();
    stats->entries_out += out.size();
  }
  return out;
}

}  // namespace lexgen
