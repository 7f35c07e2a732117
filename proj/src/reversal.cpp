#include "lexgen/reversal.hpp"

#include <algorithm>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lexgen/text.hpp"

namespace lexgen {

namespace {

double word_similarity(const std::set<std::string>& a, const std::set<std::string>& b,
                       WordSimilarity kind) {
  if (a.empty() || b.empty()) return 0.0;
  size_t inter = 0;
  for (const std::string& x : a)
    if (b.contains(x)) ++inter;
  if (kind == WordSimilarity::Overlap)
    return static_cast<double>(inter) / static_cast<double>(std::min(a.size(), b.size()));
  return static_cast<double>(inter) / static_cast<double>(a.size() + b.size() - inter);
}

// Expansion sets match sim_value semantics: POS-free, over the configured parts.
std::set<std::string> word_expansion(const WordnetIndex& index, const std::string& word,
                                     const SimConfig& config) {
  return expansion_set(index, word, std::nullopt, config.parts);
}

double directional_mean(const std::vector<std::set<std::string>>& from,
                        const std::vector<std::set<std::string>>& to,
                        WordSimilarity kind) {
  double sum = 0.0;
  for (const auto& e1 : from) {
    double best = 0.0;
    for (const auto& e2 : to) best = std::max(best, word_similarity(e1, e2, kind));
    sum += best;
  }
  return sum / static_cast<double>(from.size());
}

}  // namespace

BilingualDict reverse_dr(const BilingualDict& dict) {
  std::vector<DictEntry> swapped;
  swapped.reserve(dict.size());
  for (const DictEntry& e : dict.entries())
    swapped.push_back(DictEntry{e.translation, e.pos, e.headword});
  return BilingualDict(dict.target_lang(), dict.source_lang(), std::move(swapped));
}

double sim_value(std::string_view phrase1, std::string_view phrase2,
                 const WordnetIndex& eng_index, const SimConfig& config) {
  std::vector<std::string> words1 = text::split_words(text::normalize(phrase1));
  std::vector<std::string> words2 = text::split_words(text::normalize(phrase2));
  if (words1.empty() || words2.empty()) return 0.0;

  auto expand_all = [&](const std::vector<std::string>& words) {
    std::vector<std::set<std::string>> out;
    out.reserve(words.size());
    for (const std::string& w : words) out.push_back(word_expansion(eng_index, w, config));
    return out;
  };
  std::vector<std::set<std::string>> exp1 = expand_all(words1);
  std::vector<std::set<std::string>> exp2 = expand_all(words2);

  return 0.5 * (directional_mean(exp1, exp2, config.word_similarity) +
                directional_mean(exp2, exp1, config.word_similarity));
}

namespace {

struct HeadwordGroup {
  std::string headword;  // single English word
  Pos pos;
  std::set<std::string> translations;
};

// Pairwise merge phase of DRwS. Candidate pairs are pruned through an
// inverted index from expansion members to groups: pairs sharing no member
// have zero overlap and never merge. Unknown-POS groups only ever merge with
// themselves, so they are skipped here.
std::vector<std::set<std::string>> merge_similar_groups(
    std::vector<HeadwordGroup>& groups, const WordnetIndex& eng_index,
    const SimConfig& config, int jobs, ReversalStats* stats) {
  const size_t n = groups.size();
  std::vector<std::set<std::string>> expansions(n);

  std::vector<size_t> active;  // groups eligible for similarity merging
  for (size_t i = 0; i < n; ++i)
    if (groups[i].pos != Pos::Unknown) active.push_back(i);

  const auto expand_one = [&](size_t k) {
    size_t g = active[k];
    expansions[g] = word_expansion(eng_index, groups[g].headword, config);
  };
#ifdef _OPENMP
  if (jobs > 1) {
#pragma omp parallel for schedule(dynamic, 16) num_threads(jobs)
    for (size_t k = 0; k < active.size(); ++k) expand_one(k);
  } else
#endif
  {
    (void)jobs;
    for (size_t k = 0; k < active.size(); ++k) expand_one(k);
  }

  if (stats) {
    for (size_t g : active)
      if (expansions[g].size() <= 1) ++stats->oov_headwords;
  }

  std::unordered_map<std::string, std::vector<size_t>> member_to_groups;
  for (size_t g : active)
    for (const std::string& m : expansions[g]) member_to_groups[m].push_back(g);

  std::vector<std::pair<size_t, size_t>> pairs;
  {
    std::set<std::pair<size_t, size_t>> seen;
    for (size_t g : active) {
      for (const std::string& m : expansions[g]) {
        for (size_t other : member_to_groups[m]) {
          if (other <= g) continue;
          if (groups[g].pos != groups[other].pos) continue;
          if (seen.insert({g, other}).second) pairs.emplace_back(g, other);
        }
      }
    }
    std::sort(pairs.begin(), pairs.end());
  }

  std::vector<char> keep(pairs.size(), 0);
#ifdef _OPENMP
  if (jobs > 1) {
#pragma omp parallel for schedule(dynamic, 64) num_threads(jobs)
    for (size_t k = 0; k < pairs.size(); ++k) {
      auto [g, h] = pairs[k];
      keep[k] = word_similarity(expansions[g], expansions[h], config.word_similarity) >=
                config.threshold;
    }
  } else
#endif
  {
    for (size_t k = 0; k < pairs.size(); ++k) {
      auto [g, h] = pairs[k];
      keep[k] = word_similarity(expansions[g], expansions[h], config.word_similarity) >=
                config.threshold;
    }
  }

  // Union from the base translation sets, pairwise: a merge through b never
  // leaks b's other partners into a.
  std::vector<std::set<std::string>> merged(n);
  for (size_t g = 0; g < n; ++g) merged[g] = groups[g].translations;
  for (size_t k = 0; k < pairs.size(); ++k) {
    if (!keep[k]) continue;
    auto [g, h] = pairs[k];
    if (stats) ++stats->merged_pairs;
    merged[g].insert(groups[h].translations.begin(), groups[h].translations.end());
    merged[h].insert(groups[g].translations.begin(), groups[g].translations.end());
  }
  return merged;
}

}  // namespace

BilingualDict reverse_drws(const BilingualDict& dict, const WordnetIndex& eng_index,
                           const SimConfig& config, int jobs, ReversalStats* stats) {
  // Entries with multiword translations are skipped before reversal.
  std::map<std::pair<std::string, Pos>, std::set<std::string>> by_headword;
  for (const DictEntry& e : dict.entries()) {
    if (text::is_multiword(e.translation)) {
      if (stats) ++stats->multiword_skipped;
      continue;
    }
    by_headword[{e.translation, e.pos}].insert(e.headword);
  }

  std::vector<HeadwordGroup> groups;
  groups.reserve(by_headword.size());
  for (auto& [key, translations] : by_headword)
    groups.push_back(HeadwordGroup{key.first, key.second, std::move(translations)});

  std::vector<std::set<std::string>> merged =
      merge_similar_groups(groups, eng_index, config, jobs, stats);

  std::vector<DictEntry> entries;
  for (size_t g = 0; g < groups.size(); ++g)
    for (const std::string& t : merged[g])
      entries.push_back(DictEntry{groups[g].headword, groups[g].pos, t});
  return BilingualDict(dict.target_lang(), dict.source_lang(), std::move(entries));
}

BilingualDict round_trip_integrate(const BilingualDict& dict, const WordnetIndex& eng_index,
                                   const SimConfig& config, int jobs, ReversalStats* stats) {
  BilingualDict reversed = reverse_drws(dict, eng_index, config, jobs, stats);
  return merge_dicts(dict, reverse_dr(reversed));
}

}  // namespace lexgen
