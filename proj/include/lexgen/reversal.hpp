#pragma once

#include <cstdint>
#include <string_view>

#include "lexgen/dictionary.hpp"
#include "lexgen/wordnet.hpp"

namespace lexgen {

enum class WordSimilarity { Overlap, Jaccard };

struct SimConfig {
  double threshold = 0.9;           // simValue gate for merging
  ExpandParts parts = kAllParts;
  WordSimilarity word_similarity = WordSimilarity::Overlap;
};

struct ReversalStats {
  uint64_t multiword_skipped = 0;  // entries dropped before reversal
  uint64_t merged_pairs = 0;       // headword pairs that cleared the threshold
  uint64_t oov_headwords = 0;      // headwords expanding only to themselves
};

// Direct Reversal: every (s, pos, t) becomes (t, pos, s); languages swap.
BilingualDict reverse_dr(const BilingualDict& dict);

// Phrase similarity in [0, 1] from expansion-set overlap: per word, the best
// word-level match in the other phrase; averaged over both directions.
// Word-level similarity is the overlap coefficient |A∩B| / min(|A|,|B|)
// (or Jaccard when configured).
double sim_value(std::string_view phrase1, std::string_view phrase2,
                 const WordnetIndex& eng_index, const SimConfig& config = {});

// Direct Reversal with Similarity: multiword translations are skipped, the
// rest is reversed, and translation sets of same-POS English headwords whose
// simValue clears the threshold are unioned pairwise (no transitive closure).
BilingualDict reverse_drws(const BilingualDict& dict, const WordnetIndex& eng_index,
                           const SimConfig& config = {}, int jobs = 1,
                           ReversalStats* stats = nullptr);

// Reverse-of-reverse integration: merge the input with the DR of its DRwS,
// growing the original dictionary with similarity-derived entries.
BilingualDict round_trip_integrate(const BilingualDict& dict, const WordnetIndex& eng_index,
                                   const SimConfig& config = {}, int jobs = 1,
                                   ReversalStats* stats = nullptr);

}  // namespace lexgen
