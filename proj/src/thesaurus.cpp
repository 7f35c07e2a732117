#include "lexgen/thesaurus.hpp"

#include <algorithm>
#include <fstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <nlohmann/json.hpp>

#include "lexgen/pivot.hpp"
#include "lexgen/report.hpp"
#include "lexgen/text.hpp"

namespace lexgen {

namespace {

using nlohmann::json;

// Exact (headword, pos) lookup first; headword-only when the dictionary has
// no entry under that POS (created dictionaries may carry unknown POS).
std::set<std::string> dict_translations(const BilingualDict& dict, const std::string& word,
                                        Pos pos) {
  std::vector<std::string> exact = dict.translations(word, pos);
  if (exact.empty()) exact = dict.translations(word);
  return {exact.begin(), exact.end()};
}

struct EntryScratch {
  ThesaurusEntry entry;
  uint64_t words_translated = 0;
  std::map<std::string, uint64_t> untranslated_by_lang;
};

}  // namespace

std::vector<ThesaurusEntry> build_thesaurus(const WordnetMap& indexes,
                                            const std::map<std::string, BilingualDict>& dicts_to_s,
                                            const ThresholdPolicy& policy, int jobs,
                                            ThesaurusCoverage* coverage) {
  auto eng_it = indexes.find("eng");
  if (eng_it == indexes.end())
    throw std::invalid_argument("thesaurus build requires an English index");
  if (dicts_to_s.empty())
    throw std::invalid_argument("thesaurus build requires at least one Dict(lang, S)");

  std::string s_lang;
  for (const auto& [lang, dict] : dicts_to_s) {
    if (dict.source_lang() != lang)
      throw std::invalid_argument("dictionary for " + lang + " has source language " +
                                  dict.source_lang());
    if (s_lang.empty()) s_lang = dict.target_lang();
    if (dict.target_lang() != s_lang)
      throw std::invalid_argument("helper dictionaries disagree on the target language");
  }
  if (indexes.contains(s_lang))
    throw std::invalid_argument("target language " + s_lang + " collides with a helper language");

  const WordnetIndex& eng = *eng_it->second;
  const std::vector<Synset>& synsets = eng.synsets();  // canonical offset order
  std::vector<EntryScratch> scratch(synsets.size());

  const auto work = [&](size_t i) {
    const Synset& synset = synsets[i];
    EntryScratch& out = scratch[i];
    ThesaurusEntry& entry = out.entry;
    entry.id = i + 1;
    entry.offset_pos = synset.id;
    entry.pos = synset.id.pos;

    CandidateTally tally;
    for (const auto& [lang, index] : indexes) {
      std::set<std::string>& syn_l = entry.syn[lang];
      if (const Synset* s = index->find(synset.id))
        for (const std::string& lemma : s->lemmas)
          syn_l.insert(text::lemma_to_phrase(lemma));

      auto dict_it = dicts_to_s.find(lang);
      for (const std::string& word : syn_l) {
        if (dict_it == dicts_to_s.end()) {
          ++out.untranslated_by_lang[lang];
          continue;
        }
        std::set<std::string> translations =
            dict_translations(dict_it->second, word, entry.pos);
        if (translations.empty()) {
          ++out.untranslated_by_lang[lang];
          continue;
        }
        ++out.words_translated;
        for (const std::string& t : translations) tally.add(t);
      }
    }

    std::set<std::string>& syn_s = entry.syn[s_lang];
    if (tally.total > 0) {
      double cut = policy.kind == ThresholdKind::Fixed
                       ? policy.alpha
                       : 1.0 / static_cast<double>(tally.counts.size());
      syn_s = tally.above(cut);
    }
  };

#ifdef _OPENMP
  if (jobs > 1) {
#pragma omp parallel for schedule(dynamic, 32) num_threads(jobs)
    for (size_t i = 0; i < synsets.size(); ++i) work(i);
  } else
#endif
  {
    (void)jobs;
    for (size_t i = 0; i < synsets.size(); ++i) work(i);
  }

  std::vector<ThesaurusEntry> entries;
  entries.reserve(scratch.size());
  for (EntryScratch& s : scratch) {
    if (coverage) {
      ++coverage->entries;
      if (!s.entry.syn[s_lang].empty()) ++coverage->entries_with_translations;
      coverage->words_translated += s.words_translated;
      for (const auto& [lang, n] : s.untranslated_by_lang) {
        coverage->words_untranslated += n;
        coverage->untranslated_by_lang[lang] += n;
      }
    }
    entries.push_back(std::move(s.entry));
  }
  return entries;
}

std::map<std::string, BilingualDict> derive_helper_dicts(
    const BilingualDict& dict_s_eng, const std::map<std::string, BilingualDict>& pivot_dicts,
    const WordnetIndex& eng_index, const SimConfig& config, int jobs) {
  std::map<std::string, BilingualDict> out;
  out.emplace("eng", reverse_drws(dict_s_eng, eng_index, config, jobs));
  for (const auto& [lang, dict] : pivot_dicts) {
    if (dict.source_lang() != dict_s_eng.source_lang())
      throw std::invalid_argument("pivot dictionary for " + lang +
                                  " does not translate from " + dict_s_eng.source_lang());
    out.emplace(lang, reverse_dr(dict));
  }
  return out;
}

std::vector<ThesaurusEntry> drop_empty_entries(const std::vector<ThesaurusEntry>& entries,
                                               const std::string& s_lang) {
  std::vector<ThesaurusEntry> out;
  for (const ThesaurusEntry& e : entries) {
    auto it = e.syn.find(s_lang);
    if (it != e.syn.end() && !it->second.empty()) out.push_back(e);
  }
  return out;
}

std::string thesaurus_to_jsonl(const std::vector<ThesaurusEntry>& entries) {
  std::string out;
  for (const ThesaurusEntry& e : entries) {
    json syn = json::object();
    for (const auto& [lang, words] : e.syn) syn[lang] = words;
    json j{{"id", e.id},
           {"offset_pos", e.offset_pos.str()},
           {"pos", std::string(pos_token(e.pos))},
           {"syn", syn}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string thesaurus_to_tsv(const std::vector<ThesaurusEntry>& entries,
                             const std::string& s_lang) {
  // Stable column set across rows: S first, then the other languages sorted.
  std::set<std::string> langs;
  for (const ThesaurusEntry& e : entries)
    for (const auto& [lang, words] : e.syn) langs.insert(lang);
  std::vector<std::string> columns;
  if (langs.erase(s_lang)) columns.push_back(s_lang);
  columns.insert(columns.end(), langs.begin(), langs.end());

  std::string out = "# id\toffset_pos\tpos";
  for (const std::string& lang : columns) {
    out += "\tsyn:";
    out += lang;
  }
  out += '\n';
  for (const ThesaurusEntry& e : entries) {
    out += std::to_string(e.id);
    out += '\t';
    out += e.offset_pos.str();
    out += '\t';
    out += pos_token(e.pos);
    for (const std::string& lang : columns) {
      out += '\t';
      auto it = e.syn.find(lang);
      if (it == e.syn.end()) continue;
      bool first = true;
      for (const std::string& w : it->second) {
        if (!first) out += '|';
        out += w;
        first = false;
      }
    }
    out += '\n';
  }
  return out;
}

void save_thesaurus(const std::vector<ThesaurusEntry>& entries,
                    const std::filesystem::path& path, ThesaurusFormat format,
                    const std::string& s_lang) {
  atomic_write_text(path, format == ThesaurusFormat::Jsonl
                              ? thesaurus_to_jsonl(entries)
                              : thesaurus_to_tsv(entries, s_lang));
}

std::vector<ThesaurusEntry> load_thesaurus_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("thesaurus not found: " + path.string());
  std::vector<ThesaurusEntry> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(path, line_no, std::string("bad JSON: ") + e.what());
    }
    ThesaurusEntry e;
    e.id = j.at("id").get<uint64_t>();
    auto id = OffsetPos::parse(j.at("offset_pos").get<std::string>());
    if (!id) throw ParseError(path, line_no, "bad offset_pos");
    e.offset_pos = *id;
    auto pos = pos_from_token(j.at("pos").get<std::string>());
    if (!pos) throw ParseError(path, line_no, "bad pos");
    e.pos = *pos;
    for (const auto& [lang, words] : j.at("syn").items()) {
      std::set<std::string>& target = e.syn[lang];  // keep empty sets
      for (const auto& w : words) target.insert(w.get<std::string>());
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace lexgen
