#include "lexgen/wordnet.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include <nlohmann/json.hpp>

#include "lexgen/text.hpp"

namespace lexgen {

namespace {

using nlohmann::json;

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

std::string_view strip_bom(std::string_view line) {
  if (line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
  return line;
}

std::string_view strip_cr(std::string_view line) {
  if (line.ends_with('\r')) line.remove_suffix(1);
  return line;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

}  // namespace

std::optional<OffsetPos> OffsetPos::parse(std::string_view s) {
  if (s.size() != 10 || s[8] != '-') return std::nullopt;
  std::string_view digits = s.substr(0, 8);
  if (!all_digits(digits)) return std::nullopt;
  auto pos = pos_from_char(s[9]);
  if (!pos) return std::nullopt;
  return OffsetPos{std::string(digits), *pos};
}

std::optional<WordnetFormat> wordnet_format_from_token(std::string_view t) {
  if (t == "pwn-data") return WordnetFormat::PwnData;
  if (t == "omw-tab") return WordnetFormat::OmwTab;
  return std::nullopt;
}

WordnetIndex::Builder& WordnetIndex::Builder::add_synset(
    OffsetPos id, const std::vector<std::string>& lemmas,
    std::vector<OffsetPos> hypernyms, std::vector<OffsetPos> hyponyms) {
  auto [it, inserted] = by_id_.try_emplace(id, synsets_.size());
  if (inserted) {
    synsets_.push_back(Synset{std::move(id), {}, std::move(hypernyms), std::move(hyponyms)});
  } else {
    Synset& s = synsets_[it->second];
    s.hypernyms.insert(s.hypernyms.end(), hypernyms.begin(), hypernyms.end());
    s.hyponyms.insert(s.hyponyms.end(), hyponyms.begin(), hyponyms.end());
  }
  Synset& syn = synsets_[it->second];
  for (const std::string& raw : lemmas) {
    std::string lemma = text::to_lemma(raw);
    if (lemma.empty()) continue;
    if (std::find(syn.lemmas.begin(), syn.lemmas.end(), lemma) != syn.lemmas.end()) {
      ++warnings_.duplicate_lemmas;
      continue;
    }
    syn.lemmas.push_back(std::move(lemma));
  }
  return *this;
}

WordnetIndex::Builder& WordnetIndex::Builder::add_lemma(const OffsetPos& id,
                                                        const std::string& lemma) {
  return add_synset(id, {lemma});
}

std::shared_ptr<const WordnetIndex> WordnetIndex::Builder::build(
    std::shared_ptr<const WordnetIndex> relation_source) {
  auto index = std::shared_ptr<WordnetIndex>(new WordnetIndex());
  index->language_ = std::move(language_);
  index->warnings_ = warnings_;
  index->relation_source_ = std::move(relation_source);

  // The lemma index keeps file order per lemma: PWN files are
  // frequency-ordered and "first sense" means first in the file.
  for (const Synset& s : synsets_) {
    for (const std::string& lemma : s.lemmas) {
      index->lemma_index_[lemma].push_back(s.id);
    }
  }

  std::sort(synsets_.begin(), synsets_.end(),
            [](const Synset& a, const Synset& b) { return a.id < b.id; });
  index->synsets_ = std::move(synsets_);
  index->by_id_.clear();
  for (size_t i = 0; i < index->synsets_.size(); ++i) {
    index->by_id_.emplace(index->synsets_[i].id, i);
  }

  for (const Synset& s : index->synsets_) {
    for (const OffsetPos& id : s.hypernyms)
      if (!index->by_id_.contains(id)) ++index->warnings_.dangling_relations;
    for (const OffsetPos& id : s.hyponyms)
      if (!index->by_id_.contains(id)) ++index->warnings_.dangling_relations;
  }
  return index;
}

const Synset* WordnetIndex::find(const OffsetPos& id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &synsets_[it->second];
}

std::vector<OffsetPos> WordnetIndex::senses(std::string_view lemma,
                                            std::optional<Pos> pos) const {
  auto it = lemma_index_.find(text::to_lemma(lemma));
  if (it == lemma_index_.end()) return {};
  if (!pos) return it->second;
  std::vector<OffsetPos> out;
  for (const OffsetPos& id : it->second)
    if (id.pos == *pos) out.push_back(id);
  return out;
}

std::vector<OffsetPos> WordnetIndex::hypernym_ids(const OffsetPos& id) const {
  if (const Synset* s = find(id); s && !s->hypernyms.empty()) return s->hypernyms;
  if (relation_source_)
    if (const Synset* s = relation_source_->find(id)) return s->hypernyms;
  return {};
}

std::vector<OffsetPos> WordnetIndex::hyponym_ids(const OffsetPos& id) const {
  if (const Synset* s = find(id); s && !s->hyponyms.empty()) return s->hyponyms;
  if (relation_source_)
    if (const Synset* s = relation_source_->find(id)) return s->hyponyms;
  return {};
}

bool WordnetIndex::verify_lemma_index() const {
  std::unordered_map<std::string, std::set<OffsetPos>> rebuilt;
  for (const Synset& s : synsets_)
    for (const std::string& lemma : s.lemmas) rebuilt[lemma].insert(s.id);
  if (rebuilt.size() != lemma_index_.size()) return false;
  for (const auto& [lemma, ids] : lemma_index_) {
    auto it = rebuilt.find(lemma);
    if (it == rebuilt.end()) return false;
    if (std::set<OffsetPos>(ids.begin(), ids.end()) != it->second) return false;
    if (std::set<OffsetPos>(ids.begin(), ids.end()).size() != ids.size()) return false;
  }
  return true;
}

namespace {

void load_pwn_data(const std::filesystem::path& path, WordnetIndex::Builder& builder) {
  std::ifstream in(path);
  std::string raw;
  size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = strip_cr(raw);
    if (line_no == 1) line = strip_bom(line);
    if (line.empty() || line.front() == '#') continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(path, line_no, std::string("bad JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("id") || !j.contains("lemmas"))
      throw ParseError(path, line_no, "synset object needs \"id\" and \"lemmas\"");
    auto id = OffsetPos::parse(j["id"].get<std::string>());
    if (!id) throw ParseError(path, line_no, "bad offset-POS: " + j["id"].dump());
    auto read_ids = [&](const char* key) {
      std::vector<OffsetPos> out;
      if (!j.contains(key)) return out;
      for (const auto& v : j[key]) {
        auto rel = OffsetPos::parse(v.get<std::string>());
        if (!rel) throw ParseError(path, line_no, std::string("bad offset-POS in ") + key);
        out.push_back(*rel);
      }
      return out;
    };
    std::vector<std::string> lemmas;
    for (const auto& v : j["lemmas"]) lemmas.push_back(v.get<std::string>());
    if (lemmas.empty()) throw ParseError(path, line_no, "synset has no lemmas");
    builder.add_synset(*id, lemmas, read_ids("hypernyms"), read_ids("hyponyms"));
  }
}

void load_omw_tab(const std::filesystem::path& path, const std::string& language,
                  WordnetIndex::Builder& builder) {
  std::ifstream in(path);
  std::string raw;
  size_t line_no = 0;
  const std::string lemma_type = language + ":lemma";
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = strip_cr(raw);
    if (line_no == 1) line = strip_bom(line);
    if (line.empty() || line.front() == '#') continue;
    auto fields = split_tabs(line);
    if (fields.size() < 2) throw ParseError(path, line_no, "expected TAB-separated fields");
    auto id = OffsetPos::parse(fields[0]);
    if (!id) throw ParseError(path, line_no, "bad offset-POS: " + std::string(fields[0]));
    std::string_view type = fields[1];
    // Real OMW files interleave def/exe rows; only lemma rows carry entries.
    if (!type.ends_with(":lemma")) {
      size_t colon = type.find(':');
      if (colon == std::string_view::npos)
        throw ParseError(path, line_no, "bad row type: " + std::string(type));
      continue;
    }
    if (type != lemma_type)
      throw ParseError(path, line_no,
                       "row language " + std::string(type) + " does not match " + language);
    if (fields.size() != 3) throw ParseError(path, line_no, "lemma row needs 3 fields");
    if (fields[2].empty()) throw ParseError(path, line_no, "empty lemma");
    builder.add_lemma(*id, std::string(fields[2]));
  }
}

}  // namespace

WordnetPtr load_wordnet(const std::filesystem::path& path, const std::string& language,
                        WordnetFormat format, WordnetPtr relation_source) {
  if (!std::filesystem::exists(path))
    throw std::runtime_error("wordnet file not found: " + path.string());
  WordnetIndex::Builder builder(language);
  switch (format) {
    case WordnetFormat::PwnData: load_pwn_data(path, builder); break;
    case WordnetFormat::OmwTab: load_omw_tab(path, language, builder); break;
  }
  return builder.build(std::move(relation_source));
}

std::set<std::string> synonyms(const WordnetIndex& index, std::string_view lemma,
                               std::optional<Pos> pos) {
  std::string query = text::to_lemma(lemma);
  std::set<std::string> out;
  for (const OffsetPos& id : index.senses(query, pos)) {
    const Synset* s = index.find(id);
    if (!s) continue;
    for (const std::string& l : s->lemmas)
      if (l != query) out.insert(l);
  }
  return out;
}

std::optional<ExpandParts> expand_parts_from_tokens(const std::vector<std::string>& tokens) {
  ExpandParts parts = 0;
  for (const std::string& t : tokens) {
    if (t == "synset") parts |= kPartSynset;
    else if (t == "synonyms") parts |= kPartSynonyms;
    else if (t == "hyponyms") parts |= kPartHyponyms;
    else if (t == "hypernyms") parts |= kPartHypernyms;
    else return std::nullopt;
  }
  if (parts == 0) return std::nullopt;
  return parts;
}

std::set<std::string> expansion_set(const WordnetIndex& index, std::string_view lemma,
                                    std::optional<Pos> pos, ExpandParts parts) {
  std::string query = text::to_lemma(lemma);
  std::set<std::string> out{query};
  auto add_synset_lemmas = [&](const OffsetPos& id) {
    if (const Synset* s = index.find(id))
      out.insert(s->lemmas.begin(), s->lemmas.end());
  };
  for (const OffsetPos& id : index.senses(query, pos)) {
    if (parts & (kPartSynset | kPartSynonyms)) add_synset_lemmas(id);
    if (parts & kPartHyponyms)
      for (const OffsetPos& hypo : index.hyponym_ids(id)) add_synset_lemmas(hypo);
    if (parts & kPartHypernyms)
      for (const OffsetPos& hyper : index.hypernym_ids(id)) add_synset_lemmas(hyper);
  }
  return out;
}

std::map<std::string, std::set<std::string>> aligned_lemmas(const WordnetMap& indexes,
                                                            const OffsetPos& id) {
  std::map<std::string, std::set<std::string>> out;
  for (const auto& [lang, index] : indexes) {
    std::set<std::string>& lemmas = out[lang];
    if (const Synset* s = index->find(id))
      lemmas.insert(s->lemmas.begin(), s->lemmas.end());
  }
  return out;
}

WordnetStats wordnet_stats(const WordnetIndex& index,
                           const std::optional<std::set<OffsetPos>>& core_list) {
  WordnetStats stats;
  stats.synsets = index.synset_count();
  std::set<std::string> lemmas;
  for (const Synset& s : index.synsets()) {
    ++stats.synsets_by_pos[s.id.pos];
    lemmas.insert(s.lemmas.begin(), s.lemmas.end());
  }
  stats.lemmas = lemmas.size();
  if (core_list && !core_list->empty()) {
    uint64_t covered = 0;
    for (const OffsetPos& id : *core_list)
      if (index.find(id)) ++covered;
    stats.core_coverage_pct = 100.0 * static_cast<double>(covered) /
                              static_cast<double>(core_list->size());
  }
  return stats;
}

std::set<OffsetPos> load_core_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("core list not found: " + path.string());
  std::set<OffsetPos> out;
  std::string raw;
  size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = strip_cr(raw);
    if (line_no == 1) line = strip_bom(line);
    if (line.empty() || line.front() == '#') continue;
    auto id = OffsetPos::parse(line);
    if (!id) throw ParseError(path, line_no, "bad offset-POS: " + std::string(line));
    out.insert(*id);
  }
  return out;
}

}  // namespace lexgen
