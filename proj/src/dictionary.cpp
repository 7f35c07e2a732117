#include "lexgen/dictionary.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lexgen/report.hpp"
#include "lexgen/text.hpp"

namespace lexgen {

namespace {

constexpr std::string_view kLangComment = "# languages: ";

std::string_view strip_cr(std::string_view line) {
  if (line.ends_with('\r')) line.remove_suffix(1);
  return line;
}

}  // namespace

bool entry_less(const DictEntry& a, const DictEntry& b) {
  if (a.headword != b.headword) return a.headword < b.headword;
  if (a.pos != b.pos) return pos_less(a.pos, b.pos);
  return a.translation < b.translation;
}

BilingualDict::BilingualDict(std::string source_lang, std::string target_lang,
                             std::vector<DictEntry> entries)
    : source_lang_(std::move(source_lang)), target_lang_(std::move(target_lang)) {
  if (source_lang_ == target_lang_)
    throw LanguageMismatch("source and target language must differ: " + source_lang_);
  entries_.reserve(entries.size());
  for (DictEntry& e : entries) {
    e.headword = text::normalize(e.headword);
    e.translation = text::normalize(e.translation);
    if (e.headword.empty() || e.translation.empty()) continue;
    entries_.push_back(std::move(e));
  }
  std::sort(entries_.begin(), entries_.end(), entry_less);
  entries_.erase(std::unique(entries_.begin(), entries_.end()), entries_.end());
}

std::vector<std::string> BilingualDict::translations(const std::string& headword,
                                                     std::optional<Pos> pos) const {
  std::string key = text::normalize(headword);
  DictEntry probe{key, Pos::Adj, ""};  // 'a' is the least POS token
  auto it = std::lower_bound(entries_.begin(), entries_.end(), probe, entry_less);
  std::vector<std::string> out;
  for (; it != entries_.end() && it->headword == key; ++it)
    if (!pos || it->pos == *pos) out.push_back(it->translation);
  return out;
}

TagMap load_tag_map(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("tag map not found: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("bad tag map " + path.string() + ": " + e.what());
  }
  TagMap map;
  for (const auto& [tag, value] : j.items()) {
    auto pos = pos_from_token(value.get<std::string>());
    if (!pos)
      throw std::runtime_error("tag map " + path.string() + ": bad POS for tag " + tag);
    map[text::normalize(tag)] = *pos;
  }
  return map;
}

BilingualDict load_dict(const std::filesystem::path& path,
                        std::optional<std::string> source_lang,
                        std::optional<std::string> target_lang, const TagMap* tag_map) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("dictionary not found: " + path.string());
  std::vector<DictEntry> entries;
  std::string raw;
  size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = strip_cr(raw);
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line.starts_with(kLangComment)) {
        std::istringstream ls{std::string(line.substr(kLangComment.size()))};
        std::string src, tgt;
        if (ls >> src >> tgt) {
          if (!source_lang) source_lang = src;
          if (!target_lang) target_lang = tgt;
        }
      }
      continue;
    }
    size_t t1 = line.find('\t');
    size_t t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string_view::npos || line.find('\t', t2 + 1) != std::string_view::npos)
      throw ParseError(path, line_no, "expected headword<TAB>pos<TAB>translation");
    std::string headword(line.substr(0, t1));
    std::string pos_tok = text::normalize(line.substr(t1 + 1, t2 - t1 - 1));
    std::string translation(line.substr(t2 + 1));
    if (headword.empty() || translation.empty())
      throw ParseError(path, line_no, "empty headword or translation");
    Pos pos = Pos::Unknown;
    if (auto p = pos_from_token(pos_tok)) {
      pos = *p;
    } else if (tag_map) {
      if (auto it = tag_map->find(pos_tok); it != tag_map->end()) pos = it->second;
    }
    entries.push_back(DictEntry{std::move(headword), pos, std::move(translation)});
  }
  if (!source_lang || !target_lang)
    throw std::runtime_error(path.string() +
                             ": language pair unknown (no '# languages:' comment; pass it explicitly)");
  return BilingualDict(*source_lang, *target_lang, std::move(entries));
}

std::string dict_to_tsv(const BilingualDict& dict) {
  std::string out;
  out.append(kLangComment);
  out += dict.source_lang();
  out += ' ';
  out += dict.target_lang();
  out += '\n';
  for (const DictEntry& e : dict.entries()) {
    out += e.headword;
    out += '\t';
    out += pos_token(e.pos);
    out += '\t';
    out += e.translation;
    out += '\n';
  }
  return out;
}

void save_dict(const BilingualDict& dict, const std::filesystem::path& path) {
  atomic_write_text(path, dict_to_tsv(dict));
}

BilingualDict merge_dicts(const BilingualDict& a, const BilingualDict& b) {
  if (a.source_lang() != b.source_lang() || a.target_lang() != b.target_lang())
    throw LanguageMismatch("cannot merge " + a.source_lang() + "->" + a.target_lang() +
                           " with " + b.source_lang() + "->" + b.target_lang());
  std::vector<DictEntry> merged = a.entries();
  merged.insert(merged.end(), b.entries().begin(), b.entries().end());
  return BilingualDict(a.source_lang(), a.target_lang(), std::move(merged));
}

Pos resolve_pos(const std::string& english_word, const WordnetIndex& eng_index) {
  auto senses = eng_index.senses(text::to_lemma(english_word));
  if (senses.empty()) return Pos::Noun;
  return senses.front().pos;
}

}  // namespace lexgen
