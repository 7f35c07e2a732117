#pragma once

#include <optional>
#include <string_view>

namespace lexgen {

// Wordnet part-of-speech tags plus "unknown" for dictionary entries whose
// source carries no POS information. Wordnet synsets never use Unknown.
enum class Pos : char {
  Noun = 'n',
  Verb = 'v',
  Adj = 'a',
  Adv = 'r',
  AdjSat = 's',
  Unknown = 'u',
};

constexpr char pos_char(Pos p) { return static_cast<char>(p); }

constexpr std::optional<Pos> pos_from_char(char c) {
  switch (c) {
    case 'n': return Pos::Noun;
    case 'v': return Pos::Verb;
    case 'a': return Pos::Adj;
    case 'r': return Pos::Adv;
    case 's': return Pos::AdjSat;
    default: return std::nullopt;
  }
}

constexpr std::string_view pos_token(Pos p) {
  switch (p) {
    case Pos::Noun: return "n";
    case Pos::Verb: return "v";
    case Pos::Adj: return "a";
    case Pos::Adv: return "r";
    case Pos::AdjSat: return "s";
    case Pos::Unknown: return "unknown";
  }
  return "unknown";
}

constexpr std::optional<Pos> pos_from_token(std::string_view t) {
  if (t.size() == 1) return pos_from_char(t[0]);
  if (t == "unknown") return Pos::Unknown;
  return std::nullopt;
}

// Canonical ordering compares the serialized token, so sorted TSV output
// reads sorted in the POS column as well.
constexpr bool pos_less(Pos a, Pos b) { return pos_token(a) < pos_token(b); }

}  // namespace lexgen
