#include <doctest.h>

#include "lexgen/text.hpp"

using namespace lexgen;

TEST_CASE("normalize folds case and collapses whitespace") {
  CHECK(text::normalize("  Sea  ") == "sea");
  CHECK(text::normalize("Body\tof   Water") == "body of water");
  CHECK(text::normalize("OCÉAN") == "océan");
  CHECK(text::normalize("") == "");
  CHECK(text::normalize("   ") == "");
}

TEST_CASE("normalize composes to NFC") {
  // "océan" with a decomposed e + combining acute
  std::string decomposed = "oce\xcc\x81an";
  std::string composed = "oc\xc3\xa9an";
  CHECK(text::normalize(decomposed) == composed);
  CHECK(text::normalize(composed) == composed);
}

TEST_CASE("normalize rejects invalid UTF-8") {
  CHECK_THROWS_AS(text::normalize("\xff\xfe broken"), text::EncodingError);
}

TEST_CASE("lemma form round-trips through phrase form") {
  CHECK(text::to_lemma("Body of Water") == "body_of_water");
  CHECK(text::lemma_to_phrase("body_of_water") == "body of water");
  CHECK(text::to_lemma(text::lemma_to_phrase("mediterranean_sea")) == "mediterranean_sea");
}

TEST_CASE("split and multiword checks") {
  CHECK(text::split_words("a b  c") == std::vector<std::string>{"a", "b", "c"});
  CHECK(text::split_words("") == std::vector<std::string>{});
  CHECK(text::is_multiword("big water"));
  CHECK_FALSE(text::is_multiword("water"));
}
