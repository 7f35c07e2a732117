#include "lexgen/text.hpp"

#include <unicode/uchar.h>
#include <unicode/unorm2.h>
#include <unicode/ustring.h>
#include <unicode/utf16.h>

#include <algorithm>

namespace lexgen::text {

namespace {

std::u16string utf8_to_utf16(std::string_view s) {
  std::u16string out(s.size() + 1, u'\0');
  UErrorCode status = U_ZERO_ERROR;
  int32_t len = 0;
  u_strFromUTF8(out.data(), static_cast<int32_t>(out.size()), &len, s.data(),
                static_cast<int32_t>(s.size()), &status);
  if (status == U_BUFFER_OVERFLOW_ERROR) {
    status = U_ZERO_ERROR;
    out.resize(static_cast<size_t>(len));
    u_strFromUTF8(out.data(), len, &len, s.data(),
                  static_cast<int32_t>(s.size()), &status);
  }
  if (U_FAILURE(status))
    throw EncodingError("invalid UTF-8 input: " + std::string(u_errorName(status)));
  out.resize(static_cast<size_t>(len));
  return out;
}

std::string utf16_to_utf8(const std::u16string& s) {
  std::string out(s.size() * 3 + 1, '\0');
  UErrorCode status = U_ZERO_ERROR;
  int32_t len = 0;
  u_strToUTF8(out.data(), static_cast<int32_t>(out.size()), &len, s.data(),
              static_cast<int32_t>(s.size()), &status);
  if (status == U_BUFFER_OVERFLOW_ERROR) {
    status = U_ZERO_ERROR;
    out.resize(static_cast<size_t>(len));
    u_strToUTF8(out.data(), len, &len, s.data(),
                static_cast<int32_t>(s.size()), &status);
  }
  if (U_FAILURE(status))
    throw EncodingError("UTF-8 conversion failed: " + std::string(u_errorName(status)));
  out.resize(static_cast<size_t>(len));
  return out;
}

std::u16string fold_case(const std::u16string& s) {
  std::u16string out(s.size() + 8, u'\0');
  UErrorCode status = U_ZERO_ERROR;
  int32_t len = u_strFoldCase(out.data(), static_cast<int32_t>(out.size()),
                              s.data(), static_cast<int32_t>(s.size()),
                              U_FOLD_CASE_DEFAULT, &status);
  if (status == U_BUFFER_OVERFLOW_ERROR) {
    status = U_ZERO_ERROR;
    out.resize(static_cast<size_t>(len));
    len = u_strFoldCase(out.data(), len, s.data(),
                        static_cast<int32_t>(s.size()), U_FOLD_CASE_DEFAULT,
                        &status);
  }
  if (U_FAILURE(status))
    throw EncodingError("case folding failed: " + std::string(u_errorName(status)));
  out.resize(static_cast<size_t>(len));
  return out;
}

std::u16string to_nfc(const std::u16string& s) {
  UErrorCode status = U_ZERO_ERROR;
  const UNormalizer2* nfc = unorm2_getNFCInstance(&status);
  if (U_FAILURE(status))
    throw EncodingError("NFC normalizer unavailable");
  std::u16string out(s.size() + 8, u'\0');
  int32_t len = unorm2_normalize(nfc, s.data(), static_cast<int32_t>(s.size()),
                                 out.data(), static_cast<int32_t>(out.size()),
                                 &status);
  if (status == U_BUFFER_OVERFLOW_ERROR) {
    status = U_ZERO_ERROR;
    out.resize(static_cast<size_t>(len));
    len = unorm2_normalize(nfc, s.data(), static_cast<int32_t>(s.size()),
                           out.data(), len, &status);
  }
  if (U_FAILURE(status))
    throw EncodingError("NFC normalization failed: " + std::string(u_errorName(status)));
  out.resize(static_cast<size_t>(len));
  return out;
}

// Maps every Unicode whitespace run to one ASCII space and trims the ends.
std::u16string collapse_whitespace(const std::u16string& s) {
  std::u16string out;
  out.reserve(s.size());
  bool pending_space = false;
  int32_t i = 0;
  const int32_t n = static_cast<int32_t>(s.size());
  while (i < n) {
    UChar32 c;
    U16_NEXT(s.data(), i, n, c);
    if (u_isUWhiteSpace(c) || c == u'\t') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(u' ');
      pending_space = false;
    }
    char16_t buf[2];
    int32_t len = 0;
    UBool err = false;
    U16_APPEND(buf, len, 2, c, err);
    if (!err) out.append(buf, static_cast<size_t>(len));
  }
  return out;
}

}  // namespace

std::string normalize(std::string_view s) {
  if (s.empty()) return {};
  return utf16_to_utf8(collapse_whitespace(to_nfc(fold_case(utf8_to_utf16(s)))));
}

std::string to_lemma(std::string_view s) {
  std::string out = normalize(s);
  std::replace(out.begin(), out.end(), ' ', '_');
  return out;
}

std::string lemma_to_phrase(std::string_view s) {
  std::string out(s);
  std::replace(out.begin(), out.end(), '_', ' ');
  return out;
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    size_t j = i;
    while (j < s.size() && s[j] != ' ') ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool is_multiword(std::string_view s) {
  return s.find(' ') != std::string_view::npos;
}

}  // namespace lexgen::text
