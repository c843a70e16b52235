// Copyright 2026 The PrecondForge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "precondforge/text.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <cctype>

#include "precondforge/errors.hpp"

namespace precondforge::text {

namespace {

std::string nfc(std::string_view input) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) {
    throw ContractError("ICU NFC normalizer unavailable");
  }
  icu::UnicodeString src = icu::UnicodeString::fromUTF8(
      icu::StringPiece(input.data(), static_cast<int32_t>(input.size())));
  icu::UnicodeString dst = norm->normalize(src, status);
  if (U_FAILURE(status)) {
    throw ContractError("NFC normalization failed");
  }
  std::string out;
  dst.toUTF8String(out);
  return out;
}

}  // namespace

std::string normalize(std::string_view input) {
  std::string composed = nfc(input);
  std::string out;
  out.reserve(composed.size());
  bool pending_space = false;
  const auto* bytes = reinterpret_cast<const uint8_t*>(composed.data());
  const int32_t length = static_cast<int32_t>(composed.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) continue;  // ill-formed sequence, dropped
    if (u_isUWhiteSpace(c)) {
      pending_space = true;
      continue;
    }
    if (u_charType(c) == U_CONTROL_CHAR || u_charType(c) == U_FORMAT_CHAR) {
      continue;
    }
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    out.append(composed, static_cast<std::size_t>(start),
               static_cast<std::size_t>(i - start));
  }
  return out;
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string_view trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool is_word_char(char32_t c) {
  return c == U'\'' || c == 0x2019 || u_isalnum(static_cast<UChar32>(c));
}

char32_t codepoint_at(std::string_view s, std::size_t pos) {
  if (pos >= s.size()) return 0;
  const auto* bytes = reinterpret_cast<const uint8_t*>(s.data());
  int32_t i = static_cast<int32_t>(pos);
  UChar32 c;
  U8_NEXT(bytes, i, static_cast<int32_t>(s.size()), c);
  return c < 0 ? 0xFFFD : static_cast<char32_t>(c);
}

char32_t codepoint_before(std::string_view s, std::size_t pos) {
  if (pos == 0 || pos > s.size()) return 0;
  const auto* bytes = reinterpret_cast<const uint8_t*>(s.data());
  int32_t i = static_cast<int32_t>(pos);
  UChar32 c;
  U8_PREV(bytes, 0, i, c);
  return c < 0 ? 0xFFFD : static_cast<char32_t>(c);
}

bool is_whole_word_at(std::string_view haystack, std::size_t pos,
                      std::size_t len) {
  return !is_word_char(codepoint_before(haystack, pos)) &&
         !is_word_char(codepoint_at(haystack, pos + len));
}

std::vector<Span> find_whole_word(std::string_view haystack,
                                  std::string_view needle) {
  std::vector<Span> hits;
  if (needle.empty()) return hits;
  const std::string lowered = ascii_lower(haystack);
  std::size_t pos = lowered.find(needle);
  while (pos != std::string::npos) {
    if (is_whole_word_at(lowered, pos, needle.size())) {
      hits.push_back({pos, pos + needle.size()});
    }
    pos = lowered.find(needle, pos + 1);
  }
  return hits;
}

bool has_alnum(std::string_view s) {
  for (unsigned char c : s) {
    if (std::isalnum(c) || c >= 0x80) return true;
  }
  return false;
}

bool is_valid_utf8(std::string_view s) {
  const auto* bytes = reinterpret_cast<const uint8_t*>(s.data());
  const int32_t length = static_cast<int32_t>(s.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) return false;
  }
  return true;
}

bool starts_with_upper(std::string_view s) {
  return !s.empty() && s[0] >= 'A' && s[0] <= 'Z';
}

std::string capitalize_first(std::string_view s) {
  std::string out(s);
  if (!out.empty() && out[0] >= 'a' && out[0] <= 'z') {
    out[0] = static_cast<char>(out[0] - 'a' + 'A');
  }
  return out;
}

bool contains_whitespace(std::string_view s) {
  for (unsigned char c : s) {
    if (std::isspace(c)) return true;
  }
  return false;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.emplace_back(s.substr(start));
      break;
    }
    parts.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

}  // namespace precondforge::text
