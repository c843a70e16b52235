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

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace precondforge::text {

// Byte offsets into UTF-8 text, half-open.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool empty() const { return begin == end; }
  bool overlaps(const Span& o) const { return begin < o.end && o.begin < end; }
  bool contains(const Span& o) const { return begin <= o.begin && o.end <= end; }
  friend bool operator==(const Span&, const Span&) = default;
};

// NFC, control characters stripped, whitespace runs collapsed to one space,
// leading/trailing whitespace removed.
std::string normalize(std::string_view input);

// ASCII lowercase; non-ASCII bytes pass through unchanged. Byte offsets are
// preserved, so spans found in the lowered copy index the original.
std::string ascii_lower(std::string_view s);

std::string_view trim(std::string_view s);

// Letters, digits and apostrophes (ASCII or U+2019) are word characters.
bool is_word_char(char32_t c);

// Code point starting at / ending just before a byte offset; 0 at the edges.
char32_t codepoint_at(std::string_view s, std::size_t pos);
char32_t codepoint_before(std::string_view s, std::size_t pos);

bool is_whole_word_at(std::string_view haystack, std::size_t pos,
                      std::size_t len);

// All whole-word, case-insensitive occurrences of `needle` (which must already
// be lowercase), left to right, possibly overlapping.
std::vector<Span> find_whole_word(std::string_view haystack,
                                  std::string_view needle);

bool has_alnum(std::string_view s);

bool is_valid_utf8(std::string_view s);

bool starts_with_upper(std::string_view s);

std::string capitalize_first(std::string_view s);

bool contains_whitespace(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);

}  // namespace precondforge::text
