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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace precondforge {

// Coarse part-of-speech classes. The pipeline only distinguishes the tags it
// filters on.
enum class Pos { kNoun, kVerb, kAdj, kOther };

std::string_view to_string(Pos pos);
Pos parse_pos(std::string_view name);

struct LexiconEntry {
  std::string word;  // lowercase
  Pos pos = Pos::kOther;
  std::vector<std::string> synonyms;
};

// Word list shared by the lexicon tagger and the lexicon mask filler.
// File format: one JSON object per line, {"word", "pos", "synonyms": [...]}.
class Lexicon {
 public:
  static const Lexicon& builtin();
  static Lexicon load(const std::filesystem::path& path);
  static Lexicon parse(std::string_view jsonl, std::string_view origin);

  const LexiconEntry* find(std::string_view lowercase_word) const;
  std::size_t size() const { return entries_.size(); }
  const std::vector<LexiconEntry>& entries() const { return entries_; }

  // Content digest; tagging is a pure function of (text, version).
  const std::string& version() const { return version_; }

 private:
  std::vector<LexiconEntry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
  std::string version_;
};

}  // namespace precondforge
