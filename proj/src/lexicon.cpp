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

#include "precondforge/lexicon.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "precondforge/errors.hpp"
#include "precondforge/rng.hpp"
#include "precondforge/text.hpp"

namespace precondforge {

namespace detail {
extern const char* const kBuiltinLexicon;
}

std::string_view to_string(Pos pos) {
  switch (pos) {
    case Pos::kNoun: return "NOUN";
    case Pos::kVerb: return "VERB";
    case Pos::kAdj: return "ADJ";
    case Pos::kOther: return "OTHER";
  }
  return "OTHER";
}

Pos parse_pos(std::string_view name) {
  if (name == "NOUN") return Pos::kNoun;
  if (name == "VERB") return Pos::kVerb;
  if (name == "ADJ") return Pos::kAdj;
  if (name == "OTHER") return Pos::kOther;
  throw ContractError("unknown POS tag '" + std::string(name) + "'");
}

const Lexicon& Lexicon::builtin() {
  static const Lexicon lexicon = parse(detail::kBuiltinLexicon, "builtin");
  return lexicon;
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open lexicon " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

Lexicon Lexicon::parse(std::string_view jsonl, std::string_view origin) {
  Lexicon lex;
  std::size_t line_no = 0;
  for (const std::string& raw : text::split(jsonl, '\n')) {
    ++line_no;
    const std::string_view line = text::trim(raw);
    if (line.empty()) continue;
    nlohmann::json row;
    try {
      row = nlohmann::json::parse(line);
      LexiconEntry entry;
      entry.word = text::ascii_lower(row.at("word").get<std::string>());
      entry.pos = parse_pos(row.at("pos").get<std::string>());
      if (row.contains("synonyms")) {
        for (const auto& s : row["synonyms"]) {
          entry.synonyms.push_back(s.get<std::string>());
        }
      }
      if (lex.index_.count(entry.word) != 0) {
        throw ContractError("duplicate word '" + entry.word + "'");
      }
      lex.index_.emplace(entry.word, lex.entries_.size());
      lex.entries_.push_back(std::move(entry));
    } catch (const nlohmann::json::exception& e) {
      throw IoError("malformed lexicon row " + std::string(origin) + ":" +
                    std::to_string(line_no) + ": " + e.what());
    } catch (const ContractError& e) {
      throw IoError("bad lexicon row " + std::string(origin) + ":" +
                    std::to_string(line_no) + ": " + e.what());
    }
  }
  std::ostringstream v;
  v << "lexicon-" << std::hex << fnv1a64(jsonl);
  lex.version_ = v.str();
  return lex;
}

const LexiconEntry* Lexicon::find(std::string_view lowercase_word) const {
  auto it = index_.find(std::string(lowercase_word));
  return it == index_.end() ? nullptr : &entries_[it->second];
}

}  // namespace precondforge
