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

#include "precondforge/corpus.hpp"

#include <unicode/uchar.h>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "precondforge/errors.hpp"

namespace precondforge {

namespace {

bool is_terminal(char c) { return c == '.' || c == '?' || c == '!'; }

bool is_closer(char32_t c) {
  return c == U'"' || c == U'\'' || c == U')' || c == U']' || c == 0x201D ||
         c == 0x2019 || c == 0x00BB;
}

bool is_opener(char32_t c) {
  return c == U'"' || c == U'\'' || c == 0x201C || c == 0x2018 || c == 0x00AB;
}

std::size_t codepoint_length(char32_t c) {
  if (c < 0x80) return 1;
  if (c < 0x800) return 2;
  if (c < 0x10000) return 3;
  return 4;
}

// Token immediately before a period, lowercased, leading punctuation removed.
std::string word_before(std::string_view text, std::size_t period) {
  std::size_t start = period;
  while (start > 0 && text[start - 1] != ' ') --start;
  std::string_view word = text.substr(start, period - start);
  while (!word.empty() && !text::has_alnum(word.substr(0, 1)) &&
         static_cast<unsigned char>(word[0]) < 0x80) {
    word.remove_prefix(1);
  }
  return text::ascii_lower(word);
}

bool is_initial(std::string_view word) {
  return word.size() == 1 && std::isalpha(static_cast<unsigned char>(word[0]));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed for " + path.string());
  return buf.str();
}

}  // namespace

Document make_document(std::string doc_id, std::string_view raw,
                       std::string source) {
  return Document{std::move(doc_id), text::normalize(raw), std::move(source)};
}

std::string make_stmt_id(std::string_view doc_id, std::size_t index) {
  return std::string(doc_id) + ":" + std::to_string(index);
}

bool statement_order(const Statement& a, const Statement& b) {
  if (a.doc_id != b.doc_id) return a.doc_id < b.doc_id;
  return a.index < b.index;
}

Statement make_statement(std::string stmt_id, std::string_view raw,
                         std::string source) {
  Statement s;
  s.text = text::normalize(raw);
  s.stmt_id = std::move(stmt_id);
  s.doc_id = s.stmt_id;
  s.source = std::move(source);
  s.char_span = {0, s.text.size()};
  return s;
}

std::set<std::string> SegmenterOptions::default_abbreviations() {
  return {"mr",   "mrs",  "ms",   "dr",   "prof", "sr",   "jr",  "st",
          "mt",   "vs",   "etc",  "e.g",  "i.e",  "inc",  "ltd", "co",
          "corp", "no",   "fig",  "gen",  "gov",  "sen",  "rep", "lt",
          "col",  "capt", "sgt",  "u.s",  "a.m",  "p.m",  "approx",
          "dept", "est",  "jan",  "feb",  "mar",  "apr",  "jun", "jul",
          "aug",  "sep",  "sept", "oct",  "nov",  "dec"};
}

std::vector<Statement> segment_sentences(const Document& doc,
                                         const SegmenterOptions& options) {
  std::vector<Statement> out;
  const std::string_view t = doc.text;
  const std::size_t n = t.size();
  auto emit = [&](std::size_t begin, std::size_t end) {
    Statement s;
    s.index = out.size();
    s.stmt_id = make_stmt_id(doc.doc_id, s.index);
    s.doc_id = doc.doc_id;
    s.source = doc.source;
    s.char_span = {begin, end};
    s.text = std::string(t.substr(begin, end - begin));
    out.push_back(std::move(s));
  };

  std::size_t start = 0;
  std::size_t i = 0;
  while (i < n) {
    if (!is_terminal(t[i])) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < n && is_terminal(t[j])) ++j;
    while (j < n && is_closer(text::codepoint_at(t, j))) {
      j += codepoint_length(text::codepoint_at(t, j));
    }
    if (j + 1 >= n || t[j] != ' ') {
      i = j;
      continue;
    }
    const char32_t next = text::codepoint_at(t, j + 1);
    const bool boundary_ahead =
        u_isupper(static_cast<UChar32>(next)) || is_opener(next);
    bool abbreviation = false;
    if (t[i] == '.' && j == i + 1) {
      const std::string w = word_before(t, i);
      abbreviation = options.abbreviations.count(w) != 0 || is_initial(w);
    }
    if (boundary_ahead && !abbreviation) {
      emit(start, j);
      start = j + 1;
    }
    i = j;
  }
  if (start < n) emit(start, n);
  return out;
}

CorpusFormat parse_corpus_format(std::string_view name) {
  if (name == "text" || name == "txt" || name == "plain") {
    return CorpusFormat::kPlainText;
  }
  if (name == "jsonl" || name == "ndjson") return CorpusFormat::kJsonLines;
  throw ConfigError("unknown corpus format '" + std::string(name) +
                    "' (expected text|jsonl)");
}

std::vector<Document> load_documents(const std::vector<CorpusInput>& inputs,
                                     const CorpusOptions& options) {
  std::vector<Document> docs;
  std::unordered_set<std::string> ids;
  std::unordered_set<std::string> seen_text;

  auto accept = [&](std::string id, const std::string& raw,
                    const std::string& source, const std::string& where) {
    if (!text::is_valid_utf8(raw)) {
      throw IoError("invalid UTF-8 in " + where);
    }
    if (!ids.insert(id).second) {
      throw ContractError("duplicate document id '" + id + "' in " + where);
    }
    Document doc = make_document(std::move(id), raw, source);
    if (options.max_doc_bytes != 0 && doc.text.size() > options.max_doc_bytes) {
      return;
    }
    if (options.deduplicate && !seen_text.insert(doc.text).second) return;
    docs.push_back(std::move(doc));
  };

  for (const CorpusInput& input : inputs) {
    const std::string source =
        input.name.empty() ? input.path.stem().string() : input.name;
    const std::string content = read_file(input.path);
    if (input.format == CorpusFormat::kPlainText) {
      accept(input.path.filename().string(), content, source,
             input.path.string());
      continue;
    }
    std::size_t line_no = 0;
    for (const std::string& line : text::split(content, '\n')) {
      ++line_no;
      if (text::trim(line).empty()) continue;
      const std::string where =
          input.path.string() + ":" + std::to_string(line_no);
      std::string id;
      std::string body;
      try {
        const auto row = nlohmann::json::parse(line);
        id = row.at("id").get<std::string>();
        body = row.at("text").get<std::string>();
      } catch (const nlohmann::json::exception& e) {
        throw IoError("malformed corpus record at " + where + ": " + e.what());
      }
      accept(std::move(id), body, source, where);
    }
  }
  return docs;
}

std::vector<Statement> segment_corpus(const std::vector<Document>& docs,
                                      const SegmenterOptions& options) {
  std::vector<std::vector<Statement>> per_doc(docs.size());
  const auto count = static_cast<std::int64_t>(docs.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t d = 0; d < count; ++d) {
    per_doc[d] = segment_sentences(docs[d], options);
  }
  std::vector<Statement> out;
  for (auto& batch : per_doc) {
    for (auto& s : batch) out.push_back(std::move(s));
  }
  std::stable_sort(out.begin(), out.end(), statement_order);
  return out;
}

std::vector<Token> tokenize(std::string_view t) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < t.size()) {
    const char32_t c = text::codepoint_at(t, i);
    const std::size_t len = codepoint_length(c);
    if (u_isUWhiteSpace(static_cast<UChar32>(c))) {
      i += len;
      continue;
    }
    if (!u_isalnum(static_cast<UChar32>(c))) {
      tokens.push_back({std::string(t.substr(i, len)), {i, i + len}});
      i += len;
      continue;
    }
    std::size_t j = i + len;
    while (j < t.size()) {
      const char32_t d = text::codepoint_at(t, j);
      if (u_isalnum(static_cast<UChar32>(d))) {
        j += codepoint_length(d);
        continue;
      }
      // Inner apostrophe or hyphen only when followed by a letter/digit.
      if (d == U'\'' || d == 0x2019 || d == U'-') {
        const std::size_t after = j + codepoint_length(d);
        if (u_isalnum(static_cast<UChar32>(text::codepoint_at(t, after)))) {
          j = after;
          continue;
        }
      }
      break;
    }
    tokens.push_back({std::string(t.substr(i, j - i)), {i, j}});
    i = j;
  }
  return tokens;
}

Pos LexiconTagger::tag_word(std::string_view word) const {
  if (!text::has_alnum(word)) return Pos::kOther;
  const std::string lower = text::ascii_lower(word);
  if (const LexiconEntry* e = lexicon_->find(lower)) return e->pos;
  auto ends_with = [&](std::string_view suffix) {
    return lower.size() >= suffix.size() &&
           lower.compare(lower.size() - suffix.size(), suffix.size(),
                         suffix) == 0;
  };
  if (lower.size() >= 5 && (ends_with("ed") || ends_with("ing") ||
                            ends_with("ize") || ends_with("ify"))) {
    return Pos::kVerb;
  }
  return Pos::kOther;
}

std::vector<TaggedToken> LexiconTagger::tag(std::string_view t) const {
  if (text::trim(t).empty()) {
    throw ContractError("tag_tokens: empty text");
  }
  std::vector<TaggedToken> out;
  for (Token& tok : tokenize(t)) {
    TaggedToken tagged;
    tagged.pos = tag_word(tok.surface);
    tagged.surface = std::move(tok.surface);
    tagged.index = out.size();
    tagged.span = tok.span;
    out.push_back(std::move(tagged));
  }
  return out;
}

std::vector<TaggedToken> tag_tokens(std::string_view t, const Tagger& tagger,
                                    std::string_view stmt_id) {
  if (text::trim(t).empty()) {
    throw ContractError("tag_tokens: empty text" +
                        (stmt_id.empty() ? std::string()
                                         : " [stmt " + std::string(stmt_id) + "]"));
  }
  try {
    return tagger.tag(t);
  } catch (const TransportError& e) {
    if (!e.stmt_id().empty() || stmt_id.empty()) throw;
    throw TransportError(e.what(), std::string(stmt_id));
  }
}

}  // namespace precondforge
