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
#include <filesystem>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "precondforge/lexicon.hpp"
#include "precondforge/text.hpp"

namespace precondforge {

struct Document {
  std::string doc_id;
  std::string text;    // normalized
  std::string source;  // corpus name
};

// Normalizes `raw` and wraps it as a Document.
Document make_document(std::string doc_id, std::string_view raw,
                       std::string source);

// One segmented sentence with provenance. `char_span` indexes the owning
// Document's normalized text; `index` is the sentence position in it.
struct Statement {
  std::string stmt_id;
  std::string doc_id;
  std::string source;
  std::size_t index = 0;
  std::string text;
  text::Span char_span;
};

// Builds "doc_id:index"; the canonical output order is (doc_id, index).
std::string make_stmt_id(std::string_view doc_id, std::size_t index);

bool statement_order(const Statement& a, const Statement& b);

// Free-standing statement (not cut from a document), e.g. for fixtures.
Statement make_statement(std::string stmt_id, std::string_view raw,
                         std::string source = "inline");

struct SegmenterOptions {
  // Lowercase tokens, without the trailing period, that never end a sentence.
  std::set<std::string> abbreviations = default_abbreviations();

  static std::set<std::string> default_abbreviations();
};

// Splits at [.?!] (plus trailing closing quotes/brackets) followed by a space
// and an uppercase letter or opening quote. Abbreviations and single-letter
// initials do not split.
std::vector<Statement> segment_sentences(
    const Document& doc, const SegmenterOptions& options = {});

// ---------------------------------------------------------------------------
// Corpus input

enum class CorpusFormat { kPlainText, kJsonLines };

CorpusFormat parse_corpus_format(std::string_view name);

struct CorpusInput {
  std::filesystem::path path;
  CorpusFormat format = CorpusFormat::kPlainText;
  std::string name;  // corpus name; defaults to the file stem
};

struct CorpusOptions {
  bool deduplicate = false;        // drop documents with repeated text
  std::size_t max_doc_bytes = 0;   // 0 = no cap
  SegmenterOptions segmenter;
};

// Reads every input. Plain-text files become one document whose id is the
// file name; JSON-lines files yield one document per {"id", "text"} row.
// Document ids must be unique across the whole run.
std::vector<Document> load_documents(const std::vector<CorpusInput>& inputs,
                                     const CorpusOptions& options = {});

// Segments all documents (parallel over documents) and returns statements in
// (doc_id, index) order.
std::vector<Statement> segment_corpus(const std::vector<Document>& docs,
                                      const SegmenterOptions& options = {});

// ---------------------------------------------------------------------------
// Tokens and tagging

struct Token {
  std::string surface;
  text::Span span;  // into the tokenized text
};

// Words (letters/digits with inner apostrophes and hyphens) and single
// punctuation characters; whitespace separates and is dropped.
std::vector<Token> tokenize(std::string_view text);

struct TaggedToken {
  std::string surface;
  Pos pos = Pos::kOther;
  std::size_t index = 0;
  text::Span span;
};

class Tagger {
 public:
  virtual ~Tagger() = default;
  // Precondition: text is non-empty after trimming.
  virtual std::vector<TaggedToken> tag(std::string_view text) const = 0;
  virtual std::string version() const = 0;
};

// Dictionary tagger over a Lexicon. Unknown words ending in a verbal suffix
// ("-ed", "-ing", "-ize", "-ify", at least five letters) are VERB, other
// unknown words and all punctuation are OTHER.
class LexiconTagger final : public Tagger {
 public:
  explicit LexiconTagger(const Lexicon& lexicon = Lexicon::builtin())
      : lexicon_(&lexicon) {}
  std::vector<TaggedToken> tag(std::string_view text) const override;
  std::string version() const override { return lexicon_->version(); }
  Pos tag_word(std::string_view word) const;

 private:
  const Lexicon* lexicon_;
};

// Tagging entry point used by the pipeline: checks the precondition and
// attaches the statement id to transport failures.
std::vector<TaggedToken> tag_tokens(std::string_view text, const Tagger& tagger,
                                    std::string_view stmt_id = {});

}  // namespace precondforge
