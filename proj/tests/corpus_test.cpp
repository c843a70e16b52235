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

#include <gtest/gtest.h>

#include "precondforge/errors.hpp"
#include "precondforge/records.hpp"
#include "test_util.hpp"

namespace precondforge {
namespace {

std::vector<std::string> texts(const std::vector<Statement>& stmts) {
  std::vector<std::string> out;
  for (const auto& s : stmts) out.push_back(s.text);
  return out;
}

TEST(Segment, SplitsAtSentenceEnd) {
  const auto doc = make_document(
      "d", "Pears will rot if not refrigerated. A drum makes noise only if "
           "you beat it.",
      "c");
  EXPECT_EQ(texts(segment_sentences(doc)),
            (std::vector<std::string>{
                "Pears will rot if not refrigerated.",
                "A drum makes noise only if you beat it."}));
}

TEST(Segment, EmptyDocument) {
  EXPECT_TRUE(segment_sentences(make_document("d", "", "c")).empty());
  EXPECT_TRUE(segment_sentences(make_document("d", "   ", "c")).empty());
}

TEST(Segment, AbbreviationsDoNotSplit) {
  const auto doc = make_document("d", "Dr. Smith ran. He stopped.", "c");
  EXPECT_EQ(texts(segment_sentences(doc)),
            (std::vector<std::string>{"Dr. Smith ran.", "He stopped."}));
  const auto initials =
      make_document("d", "J. R. Tolkien wrote. It sold.", "c");
  EXPECT_EQ(segment_sentences(initials).size(), 2u);
}

TEST(Segment, QuotesAndLowercase) {
  const auto doc = make_document(
      "d", "He said \"stop.\" Then he left. it was 3.5 km away! \"Fine.\"",
      "c");
  EXPECT_EQ(texts(segment_sentences(doc)),
            (std::vector<std::string>{"He said \"stop.\"",
                                      "Then he left. it was 3.5 km away!",
                                      "\"Fine.\""}));
}

TEST(Segment, SpansCoverTextAndAreIdempotent) {
  const std::string raw =
      "Dogs are pets unless they are wild. Mr. Lee agreed? Yes! Cats too.";
  const auto doc = make_document("d", raw, "c");
  const auto stmts = segment_sentences(doc);
  ASSERT_EQ(stmts.size(), 4u);
  std::size_t covered = 0;
  for (std::size_t i = 0; i < stmts.size(); ++i) {
    const auto& s = stmts[i];
    EXPECT_EQ(s.index, i);
    EXPECT_EQ(s.stmt_id, "d:" + std::to_string(i));
    EXPECT_EQ(doc.text.substr(s.char_span.begin, s.char_span.size()), s.text);
    if (i > 0) EXPECT_GT(s.char_span.begin, stmts[i - 1].char_span.end);
    covered += s.text.size();
    const auto again = segment_sentences(make_document("x", s.text, "c"));
    ASSERT_EQ(again.size(), 1u);
    EXPECT_EQ(again[0].text, s.text);
  }
  // Separators are single spaces after normalization.
  EXPECT_EQ(covered + stmts.size() - 1, doc.text.size());
}

TEST(Tokenize, WordsAndPunctuation) {
  const auto toks = tokenize("Pears won't rot, well-kept.");
  std::vector<std::string> surf;
  for (const auto& t : toks) surf.push_back(t.surface);
  EXPECT_EQ(surf, (std::vector<std::string>{"Pears", "won't", "rot", ",",
                                            "well-kept", "."}));
}

TEST(Tagger, LexiconTags) {
  const LexiconTagger tagger;
  const auto tags = tag_tokens("Dogs are pets", tagger);
  ASSERT_EQ(tags.size(), 3u);
  EXPECT_EQ(tags[0].pos, Pos::kNoun);
  EXPECT_EQ(tags[1].pos, Pos::kVerb);
  EXPECT_EQ(tags[2].pos, Pos::kNoun);
  const auto r = tag_tokens("refrigerated", tagger);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].pos, Pos::kVerb);
  EXPECT_THROW(tag_tokens("", tagger), ContractError);
  EXPECT_THROW(tag_tokens("  ", tagger), ContractError);
}

TEST(Tagger, SuffixHeuristicNeedsFiveLetters) {
  const LexiconTagger tagger;
  EXPECT_EQ(tagger.tag_word("zorbled"), Pos::kVerb);
  EXPECT_EQ(tagger.tag_word("zing"), Pos::kOther);
  // Listed words win over the suffix rule.
  EXPECT_EQ(tagger.tag_word("something"), Pos::kOther);
  EXPECT_EQ(tagger.tag_word(","), Pos::kOther);
}

TEST(Tagger, Deterministic) {
  const LexiconTagger tagger;
  const std::string t = "The red ball rolled under the old table.";
  const auto a = tagger.tag(t);
  const auto b = tagger.tag(t);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].pos, b[i].pos);
}

TEST(Corpus, LoadsTextAndJsonLines) {
  testing::TempDir dir;
  testing::write_file(dir.file("a.txt"), "One here. Two  there.\n");
  testing::write_file(dir.file("b.jsonl"),
                      "{\"id\":\"x\",\"text\":\"Alpha. Beta.\"}\n\n"
                      "{\"id\":\"y\",\"text\":\"Gamma.\"}\n");
  const auto docs = load_documents(
      {{dir.file("a.txt"), CorpusFormat::kPlainText, "a"},
       {dir.file("b.jsonl"), CorpusFormat::kJsonLines, "b"}});
  ASSERT_EQ(docs.size(), 3u);
  EXPECT_EQ(docs[0].text, "One here. Two there.");
  const auto stmts = segment_corpus(docs);
  ASSERT_EQ(stmts.size(), 5u);
  for (std::size_t i = 1; i < stmts.size(); ++i) {
    EXPECT_TRUE(statement_order(stmts[i - 1], stmts[i]));
  }
}

TEST(Corpus, Errors) {
  testing::TempDir dir;
  testing::write_file(dir.file("d.jsonl"),
                      "{\"id\":\"x\",\"text\":\"A.\"}\n"
                      "{\"id\":\"x\",\"text\":\"B.\"}\n");
  EXPECT_THROW(load_documents({{dir.file("d.jsonl"), CorpusFormat::kJsonLines,
                                "d"}}),
               ContractError);
  testing::write_file(dir.file("bad.txt"), "caf\xC3");
  EXPECT_THROW(
      load_documents({{dir.file("bad.txt"), CorpusFormat::kPlainText, "b"}}),
      IoError);
  EXPECT_THROW(
      load_documents({{dir.file("missing"), CorpusFormat::kPlainText, "m"}}),
      IoError);
}

// Expected tags come from an independent tokenizer/tagger run over the
// shared lexicon file; the same fixture backs the service's /tag parity.
TEST(LexiconTagger, MatchesParityFixture) {
  const auto rows =
      read_jsonl(std::string(PRECONDFORGE_FIXTURES) + "/tagger_parity.jsonl");
  ASSERT_EQ(rows.size(), 50u);
  const Lexicon lex = Lexicon::load(PRECONDFORGE_LEXICON_FILE);
  EXPECT_EQ(lex.version(), Lexicon::builtin().version());
  LexiconTagger tagger(lex);
  for (const auto& row : rows) {
    const std::string text = row["text"];
    const auto got = tagger.tag(text);
    const auto& want = row["tokens"];
    ASSERT_EQ(got.size(), want.size()) << text;
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(got[i].surface, want[i]["surface"]) << text;
      EXPECT_EQ(to_string(got[i].pos), want[i]["pos"].get<std::string>())
          << text << " token " << i;
    }
  }
}

}  // namespace
}  // namespace precondforge
