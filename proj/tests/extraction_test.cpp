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

#include "precondforge/extraction.hpp"

#include <cctype>
#include <random>

#include <gtest/gtest.h>

#include "precondforge/errors.hpp"
#include "test_util.hpp"

namespace precondforge {
namespace {

const std::string kTrees =
    "Trees continue to grow for all their lives except in winter if they are "
    "not evergreen.";

PatternMatch match_of(const PatternRegistry& reg, std::string_view id,
                      const Statement& stmt) {
  const std::size_t idx = *reg.index_of(id);
  const auto v = apply_lf(reg[idx], stmt);
  EXPECT_NE(v.value, Label::kAbstain) << id;
  return {idx, *v.match_span};
}

TEST(Resolve, PrecisionPriority) {
  const auto reg = all_enabled(PatternRegistry::builtin());
  const auto stmt = make_statement("t", kTrees);
  const auto m = reg.index_of("except");
  const std::vector<PatternMatch> matches = {match_of(reg, "if", stmt),
                                             match_of(reg, "except", stmt)};
  EXPECT_EQ(resolve_ambiguity(stmt, matches, reg).registry_index, *m);
  EXPECT_EQ(resolve_ambiguity(stmt, {matches[0]}, reg).registry_index,
            *reg.index_of("if"));
}

TEST(Resolve, LongestSurfaceWinsOnOverlap) {
  const auto reg = all_enabled(PatternRegistry::builtin());
  const auto stmt = make_statement("p", "Pears will rot if not refrigerated");
  const std::size_t if_idx = *reg.index_of("if");
  const std::size_t ifnot_idx = *reg.index_of("if not");
  const std::vector<PatternMatch> matches = {{if_idx, {15, 17}},
                                             {ifnot_idx, {15, 21}}};
  EXPECT_EQ(resolve_ambiguity(stmt, matches, reg).registry_index, ifnot_idx);
}

TEST(Resolve, ChosenPrecisionDominates) {
  const auto reg = all_enabled(PatternRegistry::builtin());
  const auto stmt = make_statement(
      "x", "Stay in case it rains unless it is warm except on Sundays.");
  std::vector<PatternMatch> matches;
  for (const char* id : {"in case", "unless", "except"}) {
    matches.push_back(match_of(reg, id, stmt));
  }
  const auto chosen = resolve_ambiguity(stmt, matches, reg);
  for (const auto& m : matches) {
    EXPECT_GE(reg[chosen.registry_index].priority(),
              reg[m.registry_index].priority());
  }
  EXPECT_EQ(reg[chosen.registry_index].lf_id, "unless");
}

TEST(ExtractPair, Infix) {
  const auto reg = all_enabled(PatternRegistry::builtin());
  for (const auto& row : testing::golden_rows()) {
    const auto stmt = make_statement("g", row.text);
    const auto m = match_of(reg, row.lf, stmt);
    const auto pair = extract_pair(stmt, reg[m.registry_index], m.span);
    EXPECT_EQ(pair.action, row.action);
    EXPECT_EQ(pair.precondition, row.precondition);
    // Reconstruction up to the conjunction's casing.
    EXPECT_EQ(pair.action + " " + row.lf + " " + pair.precondition, row.text);
  }
}

TEST(ExtractPair, Templates) {
  const auto reg = all_enabled(PatternRegistry::builtin());
  const auto wrap = make_statement(
      "w", "The statement \"glass can break\" is true because it is brittle.");
  const auto m = match_of(reg, "statement is true", wrap);
  const auto pair = extract_pair(wrap, reg[m.registry_index], m.span);
  EXPECT_EQ(pair.action, "glass can break");
  EXPECT_EQ(pair.precondition, "it is brittle");

  const auto makes =
      make_statement("m", "Rain makes the crops growing possible.");
  const auto mm = match_of(reg, "makes possible", makes);
  const auto mp = extract_pair(makes, reg[mm.registry_index], mm.span);
  EXPECT_EQ(mp.precondition, "Rain");
  EXPECT_EQ(mp.action, "the crops growing");
}

TEST(ExtractPair, FirstOccurrenceSplit) {
  const auto reg = all_enabled(PatternRegistry::builtin());
  const auto stmt =
      make_statement("r", "Go out unless it rains unless you have a coat.");
  const auto m = match_of(reg, "unless", stmt);
  const auto pair = extract_pair(stmt, reg[m.registry_index], m.span);
  EXPECT_EQ(pair.action, "Go out");
  EXPECT_EQ(pair.precondition, "it rains unless you have a coat.");
}

TEST(ExtractPair, BadSpanCarriesId) {
  const auto reg = all_enabled(PatternRegistry::builtin());
  const auto stmt = make_statement("bad-1", "Pools are cold unless heated.");
  const auto& unless = reg[*reg.index_of("unless")];
  try {
    extract_pair(stmt, unless, {100, 106});
    FAIL() << "no throw";
  } catch (const ExtractionError& e) {
    EXPECT_NE(std::string(e.what()).find("bad-1"), std::string::npos);
  }
  EXPECT_THROW(extract_pair(stmt, unless, {0, 0}), ExtractionError);
}

// Independent restatement of the question rule.
bool oracle_question(const std::string& s) {
  if (!s.empty() && s.back() == '?') return true;
  std::string first;
  for (char c : s) {
    if (!std::isalpha(static_cast<unsigned char>(c))) {
      if (!first.empty()) break;
      continue;
    }
    first += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  for (const char* w : {"who", "what", "when", "where", "why", "how", "is",
                        "can", "does", "do"}) {
    if (first == w) return true;
  }
  return false;
}

TEST(Filters, Question) {
  EXPECT_TRUE(is_question("How do I know if he is sick?"));
  EXPECT_FALSE(is_question("Pears will rot if not refrigerated"));
  EXPECT_TRUE(is_question("Do pears rot"));
  EXPECT_FALSE(is_question("Doors open if pushed."));
  EXPECT_TRUE(is_question("They rot, right?"));
  EXPECT_EQ(interrogative_words().size(), 10u);
  for (const char* s : {"Is it", "Island rules", "Canning jars.", "can we"}) {
    EXPECT_EQ(is_question(s), oracle_question(s)) << s;
  }
}

TEST(Filters, Verb) {
  const LexiconTagger tagger;
  EXPECT_TRUE(precondition_has_verb("you beat it.", tagger));
  EXPECT_FALSE(precondition_has_verb("the red ball", tagger));
  EXPECT_TRUE(precondition_has_verb("refrigerated", tagger));
  EXPECT_THROW(precondition_has_verb("", tagger), ContractError);
}

TEST(RunExtraction, GoldenSentences) {
  std::vector<std::string> texts;
  for (const auto& row : testing::golden_rows()) texts.push_back(row.text);
  const auto reg = all_enabled(PatternRegistry::builtin());
  const auto result =
      run_extraction(testing::statements(texts), reg, LexiconTagger());
  ASSERT_EQ(result.records.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& row = testing::golden_rows()[i];
    const auto& rec = result.records[i];
    EXPECT_EQ(rec.action, row.action);
    EXPECT_EQ(rec.precondition, row.precondition);
    EXPECT_EQ(to_string(rec.label), row.label);
    EXPECT_EQ(rec.lf_id, row.lf);
  }
  EXPECT_EQ(result.report.allow, 2u);
  EXPECT_EQ(result.report.prevent, 2u);
}

TEST(RunExtraction, DefaultThresholdDropsUnannotatedRows) {
  std::vector<std::string> texts;
  for (const auto& row : testing::golden_rows()) texts.push_back(row.text);
  const auto result = run_extraction(testing::statements(texts),
                                     PatternRegistry::builtin(),
                                     LexiconTagger());
  ASSERT_EQ(result.records.size(), 2u);
  EXPECT_EQ(result.records[0].lf_id, "if not");
  EXPECT_EQ(result.records[1].lf_id, "unless");
}

TEST(RunExtraction, AmbiguousSentenceAtDefaultAndRelaxedThreshold) {
  const auto stmts = testing::statements({kTrees});
  for (double t : {0.5, 0.7}) {
    const auto reg = filter_registry(PatternRegistry::builtin(), t);
    const auto r = run_extraction(stmts, reg, LexiconTagger());
    ASSERT_EQ(r.records.size(), 1u) << t;
    EXPECT_EQ(r.records[0].lf_id, "except");
    EXPECT_EQ(r.records[0].label, Label::kPrevent);
    EXPECT_EQ(r.records[0].action, "Trees continue to grow for all their lives");
  }
}

TEST(RunExtraction, FiltersAndCounters) {
  const auto reg = all_enabled(PatternRegistry::builtin());
  const auto stmts = testing::statements(
      {"How do I know if he is sick?", "Stay inside unless the red ball.",
       "Dogs are pets.", "Pools are cold unless they are heated."});
  const auto r = run_extraction(stmts, reg, LexiconTagger());
  EXPECT_EQ(r.report.input, 4u);
  EXPECT_EQ(r.report.matched, 3u);
  EXPECT_EQ(r.report.dropped_question, 1u);
  EXPECT_EQ(r.report.dropped_verb, 1u);
  EXPECT_EQ(r.report.emitted, 1u);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].stmt_id, "s3");

  const auto empty = run_extraction({}, reg, LexiconTagger());
  EXPECT_TRUE(empty.records.empty());
  EXPECT_EQ(empty.report, RunReport{});
}

std::vector<Statement> random_statements(std::size_t n, std::uint64_t seed) {
  static const std::vector<std::string> heads = {
      "Dogs bark", "Pears will rot", "How do pools stay cold",
      "The red ball", "Do cats sleep", "Swimming pools have cold water"};
  static const std::vector<std::string> conj = {
      "if", "if not", "unless", "except", "in case", "only if", "but", "and"};
  static const std::vector<std::string> tails = {
      "they are heated.", "the red ball.", "refrigerated", "it rains?",
      "you beat it.", "the old table"};
  std::mt19937_64 rng(seed);
  std::vector<Statement> out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string s = heads[rng() % heads.size()] + " " +
                          conj[rng() % conj.size()] + " " +
                          tails[rng() % tails.size()];
    out.push_back(make_statement("q" + std::to_string(i), s));
  }
  return out;
}

TEST(RunExtraction, CountersMatchBruteForce) {
  const auto reg = all_enabled(PatternRegistry::builtin());
  const LexiconTagger tagger;
  const auto stmts = random_statements(3000, 17);
  const auto r = run_extraction(stmts, reg, tagger);
  RunReport want;
  want.input = stmts.size();
  for (const auto& s : stmts) {
    std::vector<PatternMatch> ms;
    for (std::size_t i : reg.enabled_indices()) {
      const auto v = apply_lf(reg[i], s);
      if (v.value != Label::kAbstain) ms.push_back({i, *v.match_span});
    }
    if (ms.empty()) continue;
    ++want.matched;
    if (oracle_question(s.text)) {
      ++want.dropped_question;
      continue;
    }
    const auto chosen = resolve_ambiguity(s, ms, reg);
    const auto pair = extract_pair(s, reg[chosen.registry_index], chosen.span);
    if (!precondition_has_verb(pair.precondition, tagger)) {
      ++want.dropped_verb;
      continue;
    }
    ++want.emitted;
    (reg[chosen.registry_index].polarity == Polarity::kAllow ? want.allow
                                                             : want.prevent)++;
  }
  EXPECT_EQ(r.report, want);
  EXPECT_EQ(r.records.size(), want.emitted);
}

TEST(RunExtraction, ParallelMatchesSerial) {
  const auto reg = all_enabled(PatternRegistry::builtin());
  const auto stmts = random_statements(2000, 23);
  const auto a = run_extraction(stmts, reg, LexiconTagger());
  const auto b = reference::run_extraction_serial(stmts, reg, LexiconTagger());
  EXPECT_EQ(a.records, b.records);
  EXPECT_EQ(a.report, b.report);
}

}  // namespace
}  // namespace precondforge
