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

#include "precondforge/nliconvert.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "precondforge/errors.hpp"
#include "test_util.hpp"

namespace precondforge {
namespace {

constexpr auto kE = NliLabel::kEntailment;
constexpr auto kC = NliLabel::kContradiction;

TEST(ConvertWeak, LabelsMapToNli) {
  ExtractionRecord r;
  r.stmt_id = "d0-1";
  r.action = "A drum makes noise";
  r.precondition = "you beat it.";
  r.label = Label::kAllow;
  auto n = convert_weak(r);
  EXPECT_EQ(n.record_id, "d0-1");
  EXPECT_EQ(n.hypothesis, "A drum makes noise");
  EXPECT_EQ(n.premise, "you beat it.");
  EXPECT_EQ(n.label, kE);
  EXPECT_EQ(n.source_task, "weak");
  EXPECT_FALSE(n.split);

  r.action = "Pears will rot";
  r.precondition = "refrigerated";
  r.label = Label::kPrevent;
  EXPECT_EQ(convert_weak(r).label, kC);
  r.label = Label::kAbstain;
  EXPECT_THROW(convert_weak(r), ContractError);
}

TEST(ConvertWeak, AugmentedKeepsParentLabel) {
  AugmentationRecord a;
  a.parent_stmt_id = "p";
  a.action = "Cats are pets";
  a.precondition = "they are wild";
  a.label = Label::kPrevent;
  const auto n = convert_weak(a, 2);
  EXPECT_EQ(n.record_id, "p#aug2");
  EXPECT_EQ(n.label, kC);
  EXPECT_EQ(n.hypothesis, "Cats are pets");
  EXPECT_EQ(n.source_task, "weak-augmented");
}

TEST(ConvertDeltaNli, Examples) {
  DeltaNliRow row{"they are farmers",
                  "Two men and a dog are standing among rolling green hills.",
                  "The men are studying a tour map", "weakener"};
  auto n = convert_delta_nli(row, "x");
  EXPECT_EQ(n.hypothesis,
            "they are farmers Two men and a dog are standing among rolling "
            "green hills.");
  EXPECT_EQ(n.premise, "The men are studying a tour map");
  EXPECT_EQ(n.label, kC);
  row.update = "The dog is a sheep dog";
  row.label = "strengthener";
  EXPECT_EQ(convert_delta_nli(row, "x").label, kE);
  row.label = "neutral";
  EXPECT_THROW(convert_delta_nli(row, "x"), ContractError);
  row.label = "weakener";
  row.update = "";
  EXPECT_THROW(convert_delta_nli(row, "x"), ContractError);
}

TEST(ConvertAtomic, RelationMap) {
  auto n = convert_atomic({"PersonX takes a long walk.", "HinderedBy",
                           "It is 10 degrees outside."},
                          "a");
  ASSERT_TRUE(n);
  EXPECT_EQ(n->label, kC);
  EXPECT_EQ(n->hypothesis, "PersonX takes a long walk.");
  EXPECT_EQ(n->premise, "It is 10 degrees outside.");
  EXPECT_EQ(convert_atomic({"h", "xNeed", "t"}, "a")->label, kE);
  EXPECT_EQ(convert_atomic({"h", "Causes", "t"}, "a")->label, kE);
  EXPECT_FALSE(convert_atomic({"h", "xAttr", "t"}, "a"));
}

TEST(ConvertWinoventi, TwoRecords) {
  const auto r = convert_winoventi(
      {"Margaret smelled her bottle of maple syrup and it was sweet. The "
       "syrup is {MASK}.",
       "edible", "malodorous"},
      "w");
  EXPECT_EQ(r[0].hypothesis,
            "Margaret smelled her bottle of maple syrup and it was sweet.");
  EXPECT_EQ(r[0].premise, "The syrup is edible.");
  EXPECT_EQ(r[0].label, kE);
  EXPECT_EQ(r[1].premise, "The syrup is malodorous.");
  EXPECT_EQ(r[1].label, kC);
  EXPECT_NE(r[0].record_id, r[1].record_id);
}

TEST(ConvertWinoventi, MidSentenceMaskKeepsPunctuation) {
  const auto r = convert_winoventi(
      {"Tom opened the fridge. The milk, [MASK], was cold.", "fresh", "sour"}, "w");
  EXPECT_EQ(r[0].premise, "The milk, fresh, was cold.");
  EXPECT_EQ(r[1].premise, "The milk, sour, was cold.");
}

TEST(ConvertWinoventi, Errors) {
  EXPECT_THROW(convert_winoventi({"One. The syrup is sweet.", "a", "b"}, "w"),
               ContractError);
  EXPECT_THROW(convert_winoventi({"Only {MASK} here.", "a", "b"}, "w"),
               ContractError);
}

TEST(ConvertAnion, Examples) {
  const AnionRow row{"PersonX expresses PersonX's delight.",
                     "PersonX expresses PersonX's anger.", "xEffect",
                     "feel happy"};
  EXPECT_EQ(names_for_seed(0).first, "Alice");
  const auto r = convert_anion(row, 0, "n");
  EXPECT_EQ(r[0].hypothesis, "Alice expresses Alice's delight.");
  EXPECT_EQ(r[0].premise, "feel happy.");
  EXPECT_EQ(r[0].label, kE);
  EXPECT_EQ(r[1].hypothesis, "Alice expresses Alice's anger.");
  EXPECT_EQ(r[1].label, kC);

  const auto other = convert_anion(row, 3, "n");
  EXPECT_NE(other[0].hypothesis, r[0].hypothesis);
  EXPECT_EQ(other[0].label, kE);
  EXPECT_EQ(other[1].label, kC);

  const auto intent = convert_anion({"PersonX helps PersonY.", "PersonX ignores PersonY.",
                                     "xIntent", "be kind"},
                                    0, "n");
  EXPECT_EQ(intent[0].hypothesis, "Alice helps Bob.");
  EXPECT_EQ(intent[0].premise, "Alice intends to be kind.");
}

TEST(ConvertAnion, NamesAreDistinctPairs) {
  std::set<std::string> all;
  for (auto n : anion_names()) all.insert(std::string(n));
  EXPECT_EQ(all.size(), 20u);
  for (std::uint64_t s = 0; s < 25; ++s) {
    const auto [x, y] = names_for_seed(s);
    EXPECT_NE(x, y);
    EXPECT_EQ(names_for_seed(s + 10), names_for_seed(s));
  }
}

TEST(ConvertAnion, UnknownRelationListsSupported) {
  try {
    convert_anion({"a", "b", "oReact", "t"}, 0, "n");
    FAIL();
  } catch (const ContractError& e) {
    const std::string msg = e.what();
    for (const char* rel : {"xEffect", "xIntent", "xNeed", "xWant", "xReact"}) {
      EXPECT_NE(msg.find(rel), std::string::npos) << rel;
    }
  }
}

TEST(ConvertAnion, LexicalizationFileExtendsDefaults) {
  testing::TempDir dir;
  const auto path = dir.path() / "lex.json";
  testing::write_file(path, R"({"oReact": "others feel"})");
  const auto lex = load_lexicalization(path);
  EXPECT_EQ(lex.at("oReact"), "others feel");
  EXPECT_EQ(lex.at("xIntent"), "PersonX intends to");
  const auto r = convert_anion({"PersonX wins.", "PersonX loses.", "oReact", "happy"},
                               1, "n", lex);
  EXPECT_EQ(r[0].premise, "others feel happy.");
  EXPECT_THROW(load_lexicalization(dir.path() / "missing.json"), IoError);
}

TEST(ConvertPaco, Examples) {
  auto n = convert_paco(
      {"A net is used for catching fish.", "You are in a desert.", "Disabling"}, "p");
  EXPECT_EQ(n.label, kC);
  EXPECT_EQ(n.hypothesis, "A net is used for catching fish.");
  EXPECT_EQ(n.premise, "You are in a desert.");
  EXPECT_EQ(convert_paco({"s", "p", "Enabling"}, "p").label, kE);
  EXPECT_THROW(convert_paco({"s", "", "Enabling"}, "p"), ContractError);
  EXPECT_THROW(convert_paco({"s", "p", "Neutral"}, "p"), ContractError);
}

std::vector<NliRecord> numbered(std::size_t n) {
  std::vector<NliRecord> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].record_id = "r" + std::to_string(i);
    out[i].hypothesis = "h";
    out[i].premise = "p";
  }
  return out;
}

SplitSizes count(const std::vector<NliRecord>& recs) {
  SplitSizes s;
  for (const auto& r : recs) {
    if (!r.split) ADD_FAILURE() << "untagged record " << r.record_id;
    else if (*r.split == Split::kTrain) ++s.train;
    else if (*r.split == Split::kDev) ++s.dev;
    else ++s.test;
  }
  return s;
}

TEST(Split, HundredRecords) {
  EXPECT_EQ(split_sizes(100, {}), (SplitSizes{45, 15, 40}));
  const auto out = split(numbered(100), {}, 42);
  EXPECT_EQ(count(out), (SplitSizes{45, 15, 40}));
  // Input order and content are preserved.
  for (std::size_t i = 0; i < out.size(); ++i) {
    EXPECT_EQ(out[i].record_id, "r" + std::to_string(i));
  }
}

TEST(Split, EmptyInput) {
  EXPECT_EQ(split_sizes(0, {}), (SplitSizes{0, 0, 0}));
  EXPECT_TRUE(split({}, {}, 1).empty());
}

TEST(Split, DeterministicPerSeed) {
  const auto a = split(numbered(200), {}, 7);
  EXPECT_EQ(a, split(numbered(200), {}, 7));
  const auto b = split(numbered(200), {}, 8);
  EXPECT_NE(a, b);
  EXPECT_EQ(count(a), count(b));
}

TEST(Split, SizesFollowFloorRule) {
  for (std::size_t n = 0; n <= 2000; ++n) {
    const auto s = split_sizes(n, {});
    ASSERT_EQ(s.train + s.dev + s.test, n);
    // Exact rational arithmetic: floor(45n/100), floor(15n/100).
    ASSERT_EQ(s.train, 45 * n / 100) << n;
    ASSERT_EQ(s.dev, 15 * n / 100) << n;
    ASSERT_LE(std::abs(static_cast<double>(s.train) - 0.45 * n), 1.0);
    ASSERT_LE(std::abs(static_cast<double>(s.dev) - 0.15 * n), 1.0);
    // TEST absorbs both floor remainders.
    ASSERT_LT(std::abs(static_cast<double>(s.test) - 0.40 * n), 2.0);
  }
}

TEST(Split, RatioParsingAndValidation) {
  const auto r = parse_ratios("0.8,0.1,0.1");
  EXPECT_DOUBLE_EQ(r.train, 0.8);
  EXPECT_EQ(split_sizes(10, r), (SplitSizes{8, 1, 1}));
  EXPECT_THROW(parse_ratios("0.5,0.5"), ConfigError);
  EXPECT_THROW(parse_ratios("a,b,c"), ConfigError);
  EXPECT_THROW(split_sizes(10, {0.5, 0.3, 0.3}), ConfigError);
  EXPECT_THROW(split(numbered(3), {0.5, 0.6, -0.1}, 0), ConfigError);
}

}  // namespace
}  // namespace precondforge
