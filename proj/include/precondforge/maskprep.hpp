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

#include <string>
#include <string_view>
#include <vector>

#include "precondforge/corpus.hpp"
#include "precondforge/patterns.hpp"

namespace precondforge {

// Allowing / preventing conjunction lists targeted by biased masking.
// Duplicates in the source lists are removed; order is first appearance.
struct ConjunctionLists {
  std::vector<std::string> allow;
  std::vector<std::string> prevent;

  static ConjunctionLists builtin();
};

struct ConjunctionSpan {
  text::Span span;
  std::string surface;  // list entry (lowercase)
  Polarity polarity = Polarity::kAllow;
};

// Whole-word occurrences, scanning left to right; at each offset the longest
// list entry wins and the scan resumes after it, so spans never overlap.
std::vector<ConjunctionSpan> find_conjunction_spans(
    std::string_view text, const ConjunctionLists& lists);

struct MaskedTrainingRecord {
  std::string stmt_id;
  std::string masked_text;
  std::string target;  // masked substring, original casing
  Polarity polarity = Polarity::kAllow;

  friend bool operator==(const MaskedTrainingRecord&,
                         const MaskedTrainingRecord&) = default;
};

// One record per span; each masks a single occurrence with one placeholder.
// Statements that already contain the placeholder literal produce no records
// (their masked text would be ambiguous).
std::vector<MaskedTrainingRecord> emit_masked_records(
    const Statement& stmt, const std::vector<ConjunctionSpan>& spans,
    std::string_view placeholder = "[MASK]");

// Inverse of masking: replaces the single placeholder with the target.
std::string unmask(const MaskedTrainingRecord& record,
                   std::string_view placeholder = "[MASK]");

struct MaskprepResult {
  std::vector<MaskedTrainingRecord> records;
  std::size_t statements = 0;
  std::size_t placeholder_collisions = 0;
};

// Statement-parallel over the corpus; output in statement order.
MaskprepResult run_maskprep(const std::vector<Statement>& statements,
                            const ConjunctionLists& lists,
                            std::string_view placeholder = "[MASK]");

}  // namespace precondforge
