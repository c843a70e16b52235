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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "precondforge/corpus.hpp"
#include "precondforge/patterns.hpp"

namespace precondforge {

struct ExtractionRecord {
  std::string stmt_id;
  std::string action;
  std::string precondition;
  Label label = Label::kAllow;  // ALLOW or PREVENT
  std::string lf_id;
  std::optional<double> precision;
  std::string source;
  std::string text;  // full statement, needed downstream by augmentation

  friend bool operator==(const ExtractionRecord&,
                         const ExtractionRecord&) = default;
};

struct ActionPrecondition {
  std::string action;
  std::string precondition;
  friend bool operator==(const ActionPrecondition&,
                         const ActionPrecondition&) = default;
};

// Picks one match. Matches whose span overlaps a match with a longer surface
// are discarded first; then the highest precision wins, ties going to the
// earlier registry entry.
PatternMatch resolve_ambiguity(const Statement& stmt,
                               const std::vector<PatternMatch>& matches,
                               const PatternRegistry& registry);

// Splits a statement around the chosen pattern occurrence. Sides are trimmed
// of whitespace only; the precondition keeps its trailing punctuation except
// for the wrapped templates, whose final period is part of the template.
ActionPrecondition extract_pair(const Statement& stmt,
                                const PatternSpec& pattern, text::Span span);

// Ends with '?' or starts with an interrogative word.
bool is_question(std::string_view sentence);
bool is_question(const Statement& stmt);

const std::vector<std::string>& interrogative_words();

bool precondition_has_verb(std::string_view precondition, const Tagger& tagger,
                           std::string_view stmt_id = {});

struct RunReport {
  std::size_t input = 0;
  std::size_t matched = 0;
  std::size_t dropped_question = 0;
  std::size_t dropped_verb = 0;
  std::size_t emitted = 0;
  std::size_t allow = 0;
  std::size_t prevent = 0;

  RunReport& operator+=(const RunReport& o);
  friend bool operator==(const RunReport&, const RunReport&) = default;
  nlohmann::ordered_json to_json() const;
};

struct ExtractionResult {
  std::vector<ExtractionRecord> records;
  RunReport report;
};

// Statement-parallel. `statements` are processed in (doc_id, index) order and
// records come out in that order; counters are exact integer sums.
ExtractionResult run_extraction(const std::vector<Statement>& statements,
                                const PatternRegistry& registry,
                                const Tagger& tagger);

namespace reference {
ExtractionResult run_extraction_serial(const std::vector<Statement>& statements,
                                       const PatternRegistry& registry,
                                       const Tagger& tagger);
}  // namespace reference

}  // namespace precondforge
