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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "precondforge/corpus.hpp"
#include "precondforge/text.hpp"

namespace precondforge {

// Shape of sentence a labeling function recognises.
//   kInfix           {action} <surface> {precondition}
//   kPrecondMakes    {precondition} makes {action} possible.
//   kWrapStatement   The statement "{event}" is true because {precondition}.
//   kWrapUnderstand  To understand the event "{event}", it is important to
//                    know that {precondition}.
enum class Template { kInfix, kPrecondMakes, kWrapStatement, kWrapUnderstand };

enum class Polarity { kAllow, kPrevent };

// Cell value of the label matrix. Numeric values are stable; the matrix
// stores them as bytes.
enum class Label : std::uint8_t { kAbstain = 0, kAllow = 1, kPrevent = 2 };

std::string_view to_string(Template t);
std::string_view to_string(Polarity p);
std::string_view to_string(Label l);
Template parse_template(std::string_view name);
Polarity parse_polarity(std::string_view name);
Label parse_label(std::string_view name);
Label to_label(Polarity p);

struct PatternSpec {
  std::string lf_id;
  std::string surface;  // lowercase, possibly multi-word
  Template tmpl = Template::kInfix;
  Polarity polarity = Polarity::kAllow;
  std::optional<double> precision;
  bool enabled = true;

  // Priority key for ambiguity resolution; absent precision ranks lowest.
  double priority() const { return precision ? *precision : -1.0; }
};

// Throws ContractError when a spec breaks its invariants.
void validate(const PatternSpec& spec);

class PatternRegistry {
 public:
  PatternRegistry() = default;
  PatternRegistry(std::vector<PatternSpec> patterns, double threshold = 0.7);

  // The 23-row pattern table with annotated precisions, filtered at the
  // default threshold 0.7. Patterns without a precision are always disabled.
  static PatternRegistry builtin();
  static PatternRegistry load(const std::filesystem::path& path);
  static PatternRegistry from_json(const nlohmann::json& doc);
  nlohmann::ordered_json to_json() const;

  const std::vector<PatternSpec>& patterns() const { return patterns_; }
  double precision_threshold() const { return threshold_; }
  std::size_t size() const { return patterns_.size(); }
  const PatternSpec& operator[](std::size_t i) const { return patterns_[i]; }

  std::optional<std::size_t> index_of(std::string_view lf_id) const;
  std::vector<std::size_t> enabled_indices() const;
  std::vector<std::string> enabled_ids() const;

  // Flip one pattern's enabled flag (used for fixtures and CLI overrides).
  void set_enabled(std::string_view lf_id, bool enabled);

 private:
  std::vector<PatternSpec> patterns_;
  double threshold_ = 0.7;
};

// enabled <=> precision present and precision >= threshold. Order preserved.
PatternRegistry filter_registry(const PatternRegistry& registry,
                                double threshold);

// Every pattern enabled regardless of precision.
PatternRegistry all_enabled(const PatternRegistry& registry);

struct Verdict {
  Label value = Label::kAbstain;
  std::optional<text::Span> match_span;  // present iff value != kAbstain
};

// One pattern against one statement. INFIX needs a whole-word,
// case-insensitive occurrence with content on both sides; the first such
// occurrence is reported. Template patterns must match the whole sentence.
Verdict apply_lf(const PatternSpec& pattern, const Statement& stmt);

struct PatternMatch {
  std::size_t registry_index = 0;
  text::Span span;
};

// Matches a statement against all enabled patterns of a registry at once.
// An INFIX occurrence inside an occurrence of a longer enabled INFIX surface
// ("if" inside "if not") belongs to the longer pattern and is skipped.
class RowMatcher {
 public:
  explicit RowMatcher(const PatternRegistry& registry);

  const PatternRegistry& registry() const { return *registry_; }
  const std::vector<std::size_t>& columns() const { return columns_; }

  // One verdict per enabled column.
  std::vector<Verdict> verdicts(const Statement& stmt) const;
  std::vector<PatternMatch> matches(const Statement& stmt) const;

 private:
  Verdict column_verdict(std::size_t column, const Statement& stmt) const;

  const PatternRegistry* registry_;
  std::vector<std::size_t> columns_;
  std::vector<std::vector<std::string>> shadowing_;  // per column
};

// Dense statements x enabled-LF grid.
class LabelMatrix {
 public:
  LabelMatrix() = default;
  LabelMatrix(std::vector<std::string> row_ids, std::vector<std::string> lf_ids);

  std::size_t rows() const { return row_ids_.size(); }
  std::size_t cols() const { return lf_ids_.size(); }
  const std::vector<std::string>& row_ids() const { return row_ids_; }
  const std::vector<std::string>& lf_ids() const { return lf_ids_; }

  Label at(std::size_t i, std::size_t j) const { return cells_[i * cols() + j]; }
  void set(std::size_t i, std::size_t j, Label l) { cells_[i * cols() + j] = l; }
  const Label* row(std::size_t i) const { return cells_.data() + i * cols(); }

  friend bool operator==(const LabelMatrix&, const LabelMatrix&) = default;

 private:
  std::vector<std::string> row_ids_;
  std::vector<std::string> lf_ids_;
  std::vector<Label> cells_;
};

// Rows are filled in parallel; the result does not depend on thread count.
LabelMatrix build_label_matrix(const std::vector<Statement>& statements,
                               const PatternRegistry& registry);

namespace reference {
LabelMatrix build_label_matrix_serial(const std::vector<Statement>& statements,
                                      const PatternRegistry& registry);
}  // namespace reference

// Template slot recovery for the wrapped-sentence patterns.
struct WrapSlots {
  std::string event;
  std::string precondition;  // final period stripped
};
std::optional<WrapSlots> parse_wrap(Template tmpl, std::string_view sentence);

}  // namespace precondforge
