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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "precondforge/corpus.hpp"
#include "precondforge/extraction.hpp"
#include "precondforge/lexicon.hpp"
#include "precondforge/patterns.hpp"

namespace precondforge {

inline constexpr std::string_view kDefaultPlaceholder = "[MASK]";

struct MaskQuery {
  std::string text_with_placeholder;  // exactly one placeholder
  std::string placeholder = std::string(kDefaultPlaceholder);
  TaggedToken pivot;                  // NOUN or ADJ
  std::size_t top_k = 10;
};

// Throws ContractError unless the query has exactly one placeholder, a
// NOUN/ADJ pivot and top_k >= 1.
void validate(const MaskQuery& query);

struct FillCandidate {
  std::string token;
  double score = 0.0;  // higher is more likely
  Pos pos = Pos::kOther;
};

class MaskFiller {
 public:
  virtual ~MaskFiller() = default;
  // Candidates in non-increasing score order, at most query.top_k.
  virtual std::vector<FillCandidate> fill(const MaskQuery& query) const = 0;
  virtual std::string id() const = 0;
};

// Deterministic filler over the lexicon's synonym lists: candidates are the
// pivot's single-token synonyms in file order with score 1/rank and the
// lexicon's static tag for each candidate. A capitalized pivot gets
// capitalized candidates.
class LexiconFiller final : public MaskFiller {
 public:
  explicit LexiconFiller(const Lexicon& lexicon = Lexicon::builtin())
      : lexicon_(&lexicon), tagger_(lexicon) {}
  std::vector<FillCandidate> fill(const MaskQuery& query) const override;
  std::string id() const override { return "lexicon:" + lexicon_->version(); }

 private:
  const Lexicon* lexicon_;
  LexiconTagger tagger_;
};

// NOUN and ADJ tokens in order, skipping any token that overlaps `exclude`
// (the matched conjunction).
std::vector<TaggedToken> find_pivots(std::string_view text, const Tagger& tagger,
                                     std::optional<text::Span> exclude = {});

struct AugmentCaps {
  std::size_t per_mask = 3;
  std::size_t per_statement = 20;
  std::size_t request_top_k = 10;
};

// Labeled statement to augment, with the byte ranges of its action and
// precondition inside `text`. Only tokens inside those ranges are pivots.
struct AugmentSource {
  std::string stmt_id;
  std::string text;
  Label label = Label::kAllow;
  std::string action;
  std::string precondition;
  text::Span action_span;
  text::Span precondition_span;
};

// Locates the action and precondition slots of an extraction record inside
// its statement text. Throws ContractError when either cannot be found.
AugmentSource make_augment_source(const ExtractionRecord& record);

struct AugmentationRecord {
  std::string parent_stmt_id;
  std::string augmented_text;
  std::string pivot;
  std::string replacement;
  std::size_t rank = 1;  // 1-based, per-mask score order
  Label label = Label::kAllow;
  std::string action;        // slots of the augmented statement
  std::string precondition;

  friend bool operator==(const AugmentationRecord&,
                         const AugmentationRecord&) = default;
};

struct AugmentOptions {
  AugmentCaps caps;
  std::uint64_t seed = 0;
  std::string placeholder = std::string(kDefaultPlaceholder);
};

// Masks each pivot, keeps up to caps.per_mask POS-preserving candidates and,
// when the statement yields more than caps.per_statement records, keeps a
// uniform random subset drawn from a generator keyed by (seed, stmt_id).
std::vector<AugmentationRecord> generate_augmentations(
    const AugmentSource& source, const MaskFiller& filler, const Tagger& tagger,
    const AugmentOptions& options);

// Statement-parallel batch; output grouped by source in input order.
std::vector<AugmentationRecord> augment_all(
    const std::vector<AugmentSource>& sources, const MaskFiller& filler,
    const Tagger& tagger, const AugmentOptions& options);

namespace reference {
std::vector<AugmentationRecord> augment_all_serial(
    const std::vector<AugmentSource>& sources, const MaskFiller& filler,
    const Tagger& tagger, const AugmentOptions& options);
}  // namespace reference

}  // namespace precondforge
