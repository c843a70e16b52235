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

#include "precondforge/augment.hpp"

#include <algorithm>
#include <unordered_set>

#include "precondforge/errors.hpp"
#include "precondforge/parallel.hpp"
#include "precondforge/rng.hpp"

namespace precondforge {

namespace {

std::size_t count_occurrences(std::string_view hay, std::string_view needle) {
  if (needle.empty()) return 0;
  std::size_t n = 0;
  for (std::size_t pos = hay.find(needle); pos != std::string_view::npos;
       pos = hay.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

std::string splice(std::string_view text, text::Span span,
                   std::string_view replacement) {
  std::string out;
  out.reserve(text.size() + replacement.size());
  out.append(text.substr(0, span.begin));
  out.append(replacement);
  out.append(text.substr(span.end));
  return out;
}

}  // namespace

void validate(const MaskQuery& query) {
  if (query.placeholder.empty()) {
    throw ContractError("mask query: empty placeholder");
  }
  if (count_occurrences(query.text_with_placeholder, query.placeholder) != 1) {
    throw ContractError("mask query must contain exactly one placeholder");
  }
  if (query.pivot.pos != Pos::kNoun && query.pivot.pos != Pos::kAdj) {
    throw ContractError("mask query pivot must be NOUN or ADJ");
  }
  if (query.top_k == 0) throw ContractError("mask query: top_k must be >= 1");
}

std::vector<FillCandidate> LexiconFiller::fill(const MaskQuery& query) const {
  validate(query);
  std::vector<FillCandidate> out;
  const LexiconEntry* entry =
      lexicon_->find(text::ascii_lower(query.pivot.surface));
  if (entry == nullptr) return out;
  // Candidates follow the pivot's initial capital ("Dogs" -> "Cats").
  const bool upper = text::starts_with_upper(query.pivot.surface);
  std::unordered_set<std::string> seen;
  for (const std::string& syn : entry->synonyms) {
    if (out.size() >= query.top_k) break;
    if (syn.empty() || text::contains_whitespace(syn) ||
        syn == query.placeholder) {
      continue;
    }
    std::string token = upper ? text::capitalize_first(syn) : syn;
    if (!seen.insert(token).second) continue;
    const double rank = static_cast<double>(out.size() + 1);
    out.push_back({std::move(token), 1.0 / rank, tagger_.tag_word(syn)});
  }
  return out;
}

std::vector<TaggedToken> find_pivots(std::string_view text, const Tagger& tagger,
                                     std::optional<text::Span> exclude) {
  std::vector<TaggedToken> out;
  if (text::trim(text).empty()) return out;
  for (TaggedToken& t : tagger.tag(text)) {
    if (t.pos != Pos::kNoun && t.pos != Pos::kAdj) continue;
    if (exclude && exclude->overlaps(t.span)) continue;
    out.push_back(std::move(t));
  }
  return out;
}

AugmentSource make_augment_source(const ExtractionRecord& record) {
  AugmentSource src;
  src.stmt_id = record.stmt_id;
  src.text = record.text;
  src.label = record.label;
  src.action = record.action;
  src.precondition = record.precondition;
  const std::string_view t = src.text;
  const std::size_t a = t.find(record.action);
  if (record.action.empty() || a == std::string_view::npos) {
    throw ContractError("augment: action not found in statement " +
                        record.stmt_id);
  }
  src.action_span = {a, a + record.action.size()};
  // Last occurrence that does not overlap the action slot.
  std::size_t p = t.rfind(record.precondition);
  while (p != std::string_view::npos &&
         src.action_span.overlaps({p, p + record.precondition.size()})) {
    p = p == 0 ? std::string_view::npos : t.rfind(record.precondition, p - 1);
  }
  if (record.precondition.empty() || p == std::string_view::npos) {
    throw ContractError("augment: precondition not found in statement " +
                        record.stmt_id);
  }
  src.precondition_span = {p, p + record.precondition.size()};
  return src;
}

std::vector<AugmentationRecord> generate_augmentations(
    const AugmentSource& source, const MaskFiller& filler, const Tagger& tagger,
    const AugmentOptions& options) {
  const AugmentCaps& caps = options.caps;
  if (caps.per_mask == 0 || caps.per_statement == 0) {
    throw ContractError("augmentation caps must be positive");
  }
  std::vector<AugmentationRecord> records;
  for (const TaggedToken& pivot : find_pivots(source.text, tagger)) {
    const bool in_action = source.action_span.contains(pivot.span);
    const bool in_precondition = source.precondition_span.contains(pivot.span);
    if (!in_action && !in_precondition) continue;

    MaskQuery query;
    query.text_with_placeholder =
        splice(source.text, pivot.span, options.placeholder);
    query.placeholder = options.placeholder;
    query.pivot = pivot;
    query.top_k = std::max(caps.request_top_k, caps.per_mask);

    std::vector<FillCandidate> candidates;
    try {
      candidates = filler.fill(query);
    } catch (const TransportError& e) {
      if (!e.stmt_id().empty()) throw;
      throw TransportError(e.what(), source.stmt_id);
    }
    for (std::size_t i = 1; i < candidates.size(); ++i) {
      if (candidates[i].score > candidates[i - 1].score) {
        throw TransportError("malformed filler response: scores increase",
                             source.stmt_id);
      }
    }

    const std::string pivot_lower = text::ascii_lower(pivot.surface);
    std::vector<FillCandidate> kept;
    std::unordered_set<std::string> seen;
    for (FillCandidate& c : candidates) {
      if (c.pos != pivot.pos) continue;
      if (c.token.empty() || text::contains_whitespace(c.token)) continue;
      const std::string lower = text::ascii_lower(c.token);
      if (lower == pivot_lower || !seen.insert(lower).second) continue;
      kept.push_back(std::move(c));
    }
    std::stable_sort(kept.begin(), kept.end(),
                     [](const FillCandidate& a, const FillCandidate& b) {
                       if (a.score != b.score) return a.score > b.score;
                       return a.token < b.token;
                     });
    if (kept.size() > caps.per_mask) kept.resize(caps.per_mask);

    const text::Span slot =
        in_action ? source.action_span : source.precondition_span;
    const text::Span local{pivot.span.begin - slot.begin,
                           pivot.span.end - slot.begin};
    for (std::size_t r = 0; r < kept.size(); ++r) {
      const std::string replacement =
          text::starts_with_upper(pivot.surface)
              ? text::capitalize_first(kept[r].token)
              : kept[r].token;
      AugmentationRecord rec;
      rec.parent_stmt_id = source.stmt_id;
      rec.augmented_text = splice(source.text, pivot.span, replacement);
      rec.pivot = pivot.surface;
      rec.replacement = replacement;
      rec.rank = r + 1;
      rec.label = source.label;
      rec.action = in_action ? splice(source.action, local, replacement)
                             : source.action;
      rec.precondition = in_precondition
                             ? splice(source.precondition, local, replacement)
                             : source.precondition;
      records.push_back(std::move(rec));
    }
  }
  if (records.size() > caps.per_statement) {
    auto rng = keyed_rng(options.seed, source.stmt_id);
    const auto keep = sample_indices(records.size(), caps.per_statement, rng);
    std::vector<AugmentationRecord> chosen;
    chosen.reserve(keep.size());
    for (std::size_t i : keep) chosen.push_back(std::move(records[i]));
    records = std::move(chosen);
  }
  return records;
}

std::vector<AugmentationRecord> augment_all(
    const std::vector<AugmentSource>& sources, const MaskFiller& filler,
    const Tagger& tagger, const AugmentOptions& options) {
  std::vector<std::vector<AugmentationRecord>> per_source(sources.size());
  parallel_for(
      sources.size(),
      [&](std::size_t i) {
        per_source[i] =
            generate_augmentations(sources[i], filler, tagger, options);
      },
      4);
  std::vector<AugmentationRecord> out;
  for (auto& batch : per_source) {
    for (auto& r : batch) out.push_back(std::move(r));
  }
  return out;
}

namespace reference {
std::vector<AugmentationRecord> augment_all_serial(
    const std::vector<AugmentSource>& sources, const MaskFiller& filler,
    const Tagger& tagger, const AugmentOptions& options) {
  std::vector<AugmentationRecord> out;
  for (const AugmentSource& s : sources) {
    for (auto& r : generate_augmentations(s, filler, tagger, options)) {
      out.push_back(std::move(r));
    }
  }
  return out;
}
}  // namespace reference

}  // namespace precondforge
