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

#include <algorithm>

#include "precondforge/errors.hpp"
#include "precondforge/parallel.hpp"

namespace precondforge {

PatternMatch resolve_ambiguity(const Statement& stmt,
                               const std::vector<PatternMatch>& matches,
                               const PatternRegistry& registry) {
  if (matches.empty()) {
    throw ContractError("resolve_ambiguity: no matches for " + stmt.stmt_id);
  }
  auto surface_len = [&](const PatternMatch& m) {
    return registry[m.registry_index].surface.size();
  };
  std::vector<PatternMatch> survivors;
  for (const PatternMatch& m : matches) {
    const bool overshadowed =
        std::any_of(matches.begin(), matches.end(), [&](const PatternMatch& o) {
          return o.span.overlaps(m.span) && surface_len(o) > surface_len(m);
        });
    if (!overshadowed) survivors.push_back(m);
  }
  // Every match has a non-empty span, so the longest overlapping surface
  // always survives and `survivors` is non-empty.
  return *std::min_element(
      survivors.begin(), survivors.end(),
      [&](const PatternMatch& a, const PatternMatch& b) {
        const double pa = registry[a.registry_index].priority();
        const double pb = registry[b.registry_index].priority();
        if (pa != pb) return pa > pb;
        if (a.registry_index != b.registry_index) {
          return a.registry_index < b.registry_index;
        }
        return a.span.begin < b.span.begin;
      });
}

ActionPrecondition extract_pair(const Statement& stmt,
                                const PatternSpec& pattern, text::Span span) {
  const std::string_view t = stmt.text;
  if (span.begin >= span.end || span.end > t.size()) {
    throw ExtractionError("span out of bounds", stmt.stmt_id);
  }
  ActionPrecondition out;
  switch (pattern.tmpl) {
    case Template::kInfix: {
      const std::string_view occ = t.substr(span.begin, span.size());
      if (text::ascii_lower(occ) != pattern.surface ||
          !text::is_whole_word_at(t, span.begin, span.size())) {
        throw ExtractionError("span is not an occurrence of '" +
                                  pattern.surface + "'",
                              stmt.stmt_id);
      }
      out.action = std::string(text::trim(t.substr(0, span.begin)));
      out.precondition = std::string(text::trim(t.substr(span.end)));
      break;
    }
    case Template::kPrecondMakes: {
      out.precondition = std::string(text::trim(t.substr(0, span.begin)));
      const std::string_view rest = t.substr(span.end);
      const auto possibles = text::find_whole_word(rest, "possible");
      if (possibles.empty()) {
        throw ExtractionError("no closing 'possible'", stmt.stmt_id);
      }
      out.action =
          std::string(text::trim(rest.substr(0, possibles.back().begin)));
      break;
    }
    case Template::kWrapStatement:
    case Template::kWrapUnderstand: {
      auto slots = parse_wrap(pattern.tmpl, t);
      if (!slots) {
        throw ExtractionError("sentence does not fit template '" +
                                  pattern.lf_id + "'",
                              stmt.stmt_id);
      }
      out.action = std::move(slots->event);
      out.precondition = std::move(slots->precondition);
      break;
    }
  }
  if (out.action.empty() || out.precondition.empty()) {
    throw ExtractionError("empty action or precondition", stmt.stmt_id);
  }
  return out;
}

const std::vector<std::string>& interrogative_words() {
  static const std::vector<std::string> words = {
      "who", "what", "when", "where", "why", "how", "is", "can", "does", "do"};
  return words;
}

bool is_question(std::string_view sentence) {
  const std::string_view t = text::trim(sentence);
  if (!t.empty() && t.back() == '?') return true;
  for (const Token& tok : tokenize(t)) {
    if (!text::has_alnum(tok.surface)) continue;
    const std::string first = text::ascii_lower(tok.surface);
    const auto& words = interrogative_words();
    return std::find(words.begin(), words.end(), first) != words.end();
  }
  return false;
}

bool is_question(const Statement& stmt) { return is_question(stmt.text); }

bool precondition_has_verb(std::string_view precondition, const Tagger& tagger,
                           std::string_view stmt_id) {
  const auto tokens = tag_tokens(precondition, tagger, stmt_id);
  return std::any_of(tokens.begin(), tokens.end(),
                     [](const TaggedToken& t) { return t.pos == Pos::kVerb; });
}

RunReport& RunReport::operator+=(const RunReport& o) {
  input += o.input;
  matched += o.matched;
  dropped_question += o.dropped_question;
  dropped_verb += o.dropped_verb;
  emitted += o.emitted;
  allow += o.allow;
  prevent += o.prevent;
  return *this;
}

nlohmann::ordered_json RunReport::to_json() const {
  nlohmann::ordered_json j;
  j["input"] = input;
  j["matched"] = matched;
  j["dropped_question"] = dropped_question;
  j["dropped_verb"] = dropped_verb;
  j["emitted"] = emitted;
  j["allow"] = allow;
  j["prevent"] = prevent;
  return j;
}

namespace {

struct StatementOutcome {
  std::optional<ExtractionRecord> record;
  RunReport counts;
};

StatementOutcome process_statement(const Statement& stmt,
                                   const RowMatcher& matcher,
                                   const Tagger& tagger) {
  StatementOutcome out;
  out.counts.input = 1;
  const auto matches = matcher.matches(stmt);
  if (matches.empty()) return out;
  out.counts.matched = 1;
  if (is_question(stmt)) {
    out.counts.dropped_question = 1;
    return out;
  }
  const PatternRegistry& registry = matcher.registry();
  const PatternMatch chosen = resolve_ambiguity(stmt, matches, registry);
  const PatternSpec& pattern = registry[chosen.registry_index];
  ActionPrecondition pair = extract_pair(stmt, pattern, chosen.span);
  if (!precondition_has_verb(pair.precondition, tagger, stmt.stmt_id)) {
    out.counts.dropped_verb = 1;
    return out;
  }
  ExtractionRecord rec;
  rec.stmt_id = stmt.stmt_id;
  rec.action = std::move(pair.action);
  rec.precondition = std::move(pair.precondition);
  rec.label = to_label(pattern.polarity);
  rec.lf_id = pattern.lf_id;
  rec.precision = pattern.precision;
  rec.source = stmt.source;
  rec.text = stmt.text;
  out.counts.emitted = 1;
  (rec.label == Label::kAllow ? out.counts.allow : out.counts.prevent) = 1;
  out.record = std::move(rec);
  return out;
}

std::vector<const Statement*> ordered(const std::vector<Statement>& statements) {
  std::vector<const Statement*> order;
  order.reserve(statements.size());
  for (const Statement& s : statements) order.push_back(&s);
  std::stable_sort(order.begin(), order.end(),
                   [](const Statement* a, const Statement* b) {
                     return statement_order(*a, *b);
                   });
  return order;
}

ExtractionResult collect(std::vector<StatementOutcome>& outcomes) {
  ExtractionResult result;
  for (StatementOutcome& o : outcomes) {
    result.report += o.counts;
    if (o.record) result.records.push_back(std::move(*o.record));
  }
  return result;
}

}  // namespace

ExtractionResult run_extraction(const std::vector<Statement>& statements,
                                const PatternRegistry& registry,
                                const Tagger& tagger) {
  const RowMatcher matcher(registry);
  const auto order = ordered(statements);
  std::vector<StatementOutcome> outcomes(order.size());
  parallel_for(order.size(), [&](std::size_t i) {
    outcomes[i] = process_statement(*order[i], matcher, tagger);
  });
  return collect(outcomes);
}

namespace reference {

ExtractionResult run_extraction_serial(const std::vector<Statement>& statements,
                                       const PatternRegistry& registry,
                                       const Tagger& tagger) {
  const RowMatcher matcher(registry);
  const auto order = ordered(statements);
  std::vector<StatementOutcome> outcomes;
  outcomes.reserve(order.size());
  for (const Statement* s : order) {
    outcomes.push_back(process_statement(*s, matcher, tagger));
  }
  return collect(outcomes);
}

}  // namespace reference

}  // namespace precondforge
