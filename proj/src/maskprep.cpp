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

#include "precondforge/maskprep.hpp"

#include <algorithm>
#include <unordered_set>

#include "precondforge/errors.hpp"
#include "precondforge/parallel.hpp"

namespace precondforge {

namespace {

std::vector<std::string> dedupe(std::initializer_list<const char*> items) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const char* s : items) {
    if (seen.insert(s).second) out.emplace_back(s);
  }
  return out;
}

}  // namespace

ConjunctionLists ConjunctionLists::builtin() {
  ConjunctionLists lists;
  lists.allow = dedupe(
      {"only if",        "subject to",    "in case",        "contingent upon",
       "given",          "if",            "in the case that", "in case",
       "in the case that", "in the event", "on condition",   "on the assumption",
       "only if",        "so",            "hence",          "consequently",
       "on these terms", "subject to",    "supposing",      "with the proviso",
       "so",             "thus",          "accordingly",    "therefore",
       "as a result",    "because of that", "as a consequence", "as a result"});
  lists.prevent = dedupe({"but", "except", "except for", "excepting that",
                          "if not", "lest", "saving", "without", "unless"});
  return lists;
}

std::vector<ConjunctionSpan> find_conjunction_spans(
    std::string_view text, const ConjunctionLists& lists) {
  struct Entry {
    std::string surface;
    Polarity polarity;
  };
  std::vector<Entry> entries;
  for (const auto& s : lists.allow) entries.push_back({s, Polarity::kAllow});
  for (const auto& s : lists.prevent) entries.push_back({s, Polarity::kPrevent});
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) {
                     return a.surface.size() > b.surface.size();
                   });

  const std::string lower = text::ascii_lower(text);
  std::vector<ConjunctionSpan> out;
  std::size_t pos = 0;
  while (pos < lower.size()) {
    if (text::is_word_char(text::codepoint_before(lower, pos))) {
      ++pos;
      continue;
    }
    const Entry* hit = nullptr;
    for (const Entry& e : entries) {
      if (lower.compare(pos, e.surface.size(), e.surface) == 0 &&
          text::is_whole_word_at(lower, pos, e.surface.size())) {
        hit = &e;
        break;
      }
    }
    if (hit == nullptr) {
      ++pos;
      continue;
    }
    out.push_back({{pos, pos + hit->surface.size()}, hit->surface,
                   hit->polarity});
    pos += hit->surface.size();
  }
  return out;
}

std::vector<MaskedTrainingRecord> emit_masked_records(
    const Statement& stmt, const std::vector<ConjunctionSpan>& spans,
    std::string_view placeholder) {
  std::vector<MaskedTrainingRecord> out;
  if (placeholder.empty()) throw ContractError("maskprep: empty placeholder");
  if (stmt.text.find(placeholder) != std::string::npos) return out;
  for (const ConjunctionSpan& s : spans) {
    if (s.span.end > stmt.text.size() || s.span.empty()) {
      throw ContractError("maskprep: span out of bounds in " + stmt.stmt_id);
    }
    MaskedTrainingRecord r;
    r.stmt_id = stmt.stmt_id;
    r.target = stmt.text.substr(s.span.begin, s.span.size());
    r.masked_text = stmt.text.substr(0, s.span.begin);
    r.masked_text += placeholder;
    r.masked_text += stmt.text.substr(s.span.end);
    r.polarity = s.polarity;
    out.push_back(std::move(r));
  }
  return out;
}

std::string unmask(const MaskedTrainingRecord& record,
                   std::string_view placeholder) {
  const std::size_t at = record.masked_text.find(placeholder);
  if (at == std::string::npos ||
      record.masked_text.find(placeholder, at + placeholder.size()) !=
          std::string::npos) {
    throw ContractError("unmask: record must hold exactly one placeholder");
  }
  std::string out = record.masked_text;
  out.replace(at, placeholder.size(), record.target);
  return out;
}

MaskprepResult run_maskprep(const std::vector<Statement>& statements,
                            const ConjunctionLists& lists,
                            std::string_view placeholder) {
  std::vector<std::vector<MaskedTrainingRecord>> per(statements.size());
  std::vector<char> collided(statements.size(), 0);
  parallel_for(statements.size(), [&](std::size_t i) {
    const Statement& s = statements[i];
    if (s.text.find(placeholder) != std::string::npos) {
      collided[i] = 1;
      return;
    }
    per[i] = emit_masked_records(s, find_conjunction_spans(s.text, lists),
                                 placeholder);
  });
  MaskprepResult result;
  result.statements = statements.size();
  for (std::size_t i = 0; i < per.size(); ++i) {
    result.placeholder_collisions += collided[i];
    for (auto& r : per[i]) result.records.push_back(std::move(r));
  }
  return result;
}

}  // namespace precondforge
