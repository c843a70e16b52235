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

#include "precondforge/patterns.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include "precondforge/errors.hpp"

namespace precondforge {

std::string_view to_string(Template t) {
  switch (t) {
    case Template::kInfix: return "INFIX";
    case Template::kPrecondMakes: return "PRECOND_MAKES";
    case Template::kWrapStatement: return "WRAP_STATEMENT";
    case Template::kWrapUnderstand: return "WRAP_UNDERSTAND";
  }
  return "INFIX";
}

std::string_view to_string(Polarity p) {
  return p == Polarity::kAllow ? "ALLOW" : "PREVENT";
}

std::string_view to_string(Label l) {
  switch (l) {
    case Label::kAbstain: return "ABSTAIN";
    case Label::kAllow: return "ALLOW";
    case Label::kPrevent: return "PREVENT";
  }
  return "ABSTAIN";
}

Template parse_template(std::string_view name) {
  if (name == "INFIX") return Template::kInfix;
  if (name == "PRECOND_MAKES") return Template::kPrecondMakes;
  if (name == "WRAP_STATEMENT") return Template::kWrapStatement;
  if (name == "WRAP_UNDERSTAND") return Template::kWrapUnderstand;
  throw ConfigError("unknown template '" + std::string(name) + "'");
}

Polarity parse_polarity(std::string_view name) {
  if (name == "ALLOW") return Polarity::kAllow;
  if (name == "PREVENT") return Polarity::kPrevent;
  throw ConfigError("unknown polarity '" + std::string(name) + "'");
}

Label parse_label(std::string_view name) {
  if (name == "ABSTAIN") return Label::kAbstain;
  if (name == "ALLOW") return Label::kAllow;
  if (name == "PREVENT") return Label::kPrevent;
  throw ContractError("unknown label '" + std::string(name) + "'");
}

Label to_label(Polarity p) {
  return p == Polarity::kAllow ? Label::kAllow : Label::kPrevent;
}

void validate(const PatternSpec& spec) {
  if (spec.lf_id.empty()) throw ContractError("pattern with empty lf_id");
  if (spec.surface.empty() || spec.surface != text::ascii_lower(spec.surface)) {
    throw ContractError("pattern '" + spec.lf_id +
                        "': surface must be non-empty lowercase");
  }
  if (spec.precision && (*spec.precision < 0.0 || *spec.precision > 1.0)) {
    throw ContractError("pattern '" + spec.lf_id +
                        "': precision outside [0, 1]");
  }
  if (spec.tmpl != Template::kInfix && spec.polarity != Polarity::kAllow) {
    throw ContractError("pattern '" + spec.lf_id +
                        "': template patterns are always ALLOW");
  }
  if (spec.tmpl == Template::kPrecondMakes) {
    const auto words = text::split(spec.surface, ' ');
    if (words.size() < 2 || words.back() != "possible") {
      throw ContractError("pattern '" + spec.lf_id +
                          "': PRECOND_MAKES surface must be '<verb> possible'");
    }
  }
}

PatternRegistry::PatternRegistry(std::vector<PatternSpec> patterns,
                                 double threshold)
    : patterns_(std::move(patterns)), threshold_(threshold) {
  if (threshold_ < 0.0 || threshold_ > 1.0) {
    throw ConfigError("precision threshold outside [0, 1]");
  }
  std::unordered_set<std::string> ids;
  for (const PatternSpec& p : patterns_) {
    validate(p);
    if (!ids.insert(p.lf_id).second) {
      throw ContractError("duplicate lf_id '" + p.lf_id + "'");
    }
  }
}

PatternRegistry PatternRegistry::builtin() {
  using T = Template;
  constexpr auto A = Polarity::kAllow;
  constexpr auto P = Polarity::kPrevent;
  constexpr std::optional<double> none;
  auto row = [](std::string id, T t, Polarity pol, std::optional<double> prec,
                std::string surface = {}) {
    PatternSpec s;
    s.surface = surface.empty() ? id : surface;
    s.lf_id = std::move(id);
    s.tmpl = t;
    s.polarity = pol;
    s.precision = prec;
    s.enabled = prec.has_value();
    return s;
  };
  std::vector<PatternSpec> rows = {
      row("but", T::kInfix, P, 0.17),
      row("contingent upon", T::kInfix, A, 0.6),
      row("except", T::kInfix, P, 0.7),
      row("except for", T::kInfix, P, 0.57),
      row("if", T::kInfix, A, 0.52),
      row("if not", T::kInfix, P, 0.97),
      row("in case", T::kInfix, A, 0.75),
      row("in the case that", T::kInfix, A, 0.30),
      row("in the event", T::kInfix, A, 0.3),
      row("lest", T::kInfix, P, 0.06),
      row("makes possible", T::kPrecondMakes, A, 0.81),
      row("on condition", T::kInfix, A, 0.6),
      row("on the assumption", T::kInfix, A, 0.44),
      row("statement is true", T::kWrapStatement, A, 1.0),
      row("supposing", T::kInfix, A, 0.07),
      row("to understand event", T::kWrapUnderstand, A, 0.87),
      row("unless", T::kInfix, P, 1.0),
      row("with the proviso", T::kInfix, A, none),
      row("on these terms", T::kInfix, A, none),
      row("only if", T::kInfix, A, none),
      row("make possible", T::kPrecondMakes, A, none),
      row("without", T::kInfix, P, none),
      row("excepting that", T::kInfix, P, none),
  };
  return filter_registry(PatternRegistry(std::move(rows), 0.7), 0.7);
}

PatternRegistry PatternRegistry::from_json(const nlohmann::json& doc) {
  try {
    std::vector<PatternSpec> rows;
    for (const auto& item : doc.at("patterns")) {
      PatternSpec s;
      s.lf_id = item.at("lf_id").get<std::string>();
      s.surface = item.at("surface").get<std::string>();
      s.tmpl = parse_template(item.at("template").get<std::string>());
      s.polarity = parse_polarity(item.at("polarity").get<std::string>());
      if (item.contains("precision") && !item["precision"].is_null()) {
        s.precision = item["precision"].get<double>();
      }
      s.enabled = item.value("enabled", s.precision.has_value());
      rows.push_back(std::move(s));
    }
    return PatternRegistry(std::move(rows),
                           doc.value("precision_threshold", 0.7));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed registry: ") + e.what());
  } catch (const ContractError& e) {
    throw ConfigError(std::string("invalid registry: ") + e.what());
  }
}

PatternRegistry PatternRegistry::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open registry " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed registry " + path.string() + ": " + e.what());
  }
  return from_json(doc);
}

nlohmann::ordered_json PatternRegistry::to_json() const {
  nlohmann::ordered_json doc;
  doc["precision_threshold"] = threshold_;
  doc["patterns"] = nlohmann::ordered_json::array();
  for (const PatternSpec& p : patterns_) {
    nlohmann::ordered_json item;
    item["lf_id"] = p.lf_id;
    item["surface"] = p.surface;
    item["template"] = to_string(p.tmpl);
    item["polarity"] = to_string(p.polarity);
    item["precision"] =
        p.precision ? nlohmann::ordered_json(*p.precision) : nullptr;
    item["enabled"] = p.enabled;
    doc["patterns"].push_back(std::move(item));
  }
  return doc;
}

std::optional<std::size_t> PatternRegistry::index_of(
    std::string_view lf_id) const {
  for (std::size_t i = 0; i < patterns_.size(); ++i) {
    if (patterns_[i].lf_id == lf_id) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t> PatternRegistry::enabled_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < patterns_.size(); ++i) {
    if (patterns_[i].enabled) out.push_back(i);
  }
  return out;
}

std::vector<std::string> PatternRegistry::enabled_ids() const {
  std::vector<std::string> out;
  for (std::size_t i : enabled_indices()) out.push_back(patterns_[i].lf_id);
  return out;
}

void PatternRegistry::set_enabled(std::string_view lf_id, bool enabled) {
  const auto idx = index_of(lf_id);
  if (!idx) throw ConfigError("unknown lf_id '" + std::string(lf_id) + "'");
  patterns_[*idx].enabled = enabled;
}

PatternRegistry filter_registry(const PatternRegistry& registry,
                                double threshold) {
  if (threshold < 0.0 || threshold > 1.0) {
    throw ConfigError("precision threshold outside [0, 1]");
  }
  std::vector<PatternSpec> rows = registry.patterns();
  for (PatternSpec& p : rows) {
    p.enabled = p.precision.has_value() && *p.precision >= threshold;
  }
  return PatternRegistry(std::move(rows), threshold);
}

PatternRegistry all_enabled(const PatternRegistry& registry) {
  std::vector<PatternSpec> rows = registry.patterns();
  for (PatternSpec& p : rows) p.enabled = true;
  return PatternRegistry(std::move(rows), registry.precision_threshold());
}

// ---------------------------------------------------------------------------
// Matching

namespace {

constexpr std::string_view kOpenQuotes[] = {"\"", "\xE2\x80\x9C"};
constexpr std::string_view kCloseQuotes[] = {"\"", "\xE2\x80\x9D"};

std::string strip_final_period(std::string_view s) {
  s = text::trim(s);
  if (!s.empty() && s.back() == '.') s.remove_suffix(1);
  return std::string(text::trim(s));
}

// Opening quote length at `pos`, or 0.
std::size_t open_quote_at(std::string_view s, std::size_t pos) {
  for (std::string_view q : kOpenQuotes) {
    if (s.substr(pos, q.size()) == q) return q.size();
  }
  return 0;
}

// Earliest occurrence of any connector at or after `from`.
std::pair<std::size_t, std::size_t> find_connector(
    std::string_view lower, std::size_t from,
    const std::vector<std::string>& connectors) {
  std::size_t best = std::string_view::npos;
  std::size_t len = 0;
  for (const std::string& c : connectors) {
    const std::size_t pos = lower.find(c, from);
    if (pos != std::string_view::npos && pos < best) {
      best = pos;
      len = c.size();
    }
  }
  return {best, len};
}

std::vector<std::string> quoted_connectors(std::string_view tail,
                                           bool comma_variants) {
  std::vector<std::string> out;
  for (std::string_view q : kCloseQuotes) {
    if (comma_variants) {
      out.push_back(std::string(q) + "," + std::string(tail));
      out.push_back("," + std::string(q) + std::string(tail));
    } else {
      out.push_back(std::string(q) + std::string(tail));
    }
  }
  return out;
}

std::optional<text::Span> infix_occurrence(
    std::string_view surface, std::string_view t,
    const std::vector<std::string>& shadowing) {
  std::vector<text::Span> shadows;
  for (const std::string& longer : shadowing) {
    for (const text::Span& s : text::find_whole_word(t, longer)) {
      shadows.push_back(s);
    }
  }
  for (const text::Span& occ : text::find_whole_word(t, surface)) {
    if (!text::has_alnum(t.substr(0, occ.begin)) ||
        !text::has_alnum(t.substr(occ.end))) {
      continue;
    }
    const bool shadowed =
        std::any_of(shadows.begin(), shadows.end(),
                    [&](const text::Span& s) { return s.contains(occ); });
    if (!shadowed) return occ;
  }
  return std::nullopt;
}

std::optional<text::Span> makes_occurrence(std::string_view surface,
                                           std::string_view t) {
  const std::string verb = text::split(surface, ' ').front();
  for (const text::Span& occ : text::find_whole_word(t, verb)) {
    if (!text::has_alnum(t.substr(0, occ.begin))) continue;
    const std::string_view rest = t.substr(occ.end);
    const auto possibles = text::find_whole_word(rest, "possible");
    if (possibles.empty()) continue;
    const text::Span last = possibles.back();
    if (!text::has_alnum(rest.substr(0, last.begin))) continue;
    if (text::has_alnum(rest.substr(last.end))) continue;
    return occ;
  }
  return std::nullopt;
}

std::optional<text::Span> template_occurrence(const PatternSpec& p,
                                              std::string_view t,
                                              const std::vector<std::string>&
                                                  shadowing) {
  switch (p.tmpl) {
    case Template::kInfix:
      return infix_occurrence(p.surface, t, shadowing);
    case Template::kPrecondMakes:
      return makes_occurrence(p.surface, t);
    case Template::kWrapStatement:
    case Template::kWrapUnderstand:
      if (parse_wrap(p.tmpl, t)) return text::Span{0, t.size()};
      return std::nullopt;
  }
  return std::nullopt;
}

Verdict verdict_for(const PatternSpec& p, std::optional<text::Span> occ) {
  if (!occ) return {};
  return Verdict{to_label(p.polarity), occ};
}

}  // namespace

std::optional<WrapSlots> parse_wrap(Template tmpl, std::string_view sentence) {
  const std::string_view s = text::trim(sentence);
  const std::string lower = text::ascii_lower(s);
  std::string_view prefix;
  std::vector<std::string> connectors;
  if (tmpl == Template::kWrapStatement) {
    prefix = "the statement ";
    connectors = quoted_connectors(" is true because ", false);
  } else if (tmpl == Template::kWrapUnderstand) {
    prefix = "to understand the event ";
    connectors = quoted_connectors(" it is important to know that ", true);
  } else {
    return std::nullopt;
  }
  if (lower.compare(0, prefix.size(), prefix) != 0) return std::nullopt;
  const std::size_t qlen = open_quote_at(lower, prefix.size());
  if (qlen == 0) return std::nullopt;
  const std::size_t event_begin = prefix.size() + qlen;
  const auto [pos, len] = find_connector(lower, event_begin, connectors);
  if (pos == std::string_view::npos) return std::nullopt;
  WrapSlots slots;
  slots.event = std::string(text::trim(s.substr(event_begin, pos - event_begin)));
  slots.precondition = strip_final_period(s.substr(pos + len));
  if (!text::has_alnum(slots.event) || !text::has_alnum(slots.precondition)) {
    return std::nullopt;
  }
  return slots;
}

Verdict apply_lf(const PatternSpec& pattern, const Statement& stmt) {
  return verdict_for(pattern, template_occurrence(pattern, stmt.text, {}));
}

RowMatcher::RowMatcher(const PatternRegistry& registry)
    : registry_(&registry), columns_(registry.enabled_indices()) {
  shadowing_.resize(columns_.size());
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    const PatternSpec& p = registry[columns_[c]];
    if (p.tmpl != Template::kInfix) continue;
    for (std::size_t other : columns_) {
      const PatternSpec& q = registry[other];
      if (q.tmpl != Template::kInfix || q.surface.size() <= p.surface.size()) {
        continue;
      }
      if (!text::find_whole_word(q.surface, p.surface).empty()) {
        shadowing_[c].push_back(q.surface);
      }
    }
  }
}

Verdict RowMatcher::column_verdict(std::size_t column,
                                   const Statement& stmt) const {
  const PatternSpec& p = (*registry_)[columns_[column]];
  return verdict_for(p, template_occurrence(p, stmt.text, shadowing_[column]));
}

std::vector<Verdict> RowMatcher::verdicts(const Statement& stmt) const {
  std::vector<Verdict> out(columns_.size());
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    out[c] = column_verdict(c, stmt);
  }
  return out;
}

std::vector<PatternMatch> RowMatcher::matches(const Statement& stmt) const {
  std::vector<PatternMatch> out;
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    const Verdict v = column_verdict(c, stmt);
    if (v.value != Label::kAbstain) out.push_back({columns_[c], *v.match_span});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Label matrix

LabelMatrix::LabelMatrix(std::vector<std::string> row_ids,
                         std::vector<std::string> lf_ids)
    : row_ids_(std::move(row_ids)),
      lf_ids_(std::move(lf_ids)),
      cells_(row_ids_.size() * lf_ids_.size(), Label::kAbstain) {}

namespace {

LabelMatrix empty_matrix(const std::vector<Statement>& statements,
                         const PatternRegistry& registry) {
  std::vector<std::string> lf_ids = registry.enabled_ids();
  if (lf_ids.empty()) {
    throw ContractError("label matrix: registry has no enabled patterns");
  }
  std::vector<std::string> row_ids;
  row_ids.reserve(statements.size());
  std::unordered_set<std::string> seen;
  for (const Statement& s : statements) {
    if (!seen.insert(s.stmt_id).second) {
      throw ContractError("label matrix: duplicate statement id '" +
                          s.stmt_id + "'");
    }
    row_ids.push_back(s.stmt_id);
  }
  return LabelMatrix(std::move(row_ids), std::move(lf_ids));
}

}  // namespace

LabelMatrix build_label_matrix(const std::vector<Statement>& statements,
                               const PatternRegistry& registry) {
  LabelMatrix m = empty_matrix(statements, registry);
  const RowMatcher matcher(registry);
  const auto n = static_cast<std::int64_t>(statements.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto row = matcher.verdicts(statements[i]);
    for (std::size_t j = 0; j < row.size(); ++j) m.set(i, j, row[j].value);
  }
  return m;
}

namespace reference {

LabelMatrix build_label_matrix_serial(const std::vector<Statement>& statements,
                                      const PatternRegistry& registry) {
  LabelMatrix m = empty_matrix(statements, registry);
  const RowMatcher matcher(registry);
  for (std::size_t i = 0; i < statements.size(); ++i) {
    const auto row = matcher.verdicts(statements[i]);
    for (std::size_t j = 0; j < row.size(); ++j) m.set(i, j, row[j].value);
  }
  return m;
}

}  // namespace reference

}  // namespace precondforge
