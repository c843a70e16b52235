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
#include <fstream>

#include <json.hpp>

#include "precondforge/corpus.hpp"
#include "precondforge/errors.hpp"
#include "precondforge/rng.hpp"
#include "precondforge/text.hpp"

namespace precondforge {

std::string_view to_string(NliLabel l) {
  return l == NliLabel::kEntailment ? "ENTAILMENT" : "CONTRADICTION";
}

std::string_view to_string(Split s) {
  switch (s) {
    case Split::kTrain: return "TRAIN";
    case Split::kDev: return "DEV";
    case Split::kTest: return "TEST";
  }
  return "TEST";
}

NliLabel parse_nli_label(std::string_view name) {
  if (name == "ENTAILMENT") return NliLabel::kEntailment;
  if (name == "CONTRADICTION") return NliLabel::kContradiction;
  throw ContractError("unknown NLI label '" + std::string(name) + "'");
}

Split parse_split(std::string_view name) {
  if (name == "TRAIN") return Split::kTrain;
  if (name == "DEV") return Split::kDev;
  if (name == "TEST") return Split::kTest;
  throw ContractError("unknown split '" + std::string(name) + "'");
}

namespace {

NliLabel from_weak(Label l) {
  if (l == Label::kAllow) return NliLabel::kEntailment;
  if (l == Label::kPrevent) return NliLabel::kContradiction;
  throw ContractError("weak record must be ALLOW or PREVENT");
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ContractError(what);
}

void require_text(std::string_view s, const std::string& field,
                  const std::string& id) {
  require(!text::trim(s).empty(), field + " is empty in " + id);
}

std::string replace_all(std::string s, std::string_view from,
                        std::string_view to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos;
       pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
  return s;
}

std::string with_final_period(std::string_view s) {
  std::string out(text::trim(s));
  if (!out.empty() && out.back() != '.' && out.back() != '!' &&
      out.back() != '?') {
    out.push_back('.');
  }
  return out;
}

}  // namespace

NliRecord convert_weak(const ExtractionRecord& rec) {
  require_text(rec.action, "action", rec.stmt_id);
  require_text(rec.precondition, "precondition", rec.stmt_id);
  NliRecord out;
  out.record_id = rec.stmt_id;
  out.hypothesis = rec.action;
  out.premise = rec.precondition;
  out.label = from_weak(rec.label);
  out.source_task = "weak";
  return out;
}

NliRecord convert_weak(const AugmentationRecord& rec, std::size_t ordinal) {
  NliRecord out;
  out.record_id = rec.parent_stmt_id + "#aug" + std::to_string(ordinal);
  require_text(rec.action, "action", out.record_id);
  require_text(rec.precondition, "precondition", out.record_id);
  out.hypothesis = rec.action;
  out.premise = rec.precondition;
  out.label = from_weak(rec.label);
  out.source_task = "weak-augmented";
  return out;
}

NliRecord convert_delta_nli(const DeltaNliRow& row, std::string record_id) {
  require_text(row.update, "update", record_id);
  require_text(row.hypothesis, "hypothesis", record_id);
  const std::string label = text::ascii_lower(text::trim(row.label));
  NliRecord out;
  if (label == "weakener") {
    out.label = NliLabel::kContradiction;
  } else if (label == "strengthener") {
    out.label = NliLabel::kEntailment;
  } else {
    throw ContractError("delta-nli: unknown label '" + row.label +
                        "' (expected weakener|strengthener)");
  }
  out.record_id = std::move(record_id);
  out.hypothesis = std::string(text::trim(row.hypothesis));
  if (!text::trim(row.premise).empty()) {
    out.hypothesis += " " + std::string(text::trim(row.premise));
  }
  out.premise = std::string(text::trim(row.update));
  out.source_task = "delta-nli";
  return out;
}

std::optional<NliRecord> convert_atomic(const AtomicRow& row,
                                        std::string record_id) {
  NliRecord out;
  if (row.relation == "HinderedBy") {
    out.label = NliLabel::kContradiction;
  } else if (row.relation == "Causes" || row.relation == "xNeed") {
    out.label = NliLabel::kEntailment;
  } else {
    return std::nullopt;
  }
  require_text(row.head, "head", record_id);
  require_text(row.tail, "tail", record_id);
  out.record_id = std::move(record_id);
  out.hypothesis = row.head;
  out.premise = row.tail;
  out.source_task = "atomic";
  return out;
}

std::array<NliRecord, 2> convert_winoventi(const WinoventiRow& row,
                                           std::string record_id) {
  const auto sentences = segment_sentences(
      make_document(record_id, row.masked_prompt, "winoventi"));
  require(sentences.size() == 2,
          "winoventi: masked_prompt must hold exactly two sentences in " +
              record_id);
  const std::string& second = sentences[1].text;
  std::string_view mask;
  for (std::string_view m : kWinoventiMasks) {
    if (second.find(m) != std::string::npos) {
      mask = m;
      break;
    }
  }
  require(!mask.empty(), "winoventi: mask token absent in " + record_id);
  require_text(row.target, "target", record_id);
  require_text(row.incorrect, "incorrect", record_id);

  const std::size_t at = second.find(mask);
  auto premise = [&](const std::string& filler) {
    std::string p = second;
    p.replace(at, mask.size(), filler);
    return p;
  };
  NliRecord entail;
  entail.record_id = record_id + "#target";
  entail.hypothesis = sentences[0].text;
  entail.premise = premise(row.target);
  entail.label = NliLabel::kEntailment;
  entail.source_task = "winoventi";
  NliRecord contra = entail;
  contra.record_id = record_id + "#incorrect";
  contra.premise = premise(row.incorrect);
  contra.label = NliLabel::kContradiction;
  return {std::move(entail), std::move(contra)};
}

const Lexicalization& default_lexicalization() {
  static const Lexicalization table = {
      {"xEffect", ""},
      {"xIntent", "PersonX intends to"},
      {"xNeed", "PersonX needs to"},
      {"xWant", "PersonX wants to"},
      {"xReact", "PersonX feels"},
  };
  return table;
}

Lexicalization load_lexicalization(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open lexicalization table " + path.string());
  try {
    nlohmann::json doc;
    in >> doc;
    Lexicalization table = default_lexicalization();
    for (const auto& [relation, prefix] : doc.items()) {
      table[relation] = prefix.get<std::string>();
    }
    return table;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed lexicalization table: " +
                      std::string(e.what()));
  }
}

const std::array<std::string_view, 20>& anion_names() {
  static constexpr std::array<std::string_view, 20> names = {
      "Alice", "Bob",    "Carol", "David",  "Emma", "Frank", "Grace",
      "Henry", "Irene",  "Jack",  "Karen",  "Liam", "Maria", "Noah",
      "Olivia", "Peter", "Quinn", "Rachel", "Sam",  "Tina"};
  return names;
}

std::pair<std::string, std::string> names_for_seed(std::uint64_t seed) {
  const auto i = static_cast<std::size_t>(seed % 10);
  return {std::string(anion_names()[2 * i]),
          std::string(anion_names()[2 * i + 1])};
}

std::array<NliRecord, 2> convert_anion(const AnionRow& row,
                                       std::uint64_t name_seed,
                                       std::string record_id,
                                       const Lexicalization& lexicalization) {
  const auto it = lexicalization.find(row.relation);
  if (it == lexicalization.end()) {
    std::string supported;
    for (const auto& entry : lexicalization) {
      if (!supported.empty()) supported += ", ";
      supported += entry.first;
    }
    throw ContractError("anion: unknown relation '" + row.relation +
                        "' (supported: " + supported + ")");
  }
  require_text(row.orig_head, "orig_head", record_id);
  require_text(row.neg_head, "neg_head", record_id);
  require_text(row.tail, "tail", record_id);
  const auto [x, y] = names_for_seed(name_seed);
  auto name = [&x = x, &y = y](std::string s) {
    return replace_all(replace_all(std::move(s), "PersonX", x), "PersonY", y);
  };
  std::string premise(text::trim(row.tail));
  if (!it->second.empty()) premise = it->second + " " + premise;
  premise = with_final_period(name(premise));

  NliRecord orig;
  orig.record_id = record_id + "#orig";
  orig.hypothesis = name(row.orig_head);
  orig.premise = premise;
  orig.label = NliLabel::kEntailment;
  orig.source_task = "anion";
  NliRecord neg = orig;
  neg.record_id = record_id + "#neg";
  neg.hypothesis = name(row.neg_head);
  neg.label = NliLabel::kContradiction;
  return {std::move(orig), std::move(neg)};
}

NliRecord convert_paco(const PacoRow& row, std::string record_id) {
  require_text(row.statement, "statement", record_id);
  require_text(row.precondition, "precondition", record_id);
  NliRecord out;
  if (row.label == "Disabling") {
    out.label = NliLabel::kContradiction;
  } else if (row.label == "Enabling") {
    out.label = NliLabel::kEntailment;
  } else {
    throw ContractError("paco: unknown label '" + row.label +
                        "' (expected Disabling|Enabling)");
  }
  out.record_id = std::move(record_id);
  out.hypothesis = row.statement;
  out.premise = row.precondition;
  out.source_task = "paco";
  return out;
}

SplitRatios parse_ratios(std::string_view csv) {
  const auto parts = text::split(csv, ',');
  if (parts.size() != 3) {
    throw ConfigError("split ratios need three comma-separated values");
  }
  try {
    return SplitRatios{std::stod(parts[0]), std::stod(parts[1]),
                       std::stod(parts[2])};
  } catch (const std::exception&) {
    throw ConfigError("split ratios must be numbers: '" + std::string(csv) +
                      "'");
  }
}

SplitSizes split_sizes(std::size_t n, const SplitRatios& r) {
  if (!(r.train >= 0 && r.dev >= 0 && r.test >= 0) ||
      std::abs(r.train + r.dev + r.test - 1.0) > 1e-9) {
    throw ConfigError("split ratios must be non-negative and sum to 1");
  }
  // 0.15 * 100 evaluates to 14.999..., hence the epsilon.
  auto part = [n](double ratio) {
    return static_cast<std::size_t>(
        std::floor(ratio * static_cast<double>(n) + 1e-9));
  };
  SplitSizes s;
  s.train = std::min(part(r.train), n);
  s.dev = std::min(part(r.dev), n - s.train);
  s.test = n - s.train - s.dev;
  return s;
}

std::vector<NliRecord> split(std::vector<NliRecord> records,
                             const SplitRatios& ratios, std::uint64_t seed) {
  const SplitSizes sizes = split_sizes(records.size(), ratios);
  auto rng = keyed_rng(seed, "split");
  const auto order = seeded_permutation(records.size(), rng);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    Split tag = Split::kTest;
    if (pos < sizes.train) {
      tag = Split::kTrain;
    } else if (pos < sizes.train + sizes.dev) {
      tag = Split::kDev;
    }
    records[order[pos]].split = tag;
  }
  return records;
}

}  // namespace precondforge
