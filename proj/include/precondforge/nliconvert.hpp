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

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "precondforge/augment.hpp"
#include "precondforge/extraction.hpp"

namespace precondforge {

enum class NliLabel { kEntailment, kContradiction };
enum class Split { kTrain, kDev, kTest };

std::string_view to_string(NliLabel l);
std::string_view to_string(Split s);
NliLabel parse_nli_label(std::string_view name);
Split parse_split(std::string_view name);

struct NliRecord {
  std::string record_id;
  std::string hypothesis;
  std::string premise;
  NliLabel label = NliLabel::kEntailment;
  std::string source_task;
  std::optional<Split> split;

  friend bool operator==(const NliRecord&, const NliRecord&) = default;
};

// ALLOW -> ENTAILMENT, PREVENT -> CONTRADICTION; hypothesis is the action,
// premise the precondition.
NliRecord convert_weak(const ExtractionRecord& rec);
NliRecord convert_weak(const AugmentationRecord& rec, std::size_t ordinal);

struct DeltaNliRow {
  std::string hypothesis;
  std::string premise;
  std::string update;
  std::string label;  // weakener | strengthener
};
// hypothesis = row.hypothesis + " " + row.premise, premise = row.update.
NliRecord convert_delta_nli(const DeltaNliRow& row, std::string record_id);

struct AtomicRow {
  std::string head;
  std::string relation;
  std::string tail;
};
// HinderedBy -> CONTRADICTION; Causes, xNeed -> ENTAILMENT; others skipped.
std::optional<NliRecord> convert_atomic(const AtomicRow& row,
                                        std::string record_id);

struct WinoventiRow {
  std::string masked_prompt;  // two sentences, mask token in the second
  std::string target;
  std::string incorrect;
};
// Mask tokens recognised in the prompt.
inline constexpr std::array<std::string_view, 2> kWinoventiMasks = {"{MASK}",
                                                                   "[MASK]"};
std::array<NliRecord, 2> convert_winoventi(const WinoventiRow& row,
                                           std::string record_id);

struct AnionRow {
  std::string orig_head;
  std::string neg_head;
  std::string relation;
  std::string tail;
};

// Relation -> premise prefix; PersonX/PersonY inside are replaced by names.
using Lexicalization = std::map<std::string, std::string>;
const Lexicalization& default_lexicalization();
Lexicalization load_lexicalization(const std::filesystem::path& path);

const std::array<std::string_view, 20>& anion_names();
// PersonX -> names[2i], PersonY -> names[2i+1] with i = seed mod 10.
std::pair<std::string, std::string> names_for_seed(std::uint64_t seed);

std::array<NliRecord, 2> convert_anion(
    const AnionRow& row, std::uint64_t name_seed, std::string record_id,
    const Lexicalization& lexicalization = default_lexicalization());

struct PacoRow {
  std::string statement;
  std::string precondition;
  std::string label;  // Disabling | Enabling
};
NliRecord convert_paco(const PacoRow& row, std::string record_id);

struct SplitRatios {
  double train = 0.45;
  double dev = 0.15;
  double test = 0.40;
};

SplitRatios parse_ratios(std::string_view csv);

struct SplitSizes {
  std::size_t train = 0, dev = 0, test = 0;
  friend bool operator==(const SplitSizes&, const SplitSizes&) = default;
};

// train = floor(r_train * N), dev = floor(r_dev * N), test takes the rest.
SplitSizes split_sizes(std::size_t n, const SplitRatios& ratios);

// Seeded shuffle, then contiguous partition of the shuffled order. Records
// keep their input order; only the split tags are assigned.
std::vector<NliRecord> split(std::vector<NliRecord> records,
                             const SplitRatios& ratios, std::uint64_t seed);

}  // namespace precondforge
