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

#include "precondforge/patterns.hpp"

namespace precondforge {

struct FactorValues {
  int phi_lab = 0;
  std::optional<int> phi_acc;   // requires y_i
  std::optional<int> phi_corr;  // requires k
};

// Indicator factors of the generative label model for cell (i, j):
//   phi_lab  = 1{L[i,j] != ABSTAIN}
//   phi_acc  = 1{L[i,j] == y_i}
//   phi_corr = 1{L[i,j] == L[i,k]}
FactorValues compute_factors(const LabelMatrix& matrix, std::size_t i,
                             std::size_t j, std::optional<std::size_t> k = {},
                             std::optional<Label> y_i = {});

struct LfStat {
  std::string lf_id;
  double coverage = 0.0;
  double overlaps = 0.0;
  double conflicts = 0.0;
};

struct LfStats {
  std::vector<LfStat> per_lf;
  LfStat overall;  // lf_id "Overall"

  // Percentages with two decimals, keyed by lf_id.
  nlohmann::ordered_json to_json() const;
  std::string to_table() const;
};

// Integer tallies behind LfStats; exposed so kernels can be compared exactly.
struct LfCounts {
  std::size_t rows = 0;
  std::vector<std::size_t> covered, overlapped, conflicted;
  std::size_t any = 0, multi = 0, conflicting = 0;
  friend bool operator==(const LfCounts&, const LfCounts&) = default;
};

LfCounts count_lf_stats(const LabelMatrix& matrix);
LfStats stats_from_counts(const LabelMatrix& matrix, const LfCounts& counts);

// Coverage: fraction of rows the LF labels. Overlaps: rows it labels where
// another LF also labels. Conflicts: rows it labels where another LF gives a
// different non-abstain label. Overall values count rows with >= 1 label,
// >= 2 labels and disagreeing labels respectively.
LfStats compute_lf_stats(const LabelMatrix& matrix);

namespace reference {
LfCounts count_lf_stats_serial(const LabelMatrix& matrix);
}  // namespace reference

enum class AggregationStrategy { kPrecisionPriority, kMajority, kOneCoinEm };

AggregationStrategy parse_strategy(std::string_view name);

struct EmOptions {
  double tolerance = 1e-6;
  int max_iterations = 100;
  double default_accuracy = 0.7;  // for LFs without a precision
};

struct EmTrace {
  std::vector<double> accuracies;       // final, per column
  std::vector<double> log_likelihoods;  // after initialisation and each step
  int iterations = 0;
};

struct AggregateResult {
  std::vector<Label> labels;
  std::optional<EmTrace> em;
};

AggregateResult aggregate(const LabelMatrix& matrix,
                          const PatternRegistry& registry,
                          AggregationStrategy strategy,
                          const EmOptions& em = {});

// One-coin model: every LF is right with probability a_j independent of the
// class; uniform prior over {ALLOW, PREVENT}. Accuracies live in
// [kMinAccuracy, kMaxAccuracy], where the M-step is the clamped closed form.
inline constexpr double kMinAccuracy = 0.501;
inline constexpr double kMaxAccuracy = 1.0 - 1e-6;

AggregateResult one_coin_em(const LabelMatrix& matrix,
                            const std::vector<double>& initial_accuracy,
                            const EmOptions& options);

namespace reference {
AggregateResult one_coin_em_serial(const LabelMatrix& matrix,
                                   const std::vector<double>& initial_accuracy,
                                   const EmOptions& options);
}  // namespace reference

}  // namespace precondforge
