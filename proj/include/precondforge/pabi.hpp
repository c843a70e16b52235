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
#include <vector>

#include <json.hpp>

namespace precondforge {

struct RatePair {
  int label_count = 2;
  double eta1 = 0.0;
  double eta2 = 0.0;
};

// Labels keyed by record id, in file order.
struct LabelSequence {
  std::vector<std::string> ids;
  std::vector<std::string> labels;

  std::size_t size() const { return labels.size(); }
  void push_back(std::string id, std::string label) {
    ids.push_back(std::move(id));
    labels.push_back(std::move(label));
  }
};

struct PabiReport {
  int label_count = 2;
  double eta = 0.0;
  double score = 0.0;
  std::optional<double> eta1;
  std::optional<double> eta2;

  nlohmann::ordered_json to_json() const;
  // Values x100 with one decimal, e.g. "eta=28.8 pabi=36.6".
  std::string to_table() const;
};

// Fraction of aligned positions where the labels differ.
double error_rate(const LabelSequence& pred, const LabelSequence& gold);

double eta_from_rates(const RatePair& r);

// Throws DomainError for a radicand below -1e-12; noise above that clamps
// to zero.
double pabi_score(int label_count, double eta);

PabiReport pabi_from_rates(const RatePair& r);
PabiReport pabi_from_eta(int label_count, double eta);

// Constant prediction of the modal gold label. Ties prefer ENTAILMENT, then
// CONTRADICTION, then the lexicographically smallest label.
LabelSequence zero_rate_predictions(const LabelSequence& gold);

}  // namespace precondforge
