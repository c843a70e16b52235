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

#include "precondforge/pabi.hpp"

#include <cmath>
#include <cstdio>
#include <map>

#include "precondforge/errors.hpp"

namespace precondforge {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

void check_fraction(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ContractError(std::string(name) + " must lie in [0,1], got " +
                        fmt("%g", v));
  }
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

int label_rank(const std::string& label) {
  if (label == "ENTAILMENT") return 0;
  if (label == "CONTRADICTION") return 1;
  return 2;
}

}  // namespace

nlohmann::ordered_json PabiReport::to_json() const {
  nlohmann::ordered_json j;
  j["label_count"] = label_count;
  if (eta1) j["eta1"] = *eta1;
  if (eta2) j["eta2"] = *eta2;
  j["eta"] = eta;
  j["pabi"] = score;
  j["eta_x100"] = fmt("%.1f", eta * 100.0);
  j["pabi_x100"] = fmt("%.1f", score * 100.0);
  return j;
}

std::string PabiReport::to_table() const {
  std::string out = "|L|=" + std::to_string(label_count);
  if (eta1) out += " eta1=" + fmt("%.1f", *eta1 * 100.0);
  if (eta2) out += " eta2=" + fmt("%.1f", *eta2 * 100.0);
  out += " eta=" + fmt("%.1f", eta * 100.0);
  out += " pabi=" + fmt("%.1f", score * 100.0);
  return out;
}

double error_rate(const LabelSequence& pred, const LabelSequence& gold) {
  if (pred.size() != gold.size() || pred.ids.size() != pred.size() ||
      gold.ids.size() != gold.size()) {
    throw ContractError("label sequences differ in length (" +
                        std::to_string(pred.size()) + " vs " +
                        std::to_string(gold.size()) + ")");
  }
  if (gold.size() == 0) throw ContractError("label sequences are empty");
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (pred.ids[i] != gold.ids[i]) {
      throw ContractError("record ids misaligned at position " +
                          std::to_string(i) + ": '" + pred.ids[i] +
                          "' vs '" + gold.ids[i] + "'");
    }
    if (pred.labels[i] != gold.labels[i]) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(gold.size());
}

double eta_from_rates(const RatePair& r) {
  if (r.label_count < 2) throw ContractError("|L| must be at least 2");
  check_fraction(r.eta1, "eta1");
  check_fraction(r.eta2, "eta2");
  const double l = r.label_count;
  const double denom = 1.0 - l * (1.0 - r.eta1);
  // Rounding in eta1 = (|L|-1)/|L| leaves a residue of a few ulps.
  if (std::abs(denom) < 1e-12) {
    throw SingularityError("eta1 = (|L|-1)/|L| makes the denominator zero");
  }
  const double eta = (l - 1.0) * (r.eta1 - r.eta2) / denom;
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw InconsistentRatesError(
        "rates give eta=" + fmt("%.6g", eta) + " outside [0,1] (|L|=" +
        std::to_string(r.label_count) + ", eta1=" + fmt("%g", r.eta1) +
        ", eta2=" + fmt("%g", r.eta2) + ")");
  }
  return eta;
}

double pabi_score(int label_count, double eta) {
  if (label_count < 2) throw ContractError("|L| must be at least 2");
  check_fraction(eta, "eta");
  const double l = label_count;
  const double entropy =
      eta * std::log(l - 1.0) - xlogx(eta) - xlogx(1.0 - eta);
  double radicand = 1.0 - entropy / std::log(l);
  if (radicand < -1e-12) {
    throw DomainError("negative radicand " + fmt("%.6g", radicand) +
                      " for |L|=" + std::to_string(label_count) +
                      ", eta=" + fmt("%g", eta));
  }
  if (radicand < 0.0) radicand = 0.0;
  return std::sqrt(radicand);
}

PabiReport pabi_from_rates(const RatePair& r) {
  PabiReport rep;
  rep.label_count = r.label_count;
  rep.eta1 = r.eta1;
  rep.eta2 = r.eta2;
  rep.eta = eta_from_rates(r);
  rep.score = pabi_score(r.label_count, rep.eta);
  return rep;
}

PabiReport pabi_from_eta(int label_count, double eta) {
  PabiReport rep;
  rep.label_count = label_count;
  rep.eta = eta;
  rep.score = pabi_score(label_count, eta);
  return rep;
}

LabelSequence zero_rate_predictions(const LabelSequence& gold) {
  if (gold.size() == 0) throw ContractError("gold labels are empty");
  std::map<std::string, std::size_t> counts;
  for (const auto& l : gold.labels) ++counts[l];
  const std::string* best = nullptr;
  std::size_t best_n = 0;
  for (const auto& [label, n] : counts) {
    const bool better =
        best == nullptr || n > best_n ||
        (n == best_n && label_rank(label) < label_rank(*best));
    if (better) {
      best = &label;
      best_n = n;
    }
  }
  LabelSequence out;
  out.ids = gold.ids;
  out.labels.assign(gold.size(), *best);
  return out;
}

}  // namespace precondforge
