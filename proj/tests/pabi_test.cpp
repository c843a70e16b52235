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
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "precondforge/errors.hpp"

namespace precondforge {
namespace {

LabelSequence seq(const std::vector<std::string>& labels) {
  LabelSequence s;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    s.push_back("r" + std::to_string(i), labels[i]);
  }
  return s;
}

// Binary entropy in bits; for two labels the score is sqrt(1 - H2).
double binary_oracle(double eta) {
  auto h = [](double p) { return p <= 0.0 ? 0.0 : -p * std::log2(p); };
  return std::sqrt(std::max(0.0, 1.0 - h(eta) - h(1.0 - eta)));
}

TEST(ErrorRate, Examples) {
  const auto g = seq({"E", "C", "E", "E"});
  EXPECT_EQ(error_rate(g, g), 0.0);
  EXPECT_EQ(error_rate(seq({"C", "E", "C", "C"}), g), 1.0);
  EXPECT_EQ(error_rate(seq({"E", "C", "E", "C"}), g), 0.25);
}

TEST(ErrorRate, Misalignment) {
  const auto g = seq({"E", "C"});
  EXPECT_THROW(error_rate(seq({"E"}), g), ContractError);
  auto p = g;
  p.ids[1] = "other";
  EXPECT_THROW(error_rate(p, g), ContractError);
  EXPECT_THROW(error_rate(seq({}), seq({})), ContractError);
}

TEST(EtaFromRates, Examples) {
  EXPECT_NEAR(eta_from_rates({2, 0.04, 0.11}), 0.076, 0.001);
  EXPECT_NEAR(eta_from_rates({2, 0.01, 0.62}), 0.622, 0.001);
  EXPECT_EQ(eta_from_rates({2, 0.2, 0.2}), 0.0);
  EXPECT_EQ(eta_from_rates({3, 0.1, 0.1}), 0.0);
}

TEST(EtaFromRates, Errors) {
  EXPECT_THROW(eta_from_rates({2, 0.5, 0.1}), SingularityError);
  EXPECT_THROW(eta_from_rates({3, 2.0 / 3.0, 0.1}), SingularityError);
  // Silver better on target than on source gives a negative eta.
  EXPECT_THROW(eta_from_rates({2, 0.19, 0.10}), InconsistentRatesError);
  EXPECT_THROW(eta_from_rates({1, 0.1, 0.2}), ContractError);
  EXPECT_THROW(eta_from_rates({2, -0.1, 0.2}), ContractError);
}

TEST(EtaFromRates, LinearInEta2) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 0.3);
  for (int t = 0; t < 200; ++t) {
    const double e1 = u(rng);
    const double a = e1 + u(rng), b = e1 + u(rng);
    const double mid = 0.5 * (a + b);
    const double fa = eta_from_rates({2, e1, a});
    const double fb = eta_from_rates({2, e1, b});
    EXPECT_NEAR(eta_from_rates({2, e1, mid}), 0.5 * (fa + fb), 1e-12);
  }
}

TEST(PabiScore, Examples) {
  EXPECT_NEAR(pabi_score(2, 0.288), 0.366, 0.005);
  EXPECT_NEAR(pabi_score(2, 0.046), 0.855, 0.005);
  EXPECT_EQ(pabi_score(2, 0.5), 0.0);
  EXPECT_EQ(pabi_score(2, 0.0), 1.0);
  EXPECT_EQ(pabi_score(2, 1.0), 1.0);
}

TEST(PabiScore, MatchesBinaryEntropyOracle) {
  for (int i = 0; i <= 1000; ++i) {
    const double eta = i / 1000.0;
    EXPECT_NEAR(pabi_score(2, eta), binary_oracle(eta), 1e-9) << eta;
  }
}

TEST(PabiScore, SymmetricAndDecreasing) {
  double prev = pabi_score(2, 0.0);
  for (int i = 1; i <= 500; ++i) {
    const double eta = i / 1000.0;
    const double s = pabi_score(2, eta);
    EXPECT_NEAR(s, pabi_score(2, 1.0 - eta), 1e-12);
    EXPECT_LT(s, prev) << eta;
    prev = s;
  }
}

TEST(PabiScore, MultiLabel) {
  // Uniform errors over |L| labels carry no information.
  for (int l = 2; l <= 6; ++l) {
    const double eta = (l - 1.0) / l;
    EXPECT_NEAR(pabi_score(l, eta), 0.0, 1e-6) << l;
    EXPECT_EQ(pabi_score(l, 0.0), 1.0);
  }
}

TEST(PabiScore, Domain) {
  EXPECT_THROW(pabi_score(1, 0.1), ContractError);
  EXPECT_THROW(pabi_score(2, 1.5), ContractError);
  // For three labels eta = 1 gives 1 - ln2/ln3 > 0, fine; the radicand is
  // negative only outside [0, 1], which is already rejected above.
  EXPECT_NO_THROW(pabi_score(3, 1.0));
}

TEST(Report, TableAndJson) {
  const auto r = pabi_from_eta(2, 0.288);
  EXPECT_EQ(r.to_table(), "|L|=2 eta=28.8 pabi=36.6");
  EXPECT_FALSE(r.eta1);
  const auto q = pabi_from_rates({2, 0.04, 0.11});
  EXPECT_EQ(q.score, pabi_score(2, q.eta));
  ASSERT_TRUE(q.eta1);
  EXPECT_EQ(*q.eta2, 0.11);
  const auto j = q.to_json();
  EXPECT_EQ(j["label_count"], 2);
  EXPECT_EQ(j["eta1"], 0.04);
}

TEST(ZeroRate, Examples) {
  std::vector<std::string> labels(7, "ENTAILMENT");
  labels.insert(labels.end(), 3, "CONTRADICTION");
  auto g = seq(labels);
  auto z = zero_rate_predictions(g);
  EXPECT_EQ(z.labels, std::vector<std::string>(10, "ENTAILMENT"));
  EXPECT_NEAR(error_rate(z, g), 0.30, 1e-12);
  EXPECT_EQ(z.ids, g.ids);

  g = seq({"CONTRADICTION", "CONTRADICTION"});
  EXPECT_EQ(error_rate(zero_rate_predictions(g), g), 0.0);

  g = seq({"CONTRADICTION", "ENTAILMENT"});
  EXPECT_EQ(zero_rate_predictions(g).labels[0], "ENTAILMENT");
  g = seq({"zeta", "alpha"});
  EXPECT_EQ(zero_rate_predictions(g).labels[0], "alpha");
}

TEST(ZeroRate, ErrorIsOneMinusModalFrequency) {
  std::mt19937_64 rng(12);
  const std::vector<std::string> pool = {"ENTAILMENT", "CONTRADICTION", "NEUTRAL"};
  for (int t = 0; t < 200; ++t) {
    std::vector<std::string> labels(1 + rng() % 40);
    std::map<std::string, std::size_t> freq;
    for (auto& l : labels) ++freq[l = pool[rng() % pool.size()]];
    std::size_t best = 0;
    for (const auto& [k, v] : freq) best = std::max(best, v);
    const auto g = seq(labels);
    EXPECT_NEAR(error_rate(zero_rate_predictions(g), g),
                1.0 - static_cast<double>(best) / labels.size(), 1e-12);
  }
}

}  // namespace
}  // namespace precondforge
