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

// Parallel kernels against their serial references. Run with
// OMP_NUM_THREADS set to compare scaling.

#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "precondforge/corpus.hpp"
#include "precondforge/extraction.hpp"
#include "precondforge/labelmodel.hpp"
#include "precondforge/patterns.hpp"

namespace pf = precondforge;

namespace {

std::vector<pf::Statement> corpus(std::size_t n) {
  static const std::vector<std::string> heads = {
      "Dogs bark", "Pears will rot", "Swimming pools have cold water",
      "A drum makes noise", "Trees continue to grow for all their lives"};
  static const std::vector<std::string> conj = {
      "if", "if not", "unless", "except", "in case", "only if", "but", "and"};
  static const std::vector<std::string> tails = {
      "they are heated.", "refrigerated", "you beat it.",
      "it is on the floor.", "in winter if they are not evergreen."};
  std::mt19937_64 rng(n);
  std::vector<pf::Statement> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(pf::make_statement(
        "b" + std::to_string(i), heads[rng() % heads.size()] + " " +
                                     conj[rng() % conj.size()] + " " +
                                     tails[rng() % tails.size()]));
  }
  return out;
}

pf::LabelMatrix random_matrix(std::size_t rows, std::size_t cols) {
  std::vector<std::string> ids(rows), lfs(cols);
  for (std::size_t i = 0; i < rows; ++i) ids[i] = std::to_string(i);
  for (std::size_t j = 0; j < cols; ++j) lfs[j] = "lf" + std::to_string(j);
  pf::LabelMatrix m(ids, lfs);
  std::mt19937_64 rng(rows * 31 + cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const auto r = rng() % 4;
      if (r == 1) m.set(i, j, pf::Label::kAllow);
      if (r == 2) m.set(i, j, pf::Label::kPrevent);
    }
  }
  return m;
}

const pf::PatternRegistry& registry() {
  static const auto reg = pf::all_enabled(pf::PatternRegistry::builtin());
  return reg;
}

void BM_LabelMatrix(benchmark::State& state) {
  const auto stmts = corpus(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pf::build_label_matrix(stmts, registry()));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_LabelMatrixSerial(benchmark::State& state) {
  const auto stmts = corpus(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        pf::reference::build_label_matrix_serial(stmts, registry()));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Extraction(benchmark::State& state) {
  const auto stmts = corpus(state.range(0));
  const pf::LexiconTagger tagger;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pf::run_extraction(stmts, registry(), tagger));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ExtractionSerial(benchmark::State& state) {
  const auto stmts = corpus(state.range(0));
  const pf::LexiconTagger tagger;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        pf::reference::run_extraction_serial(stmts, registry(), tagger));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_LfStats(benchmark::State& state) {
  const auto m = random_matrix(state.range(0), 23);
  for (auto _ : state) benchmark::DoNotOptimize(pf::count_lf_stats(m));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_LfStatsSerial(benchmark::State& state) {
  const auto m = random_matrix(state.range(0), 23);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pf::reference::count_lf_stats_serial(m));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_OneCoinEm(benchmark::State& state) {
  const auto m = random_matrix(state.range(0), 8);
  const std::vector<double> init(8, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(pf::one_coin_em(m, init, {}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_OneCoinEmSerial(benchmark::State& state) {
  const auto m = random_matrix(state.range(0), 8);
  const std::vector<double> init(8, 0.7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pf::reference::one_coin_em_serial(m, init, {}));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_LabelMatrix)->Arg(1 << 12)->Arg(1 << 15)->UseRealTime();
BENCHMARK(BM_LabelMatrixSerial)->Arg(1 << 12)->Arg(1 << 15)->UseRealTime();
BENCHMARK(BM_Extraction)->Arg(1 << 12)->Arg(1 << 15)->UseRealTime();
BENCHMARK(BM_ExtractionSerial)->Arg(1 << 12)->Arg(1 << 15)->UseRealTime();
BENCHMARK(BM_LfStats)->Arg(1 << 14)->Arg(1 << 18)->UseRealTime();
BENCHMARK(BM_LfStatsSerial)->Arg(1 << 14)->Arg(1 << 18)->UseRealTime();
BENCHMARK(BM_OneCoinEm)->Arg(1 << 14)->Arg(1 << 17)->UseRealTime();
BENCHMARK(BM_OneCoinEmSerial)->Arg(1 << 14)->Arg(1 << 17)->UseRealTime();

BENCHMARK_MAIN();
