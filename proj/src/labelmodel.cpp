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

#include "precondforge/labelmodel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <omp.h>

#include "precondforge/errors.hpp"
#include "precondforge/parallel.hpp"

namespace precondforge {

FactorValues compute_factors(const LabelMatrix& matrix, std::size_t i,
                             std::size_t j, std::optional<std::size_t> k,
                             std::optional<Label> y_i) {
  if (i >= matrix.rows() || j >= matrix.cols()) {
    throw ContractError("compute_factors: index out of range");
  }
  const Label cell = matrix.at(i, j);
  FactorValues f;
  f.phi_lab = cell != Label::kAbstain ? 1 : 0;
  if (y_i) f.phi_acc = cell == *y_i ? 1 : 0;
  if (k) {
    if (*k >= matrix.cols()) {
      throw ContractError("compute_factors: k out of range");
    }
    if (*k == j) throw ContractError("compute_factors: phi_corr needs k != j");
    f.phi_corr = cell == matrix.at(i, *k) ? 1 : 0;
  }
  return f;
}

// ---------------------------------------------------------------------------
// Statistics

namespace {

void check_non_degenerate(const LabelMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) {
    throw ContractError("LF statistics need a matrix with at least one row");
  }
}

LfCounts zero_counts(const LabelMatrix& m) {
  LfCounts c;
  c.rows = m.rows();
  c.covered.assign(m.cols(), 0);
  c.overlapped.assign(m.cols(), 0);
  c.conflicted.assign(m.cols(), 0);
  return c;
}

void tally_row(const Label* row, std::size_t cols, LfCounts& c) {
  std::size_t labelled = 0;
  bool has_allow = false;
  bool has_prevent = false;
  for (std::size_t j = 0; j < cols; ++j) {
    if (row[j] == Label::kAbstain) continue;
    ++labelled;
    has_allow |= row[j] == Label::kAllow;
    has_prevent |= row[j] == Label::kPrevent;
  }
  if (labelled == 0) return;
  ++c.any;
  if (labelled >= 2) ++c.multi;
  if (has_allow && has_prevent) ++c.conflicting;
  for (std::size_t j = 0; j < cols; ++j) {
    if (row[j] == Label::kAbstain) continue;
    ++c.covered[j];
    if (labelled >= 2) ++c.overlapped[j];
    const bool disagrees = row[j] == Label::kAllow ? has_prevent : has_allow;
    if (disagrees) ++c.conflicted[j];
  }
}

void merge(LfCounts& into, const LfCounts& from) {
  for (std::size_t j = 0; j < into.covered.size(); ++j) {
    into.covered[j] += from.covered[j];
    into.overlapped[j] += from.overlapped[j];
    into.conflicted[j] += from.conflicted[j];
  }
  into.any += from.any;
  into.multi += from.multi;
  into.conflicting += from.conflicting;
}

std::string percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", fraction * 100.0);
  return buf;
}

}  // namespace

LfCounts count_lf_stats(const LabelMatrix& matrix) {
  check_non_degenerate(matrix);
  LfCounts total = zero_counts(matrix);
  const auto n = static_cast<std::int64_t>(matrix.rows());
#pragma omp parallel
  {
    LfCounts local = zero_counts(matrix);
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < n; ++i) {
      tally_row(matrix.row(i), matrix.cols(), local);
    }
#pragma omp critical(precondforge_lf_stats)
    merge(total, local);
  }
  return total;
}

namespace reference {
LfCounts count_lf_stats_serial(const LabelMatrix& matrix) {
  check_non_degenerate(matrix);
  LfCounts c = zero_counts(matrix);
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    tally_row(matrix.row(i), matrix.cols(), c);
  }
  return c;
}
}  // namespace reference

LfStats stats_from_counts(const LabelMatrix& matrix, const LfCounts& c) {
  const double rows = static_cast<double>(c.rows);
  LfStats s;
  for (std::size_t j = 0; j < matrix.cols(); ++j) {
    s.per_lf.push_back({matrix.lf_ids()[j], c.covered[j] / rows,
                        c.overlapped[j] / rows, c.conflicted[j] / rows});
  }
  s.overall = {"Overall", c.any / rows, c.multi / rows, c.conflicting / rows};
  return s;
}

LfStats compute_lf_stats(const LabelMatrix& matrix) {
  return stats_from_counts(matrix, count_lf_stats(matrix));
}

nlohmann::ordered_json LfStats::to_json() const {
  auto entry = [](const LfStat& s) {
    nlohmann::ordered_json e;
    e["coverage"] = percent(s.coverage);
    e["overlaps"] = percent(s.overlaps);
    e["conflicts"] = percent(s.conflicts);
    return e;
  };
  nlohmann::ordered_json j;
  for (const LfStat& s : per_lf) j[s.lf_id] = entry(s);
  j[overall.lf_id] = entry(overall);
  return j;
}

std::string LfStats::to_table() const {
  std::size_t width = overall.lf_id.size();
  for (const LfStat& s : per_lf) width = std::max(width, s.lf_id.size());
  std::ostringstream out;
  auto line = [&](const std::string& name, const std::string& a,
                  const std::string& b, const std::string& c) {
    out << name << std::string(width - name.size() + 2, ' ') << a
        << std::string(a.size() < 8 ? 8 - a.size() : 1, ' ') << b
        << std::string(b.size() < 8 ? 8 - b.size() : 1, ' ') << c << "\n";
  };
  line("LF name", "Cov. %", "Over. %", "Conf. %");
  for (const LfStat& s : per_lf) {
    line(s.lf_id, percent(s.coverage), percent(s.overlaps),
         percent(s.conflicts));
  }
  line(overall.lf_id, percent(overall.coverage), percent(overall.overlaps),
       percent(overall.conflicts));
  return out.str();
}

// ---------------------------------------------------------------------------
// Aggregation

AggregationStrategy parse_strategy(std::string_view name) {
  std::string n = text::ascii_lower(name);
  std::replace(n.begin(), n.end(), '-', '_');
  if (n == "precision_priority") return AggregationStrategy::kPrecisionPriority;
  if (n == "majority") return AggregationStrategy::kMajority;
  if (n == "one_coin_em") return AggregationStrategy::kOneCoinEm;
  throw ConfigError("unknown aggregation strategy '" + std::string(name) + "'");
}

namespace {

std::vector<std::size_t> registry_columns(const LabelMatrix& m,
                                          const PatternRegistry& registry) {
  std::vector<std::size_t> idx;
  for (const std::string& id : m.lf_ids()) {
    const auto i = registry.index_of(id);
    if (!i) throw ContractError("aggregate: lf '" + id + "' not in registry");
    idx.push_back(*i);
  }
  return idx;
}

Label precision_priority_row(const Label* row,
                             const std::vector<std::size_t>& columns,
                             const PatternRegistry& registry) {
  std::optional<std::size_t> best;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (row[j] == Label::kAbstain) continue;
    if (!best) {
      best = j;
      continue;
    }
    const double pj = registry[columns[j]].priority();
    const double pb = registry[columns[*best]].priority();
    if (pj > pb || (pj == pb && columns[j] < columns[*best])) best = j;
  }
  return best ? row[*best] : Label::kAbstain;
}

Label majority_row(const Label* row, std::size_t cols) {
  std::size_t allow = 0;
  std::size_t prevent = 0;
  for (std::size_t j = 0; j < cols; ++j) {
    allow += row[j] == Label::kAllow;
    prevent += row[j] == Label::kPrevent;
  }
  if (allow > prevent) return Label::kAllow;
  if (prevent > allow) return Label::kPrevent;
  return Label::kAbstain;
}

double clamp_accuracy(double a) {
  return std::clamp(a, kMinAccuracy, kMaxAccuracy);
}

struct RowPosterior {
  double p_allow = 0.5;
  double log_likelihood = 0.0;
  bool labelled = false;
};

// Per-column log(acc) and log(1 - acc), computed once per E-step.
struct LogAccuracy {
  std::vector<double> right;
  std::vector<double> wrong;
  explicit LogAccuracy(const std::vector<double>& acc)
      : right(acc.size()), wrong(acc.size()) {
    for (std::size_t j = 0; j < acc.size(); ++j) {
      right[j] = std::log(acc[j]);
      wrong[j] = std::log1p(-acc[j]);
    }
  }
};

RowPosterior row_posterior(const Label* row, std::size_t cols,
                           const LogAccuracy& logs) {
  RowPosterior r;
  double la = std::log(0.5);
  double lp = std::log(0.5);
  for (std::size_t j = 0; j < cols; ++j) {
    if (row[j] == Label::kAbstain) continue;
    r.labelled = true;
    const double right = logs.right[j];
    const double wrong = logs.wrong[j];
    la += row[j] == Label::kAllow ? right : wrong;
    lp += row[j] == Label::kPrevent ? right : wrong;
  }
  const double hi = std::max(la, lp);
  r.log_likelihood = hi + std::log(std::exp(la - hi) + std::exp(lp - hi));
  r.p_allow = std::exp(la - r.log_likelihood);
  return r;
}

// Shared EM driver. `estep` fills posteriors for all rows, `mstep` computes
// one column's new accuracy. Sums run in row order in both variants.
template <typename EStep, typename MStep>
AggregateResult run_em(const LabelMatrix& m, std::vector<double> acc,
                       const EmOptions& opt, EStep&& estep, MStep&& mstep) {
  bool any = false;
  for (std::size_t i = 0; i < m.rows() && !any; ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m.at(i, j) != Label::kAbstain) {
        any = true;
        break;
      }
    }
  }
  if (!any) throw ContractError("one-coin EM needs a non-abstain row");
  if (acc.size() != m.cols()) {
    throw ContractError("one-coin EM: accuracy vector size mismatch");
  }
  for (double& a : acc) a = clamp_accuracy(a);

  std::vector<RowPosterior> post(m.rows());
  auto total_ll = [&] {
    double s = 0.0;
    for (const RowPosterior& r : post) s += r.log_likelihood;
    return s;
  };
  EmTrace trace;
  estep(acc, post);
  trace.log_likelihoods.push_back(total_ll());
  std::vector<double> next(acc.size());
  for (int it = 0; it < opt.max_iterations; ++it) {
    mstep(acc, post, next);
    double delta = 0.0;
    for (std::size_t j = 0; j < acc.size(); ++j) {
      delta = std::max(delta, std::abs(next[j] - acc[j]));
    }
    acc = next;
    estep(acc, post);
    trace.log_likelihoods.push_back(total_ll());
    trace.iterations = it + 1;
    if (delta < opt.tolerance) break;
  }
  AggregateResult result;
  result.labels.resize(m.rows(), Label::kAbstain);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const RowPosterior& r = post[i];
    if (!r.labelled || std::abs(r.p_allow - 0.5) < 1e-12) continue;
    result.labels[i] = r.p_allow > 0.5 ? Label::kAllow : Label::kPrevent;
  }
  trace.accuracies = acc;
  result.em = std::move(trace);
  return result;
}

double column_update(const LabelMatrix& m, std::size_t j,
                     const std::vector<RowPosterior>& post, double current) {
  double agree = 0.0;
  std::size_t covered = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const Label v = m.at(i, j);
    if (v == Label::kAbstain) continue;
    ++covered;
    agree += v == Label::kAllow ? post[i].p_allow : 1.0 - post[i].p_allow;
  }
  if (covered == 0) return current;
  return clamp_accuracy(agree / static_cast<double>(covered));
}

}  // namespace

AggregateResult one_coin_em(const LabelMatrix& m,
                            const std::vector<double>& initial_accuracy,
                            const EmOptions& options) {
  auto estep = [&](const std::vector<double>& acc,
                   std::vector<RowPosterior>& post) {
    const LogAccuracy logs(acc);
    parallel_for(
        m.rows(),
        [&](std::size_t i) {
          post[i] = row_posterior(m.row(i), m.cols(), logs);
        },
        256);
  };
  auto mstep = [&](const std::vector<double>& acc,
                   const std::vector<RowPosterior>& post,
                   std::vector<double>& next) {
    parallel_for(
        m.cols(),
        [&](std::size_t j) { next[j] = column_update(m, j, post, acc[j]); }, 1);
  };
  return run_em(m, initial_accuracy, options, estep, mstep);
}

namespace reference {
AggregateResult one_coin_em_serial(const LabelMatrix& m,
                                   const std::vector<double>& initial_accuracy,
                                   const EmOptions& options) {
  auto estep = [&](const std::vector<double>& acc,
                   std::vector<RowPosterior>& post) {
    const LogAccuracy logs(acc);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      post[i] = row_posterior(m.row(i), m.cols(), logs);
    }
  };
  auto mstep = [&](const std::vector<double>& acc,
                   const std::vector<RowPosterior>& post,
                   std::vector<double>& next) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      next[j] = column_update(m, j, post, acc[j]);
    }
  };
  return run_em(m, initial_accuracy, options, estep, mstep);
}
}  // namespace reference

AggregateResult aggregate(const LabelMatrix& matrix,
                          const PatternRegistry& registry,
                          AggregationStrategy strategy, const EmOptions& em) {
  const auto columns = registry_columns(matrix, registry);
  AggregateResult result;
  switch (strategy) {
    case AggregationStrategy::kPrecisionPriority:
      result.labels.resize(matrix.rows());
      for (std::size_t i = 0; i < matrix.rows(); ++i) {
        result.labels[i] =
            precision_priority_row(matrix.row(i), columns, registry);
      }
      return result;
    case AggregationStrategy::kMajority:
      result.labels.resize(matrix.rows());
      for (std::size_t i = 0; i < matrix.rows(); ++i) {
        result.labels[i] = majority_row(matrix.row(i), matrix.cols());
      }
      return result;
    case AggregationStrategy::kOneCoinEm: {
      std::vector<double> init;
      for (std::size_t c : columns) {
        init.push_back(registry[c].precision.value_or(em.default_accuracy));
      }
      return one_coin_em(matrix, init, em);
    }
  }
  throw ConfigError("unknown aggregation strategy");
}

}  // namespace precondforge
