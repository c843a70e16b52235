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

#include "commands.hpp"

#include <fstream>
#include <memory>
#include <set>

#include "precondforge/augment.hpp"
#include "precondforge/corpus.hpp"
#include "precondforge/errors.hpp"
#include "precondforge/extraction.hpp"
#include "precondforge/labelmodel.hpp"
#include "precondforge/lexicon.hpp"
#include "precondforge/maskprep.hpp"
#include "precondforge/nliconvert.hpp"
#include "precondforge/pabi.hpp"
#include "precondforge/parallel.hpp"
#include "precondforge/patterns.hpp"
#include "precondforge/records.hpp"
#include "precondforge/remote.hpp"
#include "precondforge/rng.hpp"

namespace precondforge::cli {

namespace fs = std::filesystem;

namespace {

void require_file(const std::string& path, const char* what) {
  if (path.empty()) throw ConfigError(std::string(what) + " path is required");
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw ConfigError(std::string(what) + " not found: " + path);
  }
}

// Owns whatever the tagger and filler point into.
struct Backends {
  std::unique_ptr<Lexicon> owned_lexicon;
  const Lexicon* lexicon = nullptr;
  std::unique_ptr<Tagger> tagger;
  std::unique_ptr<MaskFiller> filler;
};

Backends make_backends(RunContext& ctx) {
  const PipelineConfig& c = ctx.config;
  Backends b;
  if (c.lexicon == "builtin") {
    b.lexicon = &Lexicon::builtin();
  } else {
    require_file(c.lexicon, "lexicon");
    ctx.input(c.lexicon);
    b.owned_lexicon = std::make_unique<Lexicon>(Lexicon::load(c.lexicon));
    b.lexicon = b.owned_lexicon.get();
  }
  ServiceEndpoint endpoint;
  endpoint.base_url = c.service_url;
  endpoint.timeout = std::chrono::milliseconds(c.service_timeout_ms);
  if (c.tagger == "remote") {
    b.tagger = std::make_unique<RemoteTagger>(endpoint);
  } else {
    b.tagger = std::make_unique<LexiconTagger>(*b.lexicon);
  }
  if (c.filler == "remote") {
    b.filler = std::make_unique<RemoteFiller>(endpoint);
  } else {
    b.filler = std::make_unique<LexiconFiller>(*b.lexicon);
  }
  return b;
}

PatternRegistry make_registry(RunContext& ctx) {
  const PipelineConfig& c = ctx.config;
  PatternRegistry base;
  if (c.registry == "builtin") {
    base = PatternRegistry::builtin();
  } else {
    require_file(c.registry, "registry");
    ctx.input(c.registry);
    base = PatternRegistry::load(c.registry);
  }
  if (c.all_patterns) return all_enabled(base);
  if (c.precision_threshold) {
    return filter_registry(base, *c.precision_threshold);
  }
  return base;
}

std::vector<Statement> load_statements(RunContext& ctx) {
  const PipelineConfig& c = ctx.config;
  if (c.corpus.empty()) throw ConfigError("no corpus given");
  std::vector<CorpusInput> inputs;
  for (const auto& path : c.corpus) {
    require_file(path, "corpus");
    ctx.input(path);
    CorpusInput in;
    in.path = path;
    in.format = parse_corpus_format(c.corpus_format);
    in.name = fs::path(path).stem().string();
    inputs.push_back(std::move(in));
  }
  return segment_corpus(load_documents(inputs));
}

template <typename Records>
void write_records(RunContext& ctx, const std::string& path,
                   const Records& records) {
  AtomicWriter w(path);
  for (const auto& r : records) w.write_line(to_json(r));
  w.commit();
  ctx.output(path);
}

std::string record_id_for(const nlohmann::json& row, const std::string& task,
                          std::size_t ordinal) {
  for (const char* key : {"record_id", "id"}) {
    if (auto it = row.find(key); it != row.end() && it->is_string()) {
      return it->get<std::string>();
    }
  }
  return task + "-" + std::to_string(ordinal + 1);
}

}  // namespace

void cmd_extract(RunContext& ctx, const ExtractArgs& args) {
  if (args.out.empty()) throw ConfigError("extract needs --out");
  const PatternRegistry registry = make_registry(ctx);
  if (registry.enabled_indices().empty()) {
    throw ConfigError("no pattern enabled in the registry");
  }
  Backends backends = make_backends(ctx);
  const auto statements = load_statements(ctx);
  const ExtractionResult result =
      run_extraction(statements, registry, *backends.tagger);

  write_records(ctx, args.out, result.records);
  const std::string report =
      args.report.empty() ? args.out + ".report.json" : args.report;
  write_text_file(report, result.report.to_json().dump(2) + "\n");
  ctx.output(report);
  if (!args.matrix_out.empty()) {
    const LabelMatrix m = build_label_matrix(statements, registry);
    AtomicWriter w(args.matrix_out);
    write_label_matrix(m, w.stream());
    w.commit();
    ctx.output(args.matrix_out);
  }
  const RunReport& r = result.report;
  ctx.out << "statements=" << r.input << " matched=" << r.matched
          << " dropped_question=" << r.dropped_question
          << " dropped_verb=" << r.dropped_verb << " emitted=" << r.emitted
          << " allow=" << r.allow << " prevent=" << r.prevent << "\n";
}

void cmd_augment(RunContext& ctx, const AugmentArgs& args) {
  require_file(args.in, "extraction file");
  if (args.out.empty()) throw ConfigError("augment needs --out");
  ctx.input(args.in);
  Backends backends = make_backends(ctx);
  const auto records =
      read_records<ExtractionRecord>(args.in, extraction_from_json);
  std::vector<AugmentSource> sources;
  sources.reserve(records.size());
  for (const auto& r : records) sources.push_back(make_augment_source(r));

  AugmentOptions options;
  options.caps = ctx.config.caps;
  options.seed = ctx.config.seed;
  options.placeholder = ctx.config.placeholder;
  const auto out =
      augment_all(sources, *backends.filler, *backends.tagger, options);
  write_records(ctx, args.out, out);
  ctx.out << "sources=" << sources.size() << " augmented=" << out.size()
          << "\n";
}

void cmd_maskprep(RunContext& ctx, const MaskprepArgs& args) {
  if (args.out.empty()) throw ConfigError("maskprep needs --out");
  ConjunctionLists lists = ConjunctionLists::builtin();
  if (!args.conjunctions.empty()) {
    require_file(args.conjunctions, "conjunction list");
    ctx.input(args.conjunctions);
    std::ifstream in(args.conjunctions);
    try {
      nlohmann::json doc;
      in >> doc;
      lists.allow = doc.at("allow").get<std::vector<std::string>>();
      lists.prevent = doc.at("prevent").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("malformed conjunction list: " + std::string(e.what()));
    }
  }
  const auto statements = load_statements(ctx);
  const MaskprepResult result =
      run_maskprep(statements, lists, ctx.config.placeholder);
  write_records(ctx, args.out, result.records);
  ctx.out << "statements=" << result.statements
          << " records=" << result.records.size()
          << " placeholder_collisions=" << result.placeholder_collisions
          << "\n";
}

void cmd_convert(RunContext& ctx, const ConvertArgs& args) {
  const auto& tasks = convert_tasks();
  if (std::find(tasks.begin(), tasks.end(), args.task) == tasks.end()) {
    throw ConfigError("unknown task '" + args.task + "'");
  }
  require_file(args.in, "input");
  if (args.out.empty()) throw ConfigError("convert needs --out");
  ctx.input(args.in);

  Lexicalization lex = default_lexicalization();
  if (!args.lexicalization.empty()) {
    require_file(args.lexicalization, "lexicalization table");
    ctx.input(args.lexicalization);
    lex = load_lexicalization(args.lexicalization);
  }
  const std::uint64_t name_seed = args.name_seed.value_or(ctx.config.seed);

  const auto rows = read_jsonl(args.in);
  std::vector<std::vector<NliRecord>> converted(rows.size());
  std::vector<std::size_t> aug_ordinal(rows.size(), 0);
  if (args.task == "weak-augmented") {
    // Ordinals count records per parent, so they do not depend on threads.
    std::map<std::string, std::size_t> seen;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      aug_ordinal[i] = seen[rows[i].value("parent_stmt_id", "")]++;
    }
  }

  parallel_for(rows.size(), [&](std::size_t i) {
    const auto& row = rows[i];
    const std::string& t = args.task;
    try {
      if (t == "weak") {
        converted[i] = {convert_weak(extraction_from_json(row))};
      } else if (t == "weak-augmented") {
        converted[i] = {convert_weak(augmentation_from_json(row),
                                     aug_ordinal[i])};
      } else {
        const std::string id = record_id_for(row, t, i);
        if (t == "delta-nli") {
          converted[i] = {convert_delta_nli(delta_nli_from_json(row), id)};
        } else if (t == "atomic") {
          if (auto r = convert_atomic(atomic_from_json(row), id)) {
            converted[i] = {std::move(*r)};
          }
        } else if (t == "winoventi") {
          auto pair = convert_winoventi(winoventi_from_json(row), id);
          converted[i] = {pair[0], pair[1]};
        } else if (t == "anion") {
          // Consecutive rows rotate through the name pairs.
          auto pair =
              convert_anion(anion_from_json(row), name_seed + i, id, lex);
          converted[i] = {pair[0], pair[1]};
        } else {
          converted[i] = {convert_paco(paco_from_json(row), id)};
        }
      }
    } catch (const nlohmann::json::exception& e) {
      throw ContractError(args.in + ": row " + std::to_string(i + 1) + ": " +
                          e.what());
    } catch (const ContractError& e) {
      throw ContractError(args.in + ": row " + std::to_string(i + 1) + ": " +
                          e.what());
    }
  });

  std::vector<NliRecord> flat;
  for (auto& v : converted) {
    for (auto& r : v) flat.push_back(std::move(r));
  }
  write_records(ctx, args.out, flat);
  ctx.out << "rows=" << rows.size() << " records=" << flat.size() << "\n";
}

void cmd_split(RunContext& ctx, const SplitArgs& args) {
  require_file(args.in, "input");
  if (args.out.empty()) throw ConfigError("split needs --out");
  ctx.input(args.in);
  auto records = read_records<NliRecord>(args.in, nli_from_json);
  records = split(std::move(records), ctx.config.split_ratios,
                  ctx.config.effective_split_seed());
  std::size_t n[3] = {0, 0, 0};
  for (const auto& r : records) ++n[static_cast<int>(*r.split)];
  write_records(ctx, args.out, records);
  ctx.out << "TRAIN=" << n[0] << " DEV=" << n[1] << " TEST=" << n[2] << "\n";
}

void cmd_stats(RunContext& ctx, const StatsArgs& args) {
  LabelMatrix matrix;
  std::optional<PatternRegistry> registry;
  if (!args.matrix.empty()) {
    require_file(args.matrix, "matrix");
    ctx.input(args.matrix);
    matrix = read_label_matrix(args.matrix);
  } else {
    registry = make_registry(ctx);
    matrix = build_label_matrix(load_statements(ctx), *registry);
  }
  const LfStats stats = compute_lf_stats(matrix);
  ctx.out << stats.to_table();
  if (!args.out.empty()) {
    write_text_file(args.out, stats.to_json().dump(2) + "\n");
    ctx.output(args.out);
  }
  if (args.aggregate.empty()) return;

  if (!registry) registry = make_registry(ctx);
  const AggregationStrategy strategy = parse_strategy(args.aggregate);
  const AggregateResult agg = aggregate(matrix, *registry, strategy);
  std::size_t counts[3] = {0, 0, 0};
  for (Label l : agg.labels) ++counts[static_cast<int>(l)];
  ctx.out << "aggregate=" << args.aggregate << " ALLOW=" << counts[1]
          << " PREVENT=" << counts[2] << " ABSTAIN=" << counts[0];
  if (agg.em) ctx.out << " em_iterations=" << agg.em->iterations;
  ctx.out << "\n";
  if (!args.labels_out.empty()) {
    AtomicWriter w(args.labels_out);
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
      ojson j;
      j["record_id"] = matrix.row_ids()[i];
      j["label"] = to_string(agg.labels[i]);
      w.write_line(j);
    }
    w.commit();
    ctx.output(args.labels_out);
  }
}

void cmd_pabi(RunContext& ctx, const PabiArgs& args) {
  const bool by_eta = args.eta.has_value();
  const bool by_rates = args.eta1.has_value() || args.eta2.has_value();
  const bool by_files = !args.gold.empty();
  if (by_eta + by_rates + by_files != 1) {
    throw ConfigError(
        "pabi needs exactly one of --eta, --eta1/--eta2, or --gold with "
        "--pred/--zero-rate");
  }
  if (args.label_count && *args.label_count < 2) {
    throw ConfigError("--labels must be at least 2");
  }
  PabiReport report;
  if (by_eta) {
    report = pabi_from_eta(args.label_count.value_or(2), *args.eta);
  } else if (by_rates) {
    if (!args.eta1 || !args.eta2) {
      throw ConfigError("--eta1 and --eta2 go together");
    }
    report = pabi_from_rates({args.label_count.value_or(2), *args.eta1,
                              *args.eta2});
  } else {
    if (args.pred.empty() == !args.zero_rate) {
      throw ConfigError("--gold needs exactly one of --pred or --zero-rate");
    }
    require_file(args.gold, "gold label file");
    ctx.input(args.gold);
    const LabelSequence gold = read_label_file(args.gold);
    LabelSequence pred;
    if (args.zero_rate) {
      pred = zero_rate_predictions(gold);
    } else {
      require_file(args.pred, "prediction file");
      ctx.input(args.pred);
      pred = read_label_file(args.pred);
    }
    std::set<std::string> distinct(gold.labels.begin(), gold.labels.end());
    distinct.insert(pred.labels.begin(), pred.labels.end());
    const int l = args.label_count.value_or(
        std::max(2, static_cast<int>(distinct.size())));
    report = pabi_from_eta(l, error_rate(pred, gold));
  }
  ctx.out << report.to_table() << "\n";
  if (!args.out.empty()) {
    write_text_file(args.out, report.to_json().dump(2) + "\n");
    ctx.output(args.out);
  }
}

void cmd_registry_export(RunContext& ctx, const RegistryExportArgs& args) {
  PatternRegistry reg = PatternRegistry::builtin();
  if (ctx.config.registry != "builtin") {
    require_file(ctx.config.registry, "registry");
    ctx.input(ctx.config.registry);
    reg = PatternRegistry::load(ctx.config.registry);
  }
  const std::string text = reg.to_json().dump(2) + "\n";
  if (args.out.empty()) {
    ctx.out << text;
    return;
  }
  write_text_file(args.out, text);
  ctx.output(args.out);
}

}  // namespace precondforge::cli
