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

#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"
#include "precondforge/errors.hpp"
#include "precondforge/parallel.hpp"

#ifndef PRECONDFORGE_VERSION
#define PRECONDFORGE_VERSION "0.0.0"
#endif

namespace precondforge::cli {

std::string_view tool_version() { return PRECONDFORGE_VERSION; }

namespace {

namespace fs = std::filesystem;

// Command-line values that override the config file.
struct Overrides {
  std::vector<std::string> corpus;
  std::optional<std::string> corpus_format;
  std::optional<std::string> registry;
  std::optional<double> threshold;
  bool all_patterns = false;
  std::optional<std::string> lexicon;
  std::optional<std::string> tagger;
  std::optional<std::string> filler;
  std::optional<std::string> service_url;
  std::optional<std::size_t> per_mask;
  std::optional<std::size_t> per_statement;
  std::optional<std::size_t> top_k;
  std::optional<std::string> placeholder;
  std::optional<std::string> ratios;
  std::optional<std::uint64_t> split_seed;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;

  void apply(PipelineConfig& c) const {
    if (!corpus.empty()) c.corpus = corpus;
    if (corpus_format) c.corpus_format = *corpus_format;
    if (registry) c.registry = *registry;
    if (threshold) c.precision_threshold = *threshold;
    if (all_patterns) c.all_patterns = true;
    if (lexicon) c.lexicon = *lexicon;
    if (tagger) c.tagger = *tagger;
    if (filler) c.filler = *filler;
    if (service_url) c.service_url = *service_url;
    if (per_mask) c.caps.per_mask = *per_mask;
    if (per_statement) c.caps.per_statement = *per_statement;
    if (top_k) c.caps.request_top_k = *top_k;
    if (placeholder) c.placeholder = *placeholder;
    if (ratios) c.split_ratios = parse_ratios(*ratios);
    if (split_seed) c.split_seed = *split_seed;
    if (seed) c.seed = *seed;
    if (threads) c.threads = *threads;
  }
};

void add_corpus_options(CLI::App* sub, Overrides& o) {
  sub->add_option("--corpus", o.corpus, "Corpus file (repeatable)");
  sub->add_option("--format", o.corpus_format, "Corpus format")
      ->check(CLI::IsMember({"text", "jsonl"}));
}

void add_registry_options(CLI::App* sub, Overrides& o) {
  sub->add_option("--registry", o.registry,
                  "Pattern registry file, or 'builtin'");
  sub->add_option("--threshold", o.threshold, "Precision threshold");
  sub->add_flag("--all-patterns", o.all_patterns,
                "Enable every pattern, including those without a precision");
}

void add_backend_options(CLI::App* sub, Overrides& o, bool filler) {
  sub->add_option("--lexicon", o.lexicon, "Lexicon file, or 'builtin'");
  sub->add_option("--tagger", o.tagger, "POS tagger")
      ->check(CLI::IsMember({"lexicon", "remote"}));
  if (filler) {
    sub->add_option("--filler", o.filler, "Mask filler")
        ->check(CLI::IsMember({"lexicon", "remote"}));
  }
}

std::vector<FileDigest> digest_all(const std::vector<fs::path>& paths) {
  std::vector<FileDigest> out;
  std::set<std::string> seen;
  for (const auto& p : paths) {
    if (!seen.insert(p.string()).second) continue;
    out.push_back({p.string(), sha256_file(p)});
  }
  return out;
}

int replay(const std::string& manifest_path, std::ostream& out,
           std::ostream& err) {
  const Manifest m = read_manifest(manifest_path);
  if (m.tool_version != tool_version()) {
    throw ContractError("manifest was written by version " + m.tool_version +
                        ", this is " + std::string(tool_version()));
  }
  for (const auto& d : m.inputs) {
    if (sha256_file(d.path) != d.sha256) {
      throw ContractError("input changed since the manifest was written: " +
                          d.path);
    }
  }
  const int code = run(m.argv, out, err, m.environment);
  if (code != 0) return code;
  std::vector<std::string> differing;
  for (const auto& d : m.outputs) {
    if (sha256_file(d.path) != d.sha256) differing.push_back(d.path);
  }
  if (!differing.empty()) {
    std::string list;
    for (const auto& p : differing) list += " " + p;
    throw ContractError("replay produced different outputs:" + list);
  }
  out << "replay: " << m.outputs.size() << " output(s) reproduced\n";
  return 0;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err, const Environment& env) {
  CLI::App app{"Weak-supervision tooling for action preconditions",
               "precondforge"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version()));

  Overrides o;
  std::string config_path;
  std::string manifest_path;
  bool no_manifest = false;
  app.add_option("--config", config_path, "Pipeline config (JSON)");
  app.add_option("--seed", o.seed, "Global seed");
  app.add_option("--threads", o.threads, "Worker threads (0 = default)");
  app.add_option("--service-url", o.service_url, "Fill-mask service URL");
  app.add_option("--manifest", manifest_path,
                 "Manifest path (default <out>.manifest.json)");
  app.add_flag("--no-manifest", no_manifest, "Skip writing a manifest");

  ExtractArgs extract;
  auto* sx = app.add_subcommand("extract", "Label statements with patterns");
  add_corpus_options(sx, o);
  add_registry_options(sx, o);
  add_backend_options(sx, o, false);
  sx->add_option("--out", extract.out, "Extraction records")->required();
  sx->add_option("--report", extract.report, "Run report");
  sx->add_option("--matrix-out", extract.matrix_out, "Label matrix file");

  AugmentArgs augment;
  auto* sa = app.add_subcommand("augment", "Mask-and-fill augmentation");
  sa->add_option("--in", augment.in, "Extraction records")->required();
  sa->add_option("--out", augment.out, "Augmentation records")->required();
  add_backend_options(sa, o, true);
  sa->add_option("--per-mask", o.per_mask, "Candidates kept per mask");
  sa->add_option("--per-statement", o.per_statement,
                 "Records kept per statement");
  sa->add_option("--top-k", o.top_k, "Candidates requested per mask");
  sa->add_option("--placeholder", o.placeholder, "Mask placeholder");

  MaskprepArgs maskprep;
  auto* sm = app.add_subcommand("maskprep", "Conjunction-masked records");
  add_corpus_options(sm, o);
  sm->add_option("--out", maskprep.out, "Masked records")->required();
  sm->add_option("--placeholder", o.placeholder, "Mask placeholder");
  sm->add_option("--conjunctions", maskprep.conjunctions,
                 "Conjunction lists (JSON)");

  ConvertArgs convert;
  auto* sc = app.add_subcommand("convert", "Convert a dataset to NLI records");
  sc->add_option("--task", convert.task, "Source dataset")
      ->required()
      ->check(CLI::IsMember(convert_tasks()));
  sc->add_option("--in", convert.in, "Input records")->required();
  sc->add_option("--out", convert.out, "NLI records")->required();
  sc->add_option("--lexicalization", convert.lexicalization,
                 "Relation prefixes (JSON object)");
  sc->add_option("--name-seed", convert.name_seed, "Name seed for anion");

  SplitArgs split_args;
  auto* ss = app.add_subcommand("split", "Assign train/dev/test splits");
  ss->add_option("--in", split_args.in, "NLI records")->required();
  ss->add_option("--out", split_args.out, "Tagged NLI records")->required();
  ss->add_option("--ratios", o.ratios, "train,dev,test");
  ss->add_option("--seed", o.split_seed, "Shuffle seed");

  StatsArgs stats;
  auto* st = app.add_subcommand("stats", "Labeling-function statistics");
  st->add_option("--matrix", stats.matrix, "Label matrix file");
  add_corpus_options(st, o);
  add_registry_options(st, o);
  st->add_option("--out", stats.out, "Statistics report");
  st->add_option("--aggregate", stats.aggregate, "Aggregation strategy")
      ->check(CLI::IsMember({"precision-priority", "majority", "one-coin-em"}));
  st->add_option("--labels-out", stats.labels_out, "Aggregated labels");

  PabiArgs pabi;
  auto* sp = app.add_subcommand("pabi", "Informativeness of a signal");
  sp->add_option("--labels", pabi.label_count, "Label count |L|");
  sp->add_option("--eta", pabi.eta, "Cross-domain error rate");
  sp->add_option("--eta1", pabi.eta1, "Source-domain silver error rate");
  sp->add_option("--eta2", pabi.eta2, "Target-domain silver error rate");
  sp->add_option("--pred", pabi.pred, "Predicted labels");
  sp->add_option("--gold", pabi.gold, "Gold labels");
  sp->add_flag("--zero-rate", pabi.zero_rate,
               "Predict the majority gold label");
  sp->add_option("--out", pabi.out, "Report file");

  RegistryExportArgs reg_export;
  auto* sr = app.add_subcommand("registry-export", "Dump the pattern registry");
  sr->add_option("--registry", o.registry, "Registry file, or 'builtin'");
  sr->add_option("--out", reg_export.out, "Output file (default stdout)");

  std::string replay_manifest;
  auto* sy = app.add_subcommand("replay", "Re-run a manifest and compare");
  sy->add_option("manifest", replay_manifest, "Manifest file")->required();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  if (sy->parsed()) return replay(replay_manifest, out, err);

  PipelineConfig config;
  if (!config_path.empty()) config = load_config(config_path);
  apply_environment(config, env);
  o.apply(config);
  config.validate();
  set_threads(config.threads);

  RunContext ctx{config, out, err, {}, {}};
  if (!config_path.empty()) ctx.input(config_path);
  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  if (name == "extract") cmd_extract(ctx, extract);
  if (name == "augment") cmd_augment(ctx, augment);
  if (name == "maskprep") cmd_maskprep(ctx, maskprep);
  if (name == "convert") cmd_convert(ctx, convert);
  if (name == "split") cmd_split(ctx, split_args);
  if (name == "stats") cmd_stats(ctx, stats);
  if (name == "pabi") cmd_pabi(ctx, pabi);
  if (name == "registry-export") cmd_registry_export(ctx, reg_export);

  if (no_manifest || ctx.outputs.empty()) return 0;
  Manifest m;
  m.tool_version = std::string(tool_version());
  m.subcommand = name;
  m.argv = args;
  m.environment = env;
  m.config = config.to_json();
  m.config_hash = sha256_hex(m.config.dump());
  m.inputs = digest_all(ctx.inputs);
  m.outputs = digest_all(ctx.outputs);
  write_manifest(m, manifest_path.empty()
                        ? default_manifest_path(ctx.outputs.front())
                        : fs::path(manifest_path));
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err, const Environment& env) {
  try {
    return dispatch(args, out, err, env);
  } catch (const Error& e) {
    err << "precondforge: error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const fs::filesystem_error& e) {
    err << "precondforge: error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "precondforge: internal error: " << e.what() << "\n";
    return 1;
  }
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr, capture_environment());
}

}  // namespace precondforge::cli
