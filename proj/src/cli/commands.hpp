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

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "precondforge/cli.hpp"

namespace precondforge::cli {

// State shared by one subcommand invocation. Commands register every file
// they read or write so the manifest can digest them.
struct RunContext {
  PipelineConfig config;
  std::ostream& out;
  std::ostream& err;
  std::vector<std::filesystem::path> inputs;
  std::vector<std::filesystem::path> outputs;

  void input(const std::filesystem::path& p) { inputs.push_back(p); }
  void output(const std::filesystem::path& p) { outputs.push_back(p); }
};

struct ExtractArgs {
  std::string out;
  std::string report;  // default <out>.report.json
  std::string matrix_out;
};

struct AugmentArgs {
  std::string in;
  std::string out;
};

struct MaskprepArgs {
  std::string out;
  std::string conjunctions;  // JSON {"allow": [...], "prevent": [...]}
};

struct ConvertArgs {
  std::string task;
  std::string in;
  std::string out;
  std::string lexicalization;
  std::optional<std::uint64_t> name_seed;
};

struct SplitArgs {
  std::string in;
  std::string out;
};

struct StatsArgs {
  std::string matrix;
  std::string out;
  std::string aggregate;
  std::string labels_out;
};

struct PabiArgs {
  std::optional<int> label_count;
  std::optional<double> eta;
  std::optional<double> eta1;
  std::optional<double> eta2;
  std::string pred;
  std::string gold;
  bool zero_rate = false;
  std::string out;
};

struct RegistryExportArgs {
  std::string out;
};

void cmd_extract(RunContext& ctx, const ExtractArgs& args);
void cmd_augment(RunContext& ctx, const AugmentArgs& args);
void cmd_maskprep(RunContext& ctx, const MaskprepArgs& args);
void cmd_convert(RunContext& ctx, const ConvertArgs& args);
void cmd_split(RunContext& ctx, const SplitArgs& args);
void cmd_stats(RunContext& ctx, const StatsArgs& args);
void cmd_pabi(RunContext& ctx, const PabiArgs& args);
void cmd_registry_export(RunContext& ctx, const RegistryExportArgs& args);

inline const std::vector<std::string>& convert_tasks() {
  static const std::vector<std::string> tasks = {
      "weak", "weak-augmented", "delta-nli", "atomic",
      "winoventi", "anion", "paco"};
  return tasks;
}

}  // namespace precondforge::cli
