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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "precondforge/augment.hpp"
#include "precondforge/nliconvert.hpp"

namespace precondforge::cli {

inline constexpr std::string_view kServiceUrlEnv = "PRECONDFORGE_SERVICE_URL";
inline constexpr std::string_view kSeedEnv = "PRECONDFORGE_SEED";

struct PipelineConfig {
  std::vector<std::string> corpus;
  std::string corpus_format = "text";
  std::string registry = "builtin";
  // Unset: use the registry's own enabled flags (builtin: threshold 0.7).
  std::optional<double> precision_threshold;
  bool all_patterns = false;
  std::string lexicon = "builtin";
  std::string tagger = "lexicon";  // lexicon | remote
  std::string filler = "lexicon";  // lexicon | remote
  std::string service_url;
  int service_timeout_ms = 5000;
  AugmentCaps caps;
  std::string placeholder = std::string(kDefaultPlaceholder);
  SplitRatios split_ratios;
  std::optional<std::uint64_t> split_seed;  // falls back to seed
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = OpenMP default

  std::uint64_t effective_split_seed() const {
    return split_seed.value_or(seed);
  }
  nlohmann::ordered_json to_json() const;
  // Throws ConfigError.
  void validate() const;
};

// Unknown keys are rejected. Throws ConfigError / IoError.
PipelineConfig config_from_json(const nlohmann::json& doc);
PipelineConfig load_config(const std::filesystem::path& path);

using Environment = std::map<std::string, std::string>;
Environment capture_environment();
void apply_environment(PipelineConfig& config, const Environment& env);

// ---------------------------------------------------------------------------
// Manifests

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

struct FileDigest {
  std::string path;
  std::string sha256;
};

struct Manifest {
  std::string tool_version;
  std::string subcommand;
  std::vector<std::string> argv;  // without the program name
  Environment environment;        // only the variables the tool reads
  nlohmann::ordered_json config;
  std::string config_hash;
  std::vector<FileDigest> inputs;
  std::vector<FileDigest> outputs;

  nlohmann::ordered_json to_json() const;
  static Manifest from_json(const nlohmann::json& j);
};

std::filesystem::path default_manifest_path(const std::filesystem::path& out);
void write_manifest(const Manifest& m, const std::filesystem::path& path);
Manifest read_manifest(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Entry point

std::string_view tool_version();

// Returns the process exit code: 0 ok, 2 config, 3 I/O or transport,
// 4 contract violation.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err, const Environment& env);
int main(int argc, char** argv);

}  // namespace precondforge::cli
