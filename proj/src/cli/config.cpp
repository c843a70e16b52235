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

#include <cstdlib>
#include <fstream>

#include "precondforge/cli.hpp"
#include "precondforge/errors.hpp"

namespace precondforge::cli {

nlohmann::ordered_json PipelineConfig::to_json() const {
  nlohmann::ordered_json j;
  j["corpus"] = corpus;
  j["corpus_format"] = corpus_format;
  j["registry"] = registry;
  j["precision_threshold"] = precision_threshold
                                 ? nlohmann::ordered_json(*precision_threshold)
                                 : nlohmann::ordered_json(nullptr);
  j["all_patterns"] = all_patterns;
  j["lexicon"] = lexicon;
  j["tagger"] = tagger;
  j["filler"] = filler;
  j["service_url"] = service_url;
  j["service_timeout_ms"] = service_timeout_ms;
  j["caps"] = {{"per_mask", caps.per_mask},
               {"per_statement", caps.per_statement},
               {"top_k", caps.request_top_k}};
  j["placeholder"] = placeholder;
  j["split"] = {{"ratios", {split_ratios.train, split_ratios.dev,
                            split_ratios.test}},
                {"seed", split_seed ? nlohmann::ordered_json(*split_seed)
                                    : nlohmann::ordered_json(nullptr)}};
  j["seed"] = seed;
  j["threads"] = threads;
  return j;
}

void PipelineConfig::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError(what); };
  if (precision_threshold &&
      !(*precision_threshold >= 0.0 && *precision_threshold <= 1.0)) {
    fail("precision_threshold must lie in [0,1]");
  }
  if (corpus_format != "text" && corpus_format != "jsonl") {
    fail("corpus_format must be text or jsonl");
  }
  for (const auto* mode : {&tagger, &filler}) {
    if (*mode != "lexicon" && *mode != "remote") {
      fail("tagger/filler mode must be lexicon or remote, got '" + *mode +
           "'");
    }
  }
  if ((tagger == "remote" || filler == "remote") && service_url.empty()) {
    fail("remote mode needs a service URL (config service_url or " +
         std::string(kServiceUrlEnv) + ")");
  }
  if (caps.per_mask == 0 || caps.per_statement == 0 ||
      caps.request_top_k == 0 || caps.request_top_k > 50) {
    fail("caps must be positive and top_k at most 50");
  }
  if (placeholder.empty()) fail("placeholder must be non-empty");
  if (service_timeout_ms <= 0) fail("service_timeout_ms must be positive");
  if (threads < 0) fail("threads must be non-negative");
  split_sizes(0, split_ratios);  // throws on bad ratios
}

namespace {

template <typename T>
void take(const nlohmann::json& obj, const char* key, T& dst) {
  if (auto it = obj.find(key); it != obj.end() && !it->is_null()) {
    dst = it->get<T>();
  }
}

void reject_unknown(const nlohmann::json& obj,
                    std::initializer_list<std::string_view> known,
                    const std::string& where) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || item.key() == k;
    if (!ok) throw ConfigError("unknown config key '" + where + item.key() + "'");
  }
}

std::uint64_t parse_seed(std::string_view text, std::string_view what) {
  std::uint64_t v = 0;
  const std::string s(text);
  char* end = nullptr;
  errno = 0;
  v = std::strtoull(s.c_str(), &end, 10);
  if (s.empty() || s[0] == '-' || errno != 0 || *end != '\0') {
    throw ConfigError(std::string(what) + " is not an unsigned 64-bit seed: '" +
                      s + "'");
  }
  return v;
}

}  // namespace

PipelineConfig config_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  PipelineConfig c;
  try {
    reject_unknown(doc,
                   {"corpus", "corpus_format", "registry",
                    "precision_threshold", "all_patterns", "lexicon", "tagger",
                    "filler", "service_url", "service_timeout_ms", "caps",
                    "placeholder", "split", "seed", "threads"},
                   "");
    if (auto it = doc.find("corpus"); it != doc.end()) {
      if (it->is_string()) {
        c.corpus = {it->get<std::string>()};
      } else {
        c.corpus = it->get<std::vector<std::string>>();
      }
    }
    take(doc, "corpus_format", c.corpus_format);
    take(doc, "registry", c.registry);
    if (auto it = doc.find("precision_threshold");
        it != doc.end() && !it->is_null()) {
      c.precision_threshold = it->get<double>();
    }
    take(doc, "all_patterns", c.all_patterns);
    take(doc, "lexicon", c.lexicon);
    take(doc, "tagger", c.tagger);
    take(doc, "filler", c.filler);
    take(doc, "service_url", c.service_url);
    take(doc, "service_timeout_ms", c.service_timeout_ms);
    take(doc, "placeholder", c.placeholder);
    take(doc, "threads", c.threads);
    if (auto it = doc.find("seed"); it != doc.end()) {
      c.seed = it->is_string() ? parse_seed(it->get<std::string>(), "seed")
                               : it->get<std::uint64_t>();
    }
    if (auto it = doc.find("caps"); it != doc.end()) {
      reject_unknown(*it, {"per_mask", "per_statement", "top_k"}, "caps.");
      take(*it, "per_mask", c.caps.per_mask);
      take(*it, "per_statement", c.caps.per_statement);
      take(*it, "top_k", c.caps.request_top_k);
    }
    if (auto it = doc.find("split"); it != doc.end()) {
      reject_unknown(*it, {"ratios", "seed"}, "split.");
      if (auto r = it->find("ratios"); r != it->end()) {
        const auto v = r->get<std::vector<double>>();
        if (v.size() != 3) throw ConfigError("split.ratios needs 3 values");
        c.split_ratios = {v[0], v[1], v[2]};
      }
      if (auto s = it->find("seed"); s != it->end() && !s->is_null()) {
        c.split_seed = s->get<std::uint64_t>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed config " + path.string() + ": " + e.what());
  }
  return config_from_json(doc);
}

Environment capture_environment() {
  Environment env;
  for (auto name : {kServiceUrlEnv, kSeedEnv}) {
    if (const char* v = std::getenv(std::string(name).c_str())) {
      env[std::string(name)] = v;
    }
  }
  return env;
}

void apply_environment(PipelineConfig& config, const Environment& env) {
  if (auto it = env.find(std::string(kServiceUrlEnv)); it != env.end()) {
    config.service_url = it->second;
  }
  if (auto it = env.find(std::string(kSeedEnv)); it != env.end()) {
    config.seed = parse_seed(it->second, kSeedEnv);
  }
}

}  // namespace precondforge::cli
