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

#include <array>
#include <cstdio>
#include <fstream>

#include <openssl/evp.h>

#include "precondforge/cli.hpp"
#include "precondforge/errors.hpp"
#include "precondforge/records.hpp"

namespace precondforge::cli {

namespace {

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new()) {
    if (ctx_ == nullptr || EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr) != 1) {
      throw IoError("SHA-256 unavailable");
    }
  }
  ~Sha256() { EVP_MD_CTX_free(ctx_); }
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  void update(const void* data, std::size_t n) {
    EVP_DigestUpdate(ctx_, data, n);
  }
  std::string hex() {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx_, md.data(), &len);
    std::string out;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
      std::snprintf(buf, sizeof buf, "%02x", md[i]);
      out += buf;
    }
    return out;
  }

 private:
  EVP_MD_CTX* ctx_;
};

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  Sha256 h;
  h.update(bytes.data(), bytes.size());
  return h.hex();
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string() + " for hashing");
  Sha256 h;
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    h.update(buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  return h.hex();
}

nlohmann::ordered_json Manifest::to_json() const {
  auto digests = [](const std::vector<FileDigest>& v) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& d : v) arr.push_back({{"path", d.path}, {"sha256", d.sha256}});
    return arr;
  };
  nlohmann::ordered_json j;
  j["tool"] = "precondforge";
  j["tool_version"] = tool_version;
  j["subcommand"] = subcommand;
  j["argv"] = argv;
  j["environment"] = environment;
  j["config"] = config;
  j["config_hash"] = config_hash;
  j["inputs"] = digests(inputs);
  j["outputs"] = digests(outputs);
  return j;
}

Manifest Manifest::from_json(const nlohmann::json& j) {
  auto digests = [](const nlohmann::json& arr) {
    std::vector<FileDigest> v;
    for (const auto& d : arr) {
      v.push_back({d.at("path").get<std::string>(),
                   d.at("sha256").get<std::string>()});
    }
    return v;
  };
  try {
    Manifest m;
    m.tool_version = j.at("tool_version").get<std::string>();
    m.subcommand = j.at("subcommand").get<std::string>();
    m.argv = j.at("argv").get<std::vector<std::string>>();
    m.environment = j.value("environment", Environment{});
    m.config = j.at("config");
    m.config_hash = j.at("config_hash").get<std::string>();
    m.inputs = digests(j.at("inputs"));
    m.outputs = digests(j.at("outputs"));
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed manifest: ") + e.what());
  }
}

std::filesystem::path default_manifest_path(const std::filesystem::path& out) {
  return out.string() + ".manifest.json";
}

void write_manifest(const Manifest& m, const std::filesystem::path& path) {
  write_text_file(path, m.to_json().dump(2) + "\n");
}

Manifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed manifest " + path.string() + ": " + e.what());
  }
  return Manifest::from_json(j);
}

}  // namespace precondforge::cli
