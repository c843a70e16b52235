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

#include "precondforge/cli.hpp"

#include <sstream>

#include <gtest/gtest.h>

#include "precondforge/records.hpp"
#include "test_util.hpp"

namespace precondforge::cli {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;
using testing::read_file;
using testing::write_file;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args, const Environment& env = {}) {
  std::ostringstream out, err;
  Result r;
  r.code = run(args, out, err, env);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string golden_corpus() {
  std::string text;
  for (const auto& row : testing::golden_rows()) {
    text += row.text;
    text += row.text[std::string(row.text).size() - 1] == '.' ? " " : ". ";
  }
  return text;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    corpus_ = dir_.file("corpus.txt");
    write_file(corpus_, golden_corpus() + "\nWhy do pears rot if not cold?\n");
  }
  std::string file(const std::string& name) const { return dir_.file(name); }

  TempDir dir_;
  std::string corpus_;
};

TEST_F(CliTest, ExtractAtDefaultThreshold) {
  const auto r = invoke({"extract", "--corpus", corpus_, "--out", file("x.jsonl")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = read_jsonl(file("x.jsonl"));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0]["lf_id"], "if not");
  EXPECT_EQ(rows[0]["precondition"], "refrigerated.");
  EXPECT_EQ(rows[1]["lf_id"], "unless");
  EXPECT_TRUE(fs::exists(file("x.jsonl.manifest.json")));
  EXPECT_TRUE(fs::exists(file("x.jsonl.report.json")));
}

TEST_F(CliTest, ExtractAllPatternsKeepsGoldenRows) {
  const auto r = invoke({"extract", "--all-patterns", "--corpus", corpus_,
                         "--out", file("x.jsonl"), "--matrix-out", file("m.jsonl")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = read_jsonl(file("x.jsonl"));
  ASSERT_EQ(rows.size(), 4u);
  const auto& g = testing::golden_rows();
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(rows[i]["action"], g[i].action);
    EXPECT_EQ(rows[i]["label"], g[i].label);
    EXPECT_EQ(rows[i]["lf_id"], g[i].lf);
  }
  // The question is in the matrix but produces no record.
  EXPECT_EQ(read_label_matrix(file("m.jsonl")).rows(), 5u);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(invoke({"extract", "--corpus", file("none.txt"), "--out", file("x")}).code, 2);
  EXPECT_EQ(invoke({"extract", "--bogus"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
  write_file(file("cfg.json"), R"({"no_such_key": 1})");
  EXPECT_EQ(invoke({"--config", file("cfg.json"), "pabi", "--eta", "0.1"}).code, 2);
  EXPECT_EQ(invoke({"pabi", "--eta1", "0.19", "--eta2", "0.10"}).code, 4);
  EXPECT_EQ(invoke({"pabi", "--eta1", "0.5", "--eta2", "0.10"}).code, 4);
  EXPECT_EQ(invoke({"pabi"}).code, 2);
  write_file(file("bad.jsonl"), "{not json\n");
  EXPECT_EQ(invoke({"convert", "--task", "paco", "--in", file("bad.jsonl"),
                    "--out", file("o.jsonl")})
                .code,
            4);
  EXPECT_FALSE(fs::exists(file("o.jsonl")));
  EXPECT_FALSE(fs::exists(file("o.jsonl.partial")));
}

TEST_F(CliTest, PabiPrintsScaledValues) {
  auto r = invoke({"pabi", "--labels", "2", "--eta", "0.288"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("pabi=36.6"), std::string::npos) << r.out;
  r = invoke({"pabi", "--eta1", "0.04", "--eta2", "0.11", "--out", file("p.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("eta=7.6"), std::string::npos) << r.out;
  const auto j = nlohmann::json::parse(read_file(file("p.json")));
  EXPECT_NEAR(j["eta"].get<double>(), 0.0761, 1e-3);
}

TEST_F(CliTest, PabiFromLabelFiles) {
  write_file(file("g.jsonl"),
             "{\"record_id\":\"a\",\"label\":\"ENTAILMENT\"}\n"
             "{\"record_id\":\"b\",\"label\":\"ENTAILMENT\"}\n"
             "{\"record_id\":\"c\",\"label\":\"ENTAILMENT\"}\n"
             "{\"record_id\":\"d\",\"label\":\"CONTRADICTION\"}\n");
  const auto r = invoke({"pabi", "--gold", file("g.jsonl"), "--zero-rate"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("eta=25.0"), std::string::npos) << r.out;
}

TEST_F(CliTest, SplitHundred) {
  std::string rows;
  for (int i = 0; i < 100; ++i) {
    rows += "{\"record_id\":\"r" + std::to_string(i) +
            "\",\"hypothesis\":\"h\",\"premise\":\"p\",\"label\":\"ENTAILMENT\","
            "\"source_task\":\"t\",\"split\":null}\n";
  }
  write_file(file("n.jsonl"), rows);
  const auto r = invoke({"split", "--in", file("n.jsonl"), "--out", file("s.jsonl"),
                         "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("TRAIN=45 DEV=15 TEST=40"), std::string::npos) << r.out;
  const auto again = invoke({"split", "--in", file("n.jsonl"), "--out",
                             file("s2.jsonl"), "--seed", "3"});
  ASSERT_EQ(again.code, 0);
  EXPECT_EQ(read_file(file("s.jsonl")), read_file(file("s2.jsonl")));
}

TEST_F(CliTest, StatsOnSingleLfMatrix) {
  write_file(file("m.jsonl"),
             "{\"columns\":[\"unless\"]}\n"
             "{\"row\":\"a\",\"labels\":[2]}\n"
             "{\"row\":\"b\",\"labels\":[0]}\n");
  const auto r = invoke({"stats", "--matrix", file("m.jsonl"), "--out", file("s.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(read_file(file("s.json")));
  EXPECT_EQ(j["unless"]["coverage"], "50.00");
  EXPECT_EQ(j["unless"]["overlaps"], "0.00");
  EXPECT_EQ(j["unless"]["conflicts"], "0.00");
}

TEST_F(CliTest, OutputsAreByteIdenticalAcrossRunsAndThreads) {
  std::string big;
  for (int i = 0; i < 50; ++i) big += golden_corpus() + "\n";
  write_file(file("big.txt"), big);
  for (const char* threads : {"1", "4"}) {
    const auto r = invoke({"--threads", threads, "extract", "--all-patterns",
                           "--corpus", file("big.txt"), "--out",
                           file(std::string("x") + threads)});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto a = invoke({"--threads", threads, "augment", "--in",
                           file(std::string("x") + threads), "--out",
                           file(std::string("a") + threads)});
    ASSERT_EQ(a.code, 0) << a.err;
  }
  EXPECT_EQ(read_file(file("x1")), read_file(file("x4")));
  EXPECT_EQ(read_file(file("a1")), read_file(file("a4")));
  EXPECT_FALSE(read_file(file("a1")).empty());
}

TEST_F(CliTest, ManifestReplay) {
  ASSERT_EQ(invoke({"extract", "--corpus", corpus_, "--out", file("x.jsonl")}).code, 0);
  const auto manifest = file("x.jsonl.manifest.json");
  const auto m = read_manifest(manifest);
  EXPECT_EQ(m.subcommand, "extract");
  ASSERT_FALSE(m.inputs.empty());
  EXPECT_EQ(m.inputs[0].sha256, sha256_file(corpus_));
  const auto doc = nlohmann::json::parse(read_file(manifest));
  for (const char* key : {"timestamp", "created", "date", "time"}) {
    EXPECT_FALSE(doc.contains(key)) << key;
  }

  auto r = invoke({"replay", manifest});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("reproduced"), std::string::npos);

  // A changed input is refused.
  write_file(corpus_, "Something else entirely unless not.");
  r = invoke({"replay", manifest});
  EXPECT_EQ(r.code, 4);
}

TEST_F(CliTest, EnvironmentAndFlagPrecedence) {
  write_file(file("cfg.json"), R"({"seed": 5})");
  const std::vector<std::string> base = {"--config", file("cfg.json")};
  auto run_with = [&](std::vector<std::string> extra, const Environment& env) {
    std::vector<std::string> args = base;
    args.insert(args.end(), extra.begin(), extra.end());
    args.insert(args.end(), {"extract", "--corpus", corpus_, "--out", file("x")});
    EXPECT_EQ(invoke(args, env).code, 0);
    return read_manifest(file("x.manifest.json")).config["seed"].get<std::uint64_t>();
  };
  EXPECT_EQ(run_with({}, {}), 5u);
  EXPECT_EQ(run_with({}, {{std::string(kSeedEnv), "9"}}), 9u);
  EXPECT_EQ(run_with({"--seed", "13"}, {{std::string(kSeedEnv), "9"}}), 13u);
  EXPECT_EQ(invoke({"extract", "--corpus", corpus_, "--out", file("y")},
                   {{std::string(kSeedEnv), "many"}})
                .code,
            2);
}

TEST_F(CliTest, RemoteFillerWithoutServiceFailsCleanly) {
  ASSERT_EQ(invoke({"extract", "--corpus", corpus_, "--out", file("x.jsonl")}).code, 0);
  const auto r = invoke({"--service-url", "http://127.0.0.1:1", "augment", "--filler",
                         "remote", "--in", file("x.jsonl"), "--out", file("a.jsonl")});
  EXPECT_EQ(r.code, 3) << r.err;
  EXPECT_FALSE(fs::exists(file("a.jsonl")));
  EXPECT_FALSE(fs::exists(file("a.jsonl.partial")));
}

TEST_F(CliTest, RegistryExportRoundTrips) {
  const auto r = invoke({"registry-export", "--out", file("r.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto reg = PatternRegistry::from_json(
      nlohmann::json::parse(read_file(file("r.json"))));
  EXPECT_EQ(reg.size(), 23u);
  const auto x = invoke({"extract", "--registry", file("r.json"), "--corpus", corpus_,
                         "--out", file("x.jsonl")});
  ASSERT_EQ(x.code, 0) << x.err;
  EXPECT_EQ(read_jsonl(file("x.jsonl")).size(), 2u);
}

}  // namespace
}  // namespace precondforge::cli
