// Copyright 2026 The claimkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <sstream>

#include "claimkit/jsonl.h"
#include "cli.h"
#include "test_util.h"

namespace claimkit {
namespace {

using testing::Fixture;
using testing::ReadText;
using testing::TempDir;
using testing::WriteText;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::Run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<nlohmann::json> Lines(const std::filesystem::path &path) {
  std::vector<nlohmann::json> rows;
  ForEachJsonLine(path, [&](const Json &j, std::size_t) { rows.push_back(j); });
  return rows;
}

std::string F(const char *name) { return Fixture(name).string(); }

TEST(CliTest, NoArgsPrintsUsage) {
  const Result r = Invoke({});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
}

TEST(CliTest, HelpExitsZero) {
  const Result r = Invoke({"--help"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_NE(r.out.find("negate"), std::string::npos);
}

TEST(CliTest, UnknownFlagIsUsageError) {
  EXPECT_EQ(Invoke({"negate", "--bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(Invoke({"eval", "rouge", "--candidate", "a"}).code, cli::kExitUsage);
}

TEST(CliTest, NegateEmptyClaims) {
  TempDir dir;
  WriteText(dir / "claims.jsonl", "");
  const Result r = Invoke({"negate", "--kb", F("desk_kb.jsonl"), "--claims",
                        (dir / "claims.jsonl").string(), "--out",
                        (dir / "out" / "neg.jsonl").string(), "--seed", "1"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_TRUE(std::filesystem::exists(dir / "out" / "neg.jsonl"));
  EXPECT_EQ(ReadText(dir / "out" / "neg.jsonl"), "");
  const auto manifest = nlohmann::json::parse(ReadText(dir / "out" / "run.json"));
  EXPECT_EQ(manifest.at("command"), "negate");
  EXPECT_EQ(manifest.at("seed"), 1);
  EXPECT_EQ(manifest.at("outputs")[0].at("records"), 0);
}

TEST(CliTest, MalformedKbIsDataErrorWithLocation) {
  TempDir dir;
  WriteText(dir / "kb.jsonl",
            "{\"cui\":\"C1\",\"name\":\"alpha\",\"types\":[\"T1\"]}\n{broken\n");
  const Result r = Invoke({"kb", "validate", "--kb", (dir / "kb.jsonl").string()});
  EXPECT_EQ(r.code, cli::kExitData);
  EXPECT_NE(r.err.find("kb.jsonl:2"), std::string::npos) << r.err;
}

TEST(CliTest, MissingBackendIsUsageError) {
  TempDir dir;
  WriteText(dir / "claims.jsonl", "{\"text\":\"Aspirin treats asthma.\"}\n");
  const Result r = Invoke({"negate", "--kb", F("desk_kb.jsonl"), "--claims",
                        (dir / "claims.jsonl").string(), "--out", (dir / "n.jsonl").string()});
  EXPECT_EQ(r.code, cli::kExitUsage);
}

TEST(CliTest, EvalCarriesMetadata) {
  const Result r = Invoke({"eval", "rouge", "--candidate", "a b c", "--reference", "a c d"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j.at("r1").get<double>(), 2.0 / 3, 1e-9);
  EXPECT_EQ(j.at("r2").get<double>(), 0.0);
  EXPECT_EQ(j.at("metadata").at("rouge_variant"), "f1");

  TempDir dir;
  WriteText(dir / "m.json", "[[1,2,3,null],[1,2,3,4]]");
  const Result a = Invoke({"eval", "alpha", "--ratings", (dir / "m.json").string(), "--metric",
                        "nominal"});
  ASSERT_EQ(a.code, cli::kExitOk) << a.err;
  const auto alpha = nlohmann::json::parse(a.out);
  EXPECT_EQ(alpha.at("alpha"), 1.0);
  EXPECT_EQ(alpha.at("metadata").at("alpha_metric"), "nominal");
}

TEST(CliTest, LinkPrintsMentions) {
  const Result r = Invoke({"link", "--kb", F("desk_kb.jsonl"), "--text",
                        "Aspirin reduces the levels of IL-6 in patients with asthma."});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("Aspirin"), std::string::npos);
}

// generate -> negate -> build-dataset over the five-citance fixture with a
// recorded generator. Distinct claim texts per citance: cit1 1, cit2 2,
// cit3 2, cit4 0 (no mention), cit5 2. Present cited docs: cit1 2, cit2 1,
// cit3 2, cit5 1 (D9 is not in the corpus). SUPPORTS = 2 + 2 + 4 + 2 = 10.
// Every claim is negated and the negations keep the claim-per-citance
// distinctness, so REFUTES = 10. NEI takes the nine claims in id order,
// alternating claim and negation; cit5 slots 0 and 2 are the same
// Ibuprofen claim, leaving 9 - 1 = 8. Total 28.
TEST(CliTest, PipelineMatchesHandCount) {
  TempDir dir;
  const std::string claims = (dir / "gen" / "claims.jsonl").string();
  const std::string negs = (dir / "neg" / "negations.jsonl").string();
  const std::string data = (dir / "ds" / "dataset.jsonl").string();
  Result r = Invoke({"generate", "--method", "entity", "--citances", F("citances.jsonl"), "--kb",
                  F("desk_kb.jsonl"), "--generator",
                  "replay:" + F("generate_recording.jsonl"), "--seed", "0", "--out", claims});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(Lines(claims).size(), 9u);

  r = Invoke({"negate", "--kb", F("desk_kb.jsonl"), "--vectors", F("desk_vectors.csv"),
           "--claims", claims, "--perplexity", "ngram:" + F("ppl_corpus.txt"), "--nli",
           "uniform", "--seed", "0", "--out", negs});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto negations = Lines(negs);
  EXPECT_EQ(negations.size(), 9u);
  for (const auto &n : negations) EXPECT_NE(n.at("claim"), n.at("negation"));

  r = Invoke({"build-dataset", "--claims", claims, "--negations", negs, "--citances",
           F("citances.jsonl"), "--corpus", F("corpus.jsonl"), "--out", data});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto instances = Lines(data);
  EXPECT_EQ(instances.size(), 28u);
  std::map<std::string, int> labels;
  for (const auto &i : instances) ++labels[i.at("label").get<std::string>()];
  EXPECT_EQ(labels["SUPPORTS"], 10);
  EXPECT_EQ(labels["REFUTES"], 10);
  EXPECT_EQ(labels["NEI"], 8);

  const std::string before = ReadText(data);
  r = Invoke({"rerun", (dir / "ds" / "run.json").string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(ReadText(data), before);
}

TEST(CliTest, RerunRandomSeedIsReproducible) {
  TempDir dir;
  const std::string claims = (dir / "gen" / "claims.jsonl").string();
  ASSERT_EQ(Invoke({"generate", "--method", "entity", "--citances", F("citances.jsonl"), "--kb",
                 F("desk_kb.jsonl"), "--generator", "echo", "--out", claims})
                .code,
            cli::kExitOk);
  const std::string negs = (dir / "rnd" / "negations.jsonl").string();
  ASSERT_EQ(Invoke({"negate", "--kb", F("desk_kb.jsonl"), "--claims", claims, "--baseline",
                 "random-entity", "--out", negs})
                .code,
            cli::kExitOk);
  const auto manifest = nlohmann::json::parse(ReadText(dir / "rnd" / "run.json"));
  EXPECT_EQ(manifest.at("seed_source"), "random");
  const std::string before = ReadText(negs);
  ASSERT_EQ(Invoke({"rerun", (dir / "rnd" / "run.json").string()}).code, cli::kExitOk);
  EXPECT_EQ(ReadText(negs), before);
}

}  // namespace
}  // namespace claimkit
