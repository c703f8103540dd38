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

#ifndef CLAIMKIT_TOOLS_RUN_SUPPORT_H_
#define CLAIMKIT_TOOLS_RUN_SUPPORT_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "claimkit/scorer.h"

namespace claimkit::cli {

// Where each scorer role comes from. Accepted forms:
//   perplexity  http(s)://...  | table:<jsonl> | ngram:<corpus.txt>
//   nli         http(s)://...  | table:<jsonl> | uniform
//   generator   http(s)://...  | echo          | replay:<jsonl>
// Unset roles fall back to CLAIMKIT_{PERPLEXITY,NLI,GENERATOR}_URL.
struct BackendOptions {
  std::string perplexity;
  std::string nli;
  std::string generator;
  int64_t timeout_ms = 30000;
  std::size_t max_in_flight = 4;
  std::size_t batch_size = 32;
};

void ApplyEnvironment(BackendOptions &options);

std::shared_ptr<PerplexityBackend> MakePerplexityBackend(const BackendOptions &options);
std::shared_ptr<NliBackend> MakeNliBackend(const BackendOptions &options);
std::shared_ptr<GeneratorBackend> MakeGeneratorBackend(const BackendOptions &options);

std::unique_ptr<ScorerGateway> MakeGateway(const BackendOptions &options);

nlohmann::json BackendOptionsJson(const BackendOptions &options);

// Seed given on the command line or drawn at random and reported.
struct RunSeed {
  uint64_t value = 0;
  bool from_flag = false;
};

RunSeed ResolveSeed(const std::optional<uint64_t> &flag);

// run.json written next to every output file. Contains no timestamps so a
// rerun with identical inputs yields an identical manifest.
class Manifest {
 public:
  Manifest(std::string command, std::vector<std::string> args);

  void AddInput(const std::string &role, const std::filesystem::path &path);
  void AddOutput(const std::filesystem::path &path, std::size_t records);
  void SetSeed(const RunSeed &seed);
  nlohmann::json &config() { return json_["config"]; }
  nlohmann::json &report() { return json_["report"]; }

  // Writes run.json into the directory of `output`.
  void WriteBeside(const std::filesystem::path &output) const;

  const nlohmann::json &json() const { return json_; }

 private:
  nlohmann::json json_;
};

std::string FileFingerprint(const std::filesystem::path &path);

}  // namespace claimkit::cli

#endif  // CLAIMKIT_TOOLS_RUN_SUPPORT_H_
