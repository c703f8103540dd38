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

#include "run_support.h"

#include <cstdlib>
#include <fstream>
#include <random>

#include "claimkit/error.h"
#include "claimkit/hash.h"
#include "claimkit/http_backend.h"
#include "claimkit/jsonl.h"
#include "claimkit/reference_scorers.h"

namespace claimkit::cli {

namespace {

bool IsUrl(const std::string &source) {
  return source.starts_with("http://") || source.starts_with("https://");
}

std::string After(const std::string &source, std::string_view prefix) {
  return source.substr(prefix.size());
}

[[noreturn]] void BadSource(const char *role, const std::string &source) {
  throw Error(ErrorCode::kInvalidArgument,
              std::string("unrecognized ") + role + " backend '" + source + "'");
}

std::string Env(const char *name) {
  const char *v = std::getenv(name);
  return v == nullptr ? std::string() : std::string(v);
}

}  // namespace

void ApplyEnvironment(BackendOptions &options) {
  if (options.perplexity.empty()) options.perplexity = Env("CLAIMKIT_PERPLEXITY_URL");
  if (options.nli.empty()) options.nli = Env("CLAIMKIT_NLI_URL");
  if (options.generator.empty()) options.generator = Env("CLAIMKIT_GENERATOR_URL");
}

std::shared_ptr<PerplexityBackend> MakePerplexityBackend(const BackendOptions &o) {
  const std::string &source = o.perplexity;
  if (source.empty()) return nullptr;
  if (IsUrl(source)) {
    return std::make_shared<HttpScorerClient>(source, std::chrono::milliseconds(o.timeout_ms));
  }
  if (source.starts_with("table:")) return TablePerplexity::Load(After(source, "table:"));
  if (source.starts_with("ngram:")) return NgramPerplexity::FromFile(After(source, "ngram:"));
  BadSource("perplexity", source);
}

std::shared_ptr<NliBackend> MakeNliBackend(const BackendOptions &o) {
  const std::string &source = o.nli;
  if (source.empty()) return nullptr;
  if (IsUrl(source)) {
    return std::make_shared<HttpScorerClient>(source, std::chrono::milliseconds(o.timeout_ms));
  }
  if (source.starts_with("table:")) return TableNli::Load(After(source, "table:"));
  if (source == "uniform") return std::make_shared<TableNli>();
  BadSource("nli", source);
}

std::shared_ptr<GeneratorBackend> MakeGeneratorBackend(const BackendOptions &o) {
  const std::string &source = o.generator;
  if (source.empty()) return nullptr;
  if (IsUrl(source)) {
    return std::make_shared<HttpScorerClient>(source, std::chrono::milliseconds(o.timeout_ms));
  }
  if (source == "echo") return std::make_shared<EchoGenerator>();
  if (source.starts_with("replay:")) return ReplayGenerator::Load(After(source, "replay:"));
  BadSource("generator", source);
}

std::unique_ptr<ScorerGateway> MakeGateway(const BackendOptions &o) {
  GatewayConfig config;
  config.batch_size = o.batch_size;
  config.max_in_flight = o.max_in_flight;
  config.timeout = std::chrono::milliseconds(o.timeout_ms);
  return std::make_unique<ScorerGateway>(config, MakePerplexityBackend(o), MakeNliBackend(o),
                                         MakeGeneratorBackend(o));
}

nlohmann::json BackendOptionsJson(const BackendOptions &o) {
  return {{"perplexity", o.perplexity},     {"nli", o.nli},
          {"generator", o.generator},       {"timeout_ms", o.timeout_ms},
          {"max_in_flight", o.max_in_flight}, {"batch_size", o.batch_size}};
}

RunSeed ResolveSeed(const std::optional<uint64_t> &flag) {
  if (flag) return {*flag, true};
  std::random_device rd;
  const uint64_t seed = (static_cast<uint64_t>(rd()) << 32) ^ rd();
  return {seed, false};
}

std::string FileFingerprint(const std::filesystem::path &path) {
  return HexDigest(StableHash(ReadFile(path)));
}

Manifest::Manifest(std::string command, std::vector<std::string> args) {
  json_ = {{"tool", "claimkit"},
           {"version", CLAIMKIT_VERSION},
           {"command", std::move(command)},
           {"args", std::move(args)},
           {"inputs", nlohmann::json::array()},
           {"outputs", nlohmann::json::array()},
           {"config", nlohmann::json::object()},
           {"report", nlohmann::json::object()}};
}

void Manifest::AddInput(const std::string &role, const std::filesystem::path &path) {
  json_["inputs"].push_back({{"role", role},
                             {"path", path.string()},
                             {"bytes", std::filesystem::file_size(path)},
                             {"fnv1a64", FileFingerprint(path)}});
}

void Manifest::AddOutput(const std::filesystem::path &path, std::size_t records) {
  json_["outputs"].push_back({{"path", path.string()},
                              {"records", records},
                              {"fnv1a64", FileFingerprint(path)}});
}

void Manifest::SetSeed(const RunSeed &seed) {
  json_["seed"] = seed.value;
  json_["seed_source"] = seed.from_flag ? "flag" : "random";
}

void Manifest::WriteBeside(const std::filesystem::path &output) const {
  std::filesystem::path dir = output.parent_path();
  if (dir.empty()) dir = ".";
  std::ofstream out(dir / "run.json", std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write manifest", (dir / "run.json").string());
  out << json_.dump(2) << '\n';
}

}  // namespace claimkit::cli
