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

#ifndef CLAIMKIT_SCORER_H_
#define CLAIMKIT_SCORER_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <semaphore>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace claimkit {

struct NliProbs {
  double entailment = 1.0 / 3.0;
  double neutral = 1.0 / 3.0;
  double contradiction = 1.0 / 3.0;

  friend bool operator==(const NliProbs &, const NliProbs &) = default;
};

void to_json(nlohmann::json &j, const NliProbs &p);
void from_json(const nlohmann::json &j, NliProbs &p);

struct NliPair {
  std::string premise;
  std::string hypothesis;
};

enum class DecodeStrategy { kBeam, kSampleTopK };

std::string_view DecodeStrategyName(DecodeStrategy s);
DecodeStrategy ParseDecodeStrategy(std::string_view name);

struct GenerationRequest {
  std::string input;
  int num_outputs = 1;
  DecodeStrategy strategy = DecodeStrategy::kBeam;
  uint64_t seed = 0;
};

// Backends are the raw model endpoints. They may be remote (HttpScorerClient)
// or in-process reference implementations. All validation of what they
// return happens in ScorerGateway.
class PerplexityBackend {
 public:
  virtual ~PerplexityBackend() = default;
  virtual std::vector<double> Perplexity(const std::vector<std::string> &texts) = 0;
};

class NliBackend {
 public:
  virtual ~NliBackend() = default;
  virtual std::vector<NliProbs> Nli(const std::vector<NliPair> &pairs) = 0;
};

class GeneratorBackend {
 public:
  virtual ~GeneratorBackend() = default;
  // One output list per input.
  virtual std::vector<std::vector<std::string>> Generate(
      const std::vector<std::string> &inputs, int num_outputs,
      DecodeStrategy strategy, uint64_t seed) = 0;
};

class ChunkBackend {
 public:
  virtual ~ChunkBackend() = default;
  virtual std::size_t CountNounChunks(std::string_view text) = 0;
};

struct GatewayConfig {
  std::size_t batch_size = 32;
  std::size_t max_in_flight = 4;
  std::chrono::milliseconds timeout{30000};
};

// Validating front for the three model roles. Shareable across threads: it
// holds no mutable state apart from the in-flight limiter.
class ScorerGateway {
 public:
  ScorerGateway(GatewayConfig config, std::shared_ptr<PerplexityBackend> perplexity,
                std::shared_ptr<NliBackend> nli,
                std::shared_ptr<GeneratorBackend> generator,
                std::shared_ptr<ChunkBackend> chunker = nullptr);

  // One strictly positive finite value per text, in order. Empty texts are
  // rejected before any backend call.
  std::vector<double> Perplexity(const std::vector<std::string> &texts);

  NliProbs Nli(const std::string &premise, const std::string &hypothesis);
  std::vector<NliProbs> Nli(const std::vector<NliPair> &pairs);

  // Between 1 and req.num_outputs non-empty strings.
  std::vector<std::string> Generate(const GenerationRequest &req);

  // nullopt when no chunker backend is configured.
  std::optional<std::size_t> CountNounChunks(std::string_view text);

  bool has_chunker() const { return chunker_ != nullptr; }
  const GatewayConfig &config() const { return config_; }

  // Checks ranges and renormalizes sums within 1e-3 of one; anything further
  // off is a BackendMalformedResponse.
  static NliProbs Normalize(const NliProbs &raw);

 private:
  class Slot;

  GatewayConfig config_;
  std::shared_ptr<PerplexityBackend> perplexity_;
  std::shared_ptr<NliBackend> nli_;
  std::shared_ptr<GeneratorBackend> generator_;
  std::shared_ptr<ChunkBackend> chunker_;
  std::unique_ptr<std::counting_semaphore<>> in_flight_;
};

}  // namespace claimkit

#endif  // CLAIMKIT_SCORER_H_
