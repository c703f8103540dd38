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

#include "claimkit/scorer.h"

#include <algorithm>
#include <cmath>

#include "claimkit/error.h"

namespace claimkit {

void to_json(nlohmann::json &j, const NliProbs &p) {
  j = nlohmann::json{{"entailment", p.entailment},
                     {"neutral", p.neutral},
                     {"contradiction", p.contradiction}};
}

void from_json(const nlohmann::json &j, NliProbs &p) {
  p.entailment = j.at("entailment").get<double>();
  p.neutral = j.at("neutral").get<double>();
  p.contradiction = j.at("contradiction").get<double>();
}

std::string_view DecodeStrategyName(DecodeStrategy s) {
  return s == DecodeStrategy::kBeam ? "beam" : "sample_top_k";
}

DecodeStrategy ParseDecodeStrategy(std::string_view name) {
  if (name == "beam") return DecodeStrategy::kBeam;
  if (name == "sample_top_k") return DecodeStrategy::kSampleTopK;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown strategy '" + std::string(name) + "'");
}

// RAII hold on one in-flight backend request.
class ScorerGateway::Slot {
 public:
  explicit Slot(ScorerGateway &gateway) : sem_(*gateway.in_flight_) {
    if (!sem_.try_acquire_for(gateway.config_.timeout)) {
      throw Error(ErrorCode::kBackendUnavailable,
                  "timed out waiting for an in-flight slot");
    }
  }
  ~Slot() { sem_.release(); }
  Slot(const Slot &) = delete;
  Slot &operator=(const Slot &) = delete;

 private:
  std::counting_semaphore<> &sem_;
};

ScorerGateway::ScorerGateway(GatewayConfig config,
                             std::shared_ptr<PerplexityBackend> perplexity,
                             std::shared_ptr<NliBackend> nli,
                             std::shared_ptr<GeneratorBackend> generator,
                             std::shared_ptr<ChunkBackend> chunker)
    : config_(config),
      perplexity_(std::move(perplexity)),
      nli_(std::move(nli)),
      generator_(std::move(generator)),
      chunker_(std::move(chunker)) {
  if (config_.batch_size == 0 || config_.max_in_flight == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "batch_size and max_in_flight must be positive");
  }
  in_flight_ = std::make_unique<std::counting_semaphore<>>(
      static_cast<std::ptrdiff_t>(config_.max_in_flight));
}

std::vector<double> ScorerGateway::Perplexity(const std::vector<std::string> &texts) {
  for (const std::string &t : texts) {
    if (t.empty()) throw Error(ErrorCode::kInvalidArgument, "empty text for perplexity");
  }
  if (perplexity_ == nullptr) {
    throw Error(ErrorCode::kBackendUnavailable, "no perplexity backend configured");
  }
  std::vector<double> out;
  out.reserve(texts.size());
  for (std::size_t begin = 0; begin < texts.size(); begin += config_.batch_size) {
    const std::size_t end = std::min(texts.size(), begin + config_.batch_size);
    std::vector<std::string> batch(texts.begin() + begin, texts.begin() + end);
    std::vector<double> scores;
    {
      Slot slot(*this);
      scores = perplexity_->Perplexity(batch);
    }
    if (scores.size() != batch.size()) {
      throw Error(ErrorCode::kBackendMalformedResponse,
                  "expected " + std::to_string(batch.size()) + " perplexities, got " +
                      std::to_string(scores.size()));
    }
    for (double s : scores) {
      if (!std::isfinite(s) || s <= 0.0) {
        throw Error(ErrorCode::kBackendMalformedResponse,
                    "perplexity must be positive and finite");
      }
      out.push_back(s);
    }
  }
  return out;
}

NliProbs ScorerGateway::Normalize(const NliProbs &raw) {
  for (double p : {raw.entailment, raw.neutral, raw.contradiction}) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
      throw Error(ErrorCode::kBackendMalformedResponse,
                  "NLI probability outside [0, 1]");
    }
  }
  const double sum = raw.entailment + raw.neutral + raw.contradiction;
  if (std::abs(sum - 1.0) > 1e-3) {
    throw Error(ErrorCode::kBackendMalformedResponse,
                "NLI probabilities sum to " + std::to_string(sum));
  }
  return {raw.entailment / sum, raw.neutral / sum, raw.contradiction / sum};
}

NliProbs ScorerGateway::Nli(const std::string &premise, const std::string &hypothesis) {
  return Nli(std::vector<NliPair>{{premise, hypothesis}}).front();
}

std::vector<NliProbs> ScorerGateway::Nli(const std::vector<NliPair> &pairs) {
  for (const NliPair &p : pairs) {
    if (p.premise.empty() || p.hypothesis.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "empty premise or hypothesis");
    }
  }
  if (nli_ == nullptr) {
    throw Error(ErrorCode::kBackendUnavailable, "no NLI backend configured");
  }
  std::vector<NliProbs> out;
  out.reserve(pairs.size());
  for (std::size_t begin = 0; begin < pairs.size(); begin += config_.batch_size) {
    const std::size_t end = std::min(pairs.size(), begin + config_.batch_size);
    std::vector<NliPair> batch(pairs.begin() + begin, pairs.begin() + end);
    std::vector<NliProbs> probs;
    {
      Slot slot(*this);
      probs = nli_->Nli(batch);
    }
    if (probs.size() != batch.size()) {
      throw Error(ErrorCode::kBackendMalformedResponse,
                  "expected " + std::to_string(batch.size()) + " NLI results, got " +
                      std::to_string(probs.size()));
    }
    for (const NliProbs &p : probs) out.push_back(Normalize(p));
  }
  return out;
}

std::vector<std::string> ScorerGateway::Generate(const GenerationRequest &req) {
  if (req.num_outputs < 1) {
    throw Error(ErrorCode::kInvalidArgument, "num_outputs must be >= 1");
  }
  if (req.input.empty()) throw Error(ErrorCode::kInvalidArgument, "empty generation input");
  if (generator_ == nullptr) {
    throw Error(ErrorCode::kBackendUnavailable, "no generator backend configured");
  }
  std::vector<std::vector<std::string>> raw;
  {
    Slot slot(*this);
    raw = generator_->Generate({req.input}, req.num_outputs, req.strategy, req.seed);
  }
  if (raw.size() != 1) {
    throw Error(ErrorCode::kBackendMalformedResponse, "expected one output list");
  }
  if (raw.front().size() > static_cast<std::size_t>(req.num_outputs)) {
    throw Error(ErrorCode::kBackendMalformedResponse,
                "backend returned more outputs than requested");
  }
  std::vector<std::string> out;
  for (std::string &s : raw.front()) {
    if (!s.empty()) out.push_back(std::move(s));
  }
  if (out.empty()) throw Error(ErrorCode::kEmptyGeneration, req.input);
  return out;
}

std::optional<std::size_t> ScorerGateway::CountNounChunks(std::string_view text) {
  if (chunker_ == nullptr) return std::nullopt;
  Slot slot(*this);
  return chunker_->CountNounChunks(text);
}

}  // namespace claimkit
