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

#ifndef CLAIMKIT_REFERENCE_SCORERS_H_
#define CLAIMKIT_REFERENCE_SCORERS_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "claimkit/scorer.h"

namespace claimkit {

// Character trigram language model with add-one smoothing. Perplexity is
// exp of the mean negative log-probability per code point, end-of-text
// included.
class NgramPerplexity : public PerplexityBackend {
 public:
  explicit NgramPerplexity(const std::vector<std::string> &corpus);

  // One training sentence per line.
  static std::shared_ptr<NgramPerplexity> FromFile(const std::filesystem::path &path);

  double Score(std::string_view text) const;
  std::vector<double> Perplexity(const std::vector<std::string> &texts) override;

  std::size_t vocabulary_size() const { return vocabulary_; }

 private:
  std::unordered_map<uint64_t, uint32_t> trigrams_;
  std::unordered_map<uint64_t, uint32_t> contexts_;
  std::size_t vocabulary_ = 0;
};

// Exact-text lookup table. Texts missing from the table go to `fallback`
// when one is set, otherwise the call fails with BackendMalformedResponse.
class TablePerplexity : public PerplexityBackend {
 public:
  explicit TablePerplexity(std::map<std::string, double> table,
                           std::shared_ptr<PerplexityBackend> fallback = nullptr)
      : table_(std::move(table)), fallback_(std::move(fallback)) {}

  // JSON lines of {"text": str, "perplexity": number}.
  static std::shared_ptr<TablePerplexity> Load(const std::filesystem::path &path);

  std::vector<double> Perplexity(const std::vector<std::string> &texts) override;

 private:
  std::map<std::string, double> table_;
  std::shared_ptr<PerplexityBackend> fallback_;
};

// (premise, hypothesis) lookup with a uniform default.
class TableNli : public NliBackend {
 public:
  using Key = std::pair<std::string, std::string>;

  explicit TableNli(std::map<Key, NliProbs> table = {}) : table_(std::move(table)) {}

  // JSON lines of {"premise", "hypothesis", "entailment", "neutral",
  // "contradiction"}.
  static std::shared_ptr<TableNli> Load(const std::filesystem::path &path);

  std::vector<NliProbs> Nli(const std::vector<NliPair> &pairs) override;

 private:
  std::map<Key, NliProbs> table_;
};

// Returns "CLAIM: <input> #i" for i = 1..num_outputs.
class EchoGenerator : public GeneratorBackend {
 public:
  static std::string Output(std::string_view input, int index);

  std::vector<std::vector<std::string>> Generate(const std::vector<std::string> &inputs,
                                                 int num_outputs, DecodeStrategy strategy,
                                                 uint64_t seed) override;
};

// Serves recorded responses keyed by the full request. Unrecorded requests
// fail with BackendUnavailable.
class ReplayGenerator : public GeneratorBackend {
 public:
  struct Recording {
    std::string input;
    int num_outputs = 1;
    DecodeStrategy strategy = DecodeStrategy::kBeam;
    uint64_t seed = 0;
    std::vector<std::string> outputs;
  };

  explicit ReplayGenerator(const std::vector<Recording> &recordings);

  // JSON lines of {"input", "num_outputs", "strategy", "seed", "outputs"}.
  static std::shared_ptr<ReplayGenerator> Load(const std::filesystem::path &path);

  std::vector<std::vector<std::string>> Generate(const std::vector<std::string> &inputs,
                                                 int num_outputs, DecodeStrategy strategy,
                                                 uint64_t seed) override;

 private:
  static std::string Key(std::string_view input, int num_outputs,
                         DecodeStrategy strategy, uint64_t seed);

  std::map<std::string, std::vector<std::string>> responses_;
};

}  // namespace claimkit

#endif  // CLAIMKIT_REFERENCE_SCORERS_H_
