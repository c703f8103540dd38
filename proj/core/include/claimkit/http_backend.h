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

#ifndef CLAIMKIT_HTTP_BACKEND_H_
#define CLAIMKIT_HTTP_BACKEND_H_

#include <chrono>
#include <string>
#include <vector>

#include "claimkit/scorer.h"

namespace claimkit {

// Client for a remote scorer speaking the /v1/perplexity, /v1/nli and
// /v1/generate JSON protocol. Transport failures and non-200 statuses raise
// BackendUnavailable; unparseable bodies raise BackendMalformedResponse.
class HttpScorerClient : public PerplexityBackend,
                         public NliBackend,
                         public GeneratorBackend {
 public:
  // base_url like "http://127.0.0.1:8700".
  HttpScorerClient(std::string base_url, std::chrono::milliseconds timeout);

  std::vector<double> Perplexity(const std::vector<std::string> &texts) override;
  std::vector<NliProbs> Nli(const std::vector<NliPair> &pairs) override;
  std::vector<std::vector<std::string>> Generate(const std::vector<std::string> &inputs,
                                                 int num_outputs, DecodeStrategy strategy,
                                                 uint64_t seed) override;

  const std::string &base_url() const { return base_url_; }

 private:
  nlohmann::json Post(const std::string &path, const nlohmann::json &body) const;

  std::string base_url_;
  std::chrono::milliseconds timeout_;
};

}  // namespace claimkit

#endif  // CLAIMKIT_HTTP_BACKEND_H_
