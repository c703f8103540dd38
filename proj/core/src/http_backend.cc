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

#include "claimkit/http_backend.h"

#include <httplib.h>

#include "claimkit/error.h"

namespace claimkit {

HttpScorerClient::HttpScorerClient(std::string base_url, std::chrono::milliseconds timeout)
    : base_url_(std::move(base_url)), timeout_(timeout) {
  while (!base_url_.empty() && base_url_.back() == '/') base_url_.pop_back();
}

nlohmann::json HttpScorerClient::Post(const std::string &path,
                                      const nlohmann::json &body) const {
  // httplib::Client is not safe for concurrent requests; one per call.
  httplib::Client client(base_url_);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_write_timeout(timeout_);
  auto res = client.Post(path, body.dump(), "application/json");
  if (!res) {
    throw Error(ErrorCode::kBackendUnavailable,
                base_url_ + path + ": " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw Error(ErrorCode::kBackendUnavailable,
                base_url_ + path + ": HTTP " + std::to_string(res->status));
  }
  try {
    return nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kBackendMalformedResponse, base_url_ + path + ": " + e.what());
  }
}

std::vector<double> HttpScorerClient::Perplexity(const std::vector<std::string> &texts) {
  nlohmann::json res = Post("/v1/perplexity", {{"texts", texts}});
  try {
    return res.at("perplexities").get<std::vector<double>>();
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kBackendMalformedResponse, e.what());
  }
}

std::vector<NliProbs> HttpScorerClient::Nli(const std::vector<NliPair> &pairs) {
  nlohmann::json body{{"pairs", nlohmann::json::array()}};
  for (const NliPair &p : pairs) {
    body["pairs"].push_back({{"premise", p.premise}, {"hypothesis", p.hypothesis}});
  }
  nlohmann::json res = Post("/v1/nli", body);
  try {
    return res.at("probs").get<std::vector<NliProbs>>();
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kBackendMalformedResponse, e.what());
  }
}

std::vector<std::vector<std::string>> HttpScorerClient::Generate(
    const std::vector<std::string> &inputs, int num_outputs, DecodeStrategy strategy,
    uint64_t seed) {
  nlohmann::json res = Post("/v1/generate", {{"inputs", inputs},
                                             {"num_outputs", num_outputs},
                                             {"strategy", DecodeStrategyName(strategy)},
                                             {"seed", seed}});
  try {
    return res.at("outputs").get<std::vector<std::vector<std::string>>>();
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kBackendMalformedResponse, e.what());
  }
}

}  // namespace claimkit
