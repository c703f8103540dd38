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

#include "claimkit/scorer_service.h"

#include <nlohmann/json.hpp>

#include "claimkit/error.h"

namespace claimkit {

std::optional<HttpResponse> ScorerService::Handle(const HttpRequest &request) const {
  const std::string &path = request.path;
  if (path != "/v1/perplexity" && path != "/v1/nli" && path != "/v1/generate") {
    return std::nullopt;
  }
  if (request.method != "POST") return JsonError(405, "MethodNotAllowed", path);

  nlohmann::json body;
  try {
    body = nlohmann::json::parse(request.body);
  } catch (const nlohmann::json::exception &e) {
    return JsonError(400, "BadRequest", e.what());
  }

  try {
    if (path == "/v1/perplexity") {
      if (perplexity_ == nullptr) return JsonError(503, "BackendUnavailable", path);
      auto texts = body.at("texts").get<std::vector<std::string>>();
      return HttpResponse{200,
                          nlohmann::json{{"perplexities", perplexity_->Perplexity(texts)}}.dump()};
    }
    if (path == "/v1/nli") {
      if (nli_ == nullptr) return JsonError(503, "BackendUnavailable", path);
      std::vector<NliPair> pairs;
      for (const auto &p : body.at("pairs")) {
        pairs.push_back({p.at("premise").get<std::string>(),
                         p.at("hypothesis").get<std::string>()});
      }
      return HttpResponse{200, nlohmann::json{{"probs", nli_->Nli(pairs)}}.dump()};
    }
    if (generator_ == nullptr) return JsonError(503, "BackendUnavailable", path);
    auto inputs = body.at("inputs").get<std::vector<std::string>>();
    int num_outputs = body.at("num_outputs").get<int>();
    DecodeStrategy strategy = ParseDecodeStrategy(body.at("strategy").get<std::string>());
    uint64_t seed = body.value("seed", uint64_t{0});
    auto outputs = generator_->Generate(inputs, num_outputs, strategy, seed);
    return HttpResponse{200, nlohmann::json{{"outputs", outputs}}.dump()};
  } catch (const nlohmann::json::exception &e) {
    return JsonError(400, "BadRequest", e.what());
  } catch (const Error &e) {
    int status = e.code() == ErrorCode::kInvalidArgument ? 400 : 503;
    return JsonError(status, ErrorCodeName(e.code()), e.what());
  }
}

}  // namespace claimkit
