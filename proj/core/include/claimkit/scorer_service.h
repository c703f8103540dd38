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

#ifndef CLAIMKIT_SCORER_SERVICE_H_
#define CLAIMKIT_SCORER_SERVICE_H_

#include <memory>
#include <optional>

#include "claimkit/http.h"
#include "claimkit/scorer.h"

namespace claimkit {

// Server side of the scorer wire protocol, backed by in-process backends.
// Used to stand up stub scorers for development and record/replay tests.
class ScorerService {
 public:
  ScorerService(std::shared_ptr<PerplexityBackend> perplexity,
                std::shared_ptr<NliBackend> nli,
                std::shared_ptr<GeneratorBackend> generator)
      : perplexity_(std::move(perplexity)),
        nli_(std::move(nli)),
        generator_(std::move(generator)) {}

  // nullopt when the path is not a scorer endpoint.
  std::optional<HttpResponse> Handle(const HttpRequest &request) const;

 private:
  std::shared_ptr<PerplexityBackend> perplexity_;
  std::shared_ptr<NliBackend> nli_;
  std::shared_ptr<GeneratorBackend> generator_;
};

}  // namespace claimkit

#endif  // CLAIMKIT_SCORER_SERVICE_H_
