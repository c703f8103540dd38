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

#ifndef CLAIMKIT_CLAIMGEN_H_
#define CLAIMKIT_CLAIMGEN_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "claimkit/entity_linker.h"
#include "claimkit/scorer.h"

namespace claimkit {

// A citation sentence with its neighbouring sentences.
struct CitanceRecord {
  std::string id;
  std::string citance;
  std::string context_before;
  std::string context_after;
  std::string source_doc_id;
  std::vector<std::string> cited_doc_ids;
};

void to_json(nlohmann::json &j, const CitanceRecord &r);
void from_json(const nlohmann::json &j, CitanceRecord &r);

enum class ClaimMethod { kEntity, kDirect };

std::string_view ClaimMethodName(ClaimMethod m);
ClaimMethod ParseClaimMethod(std::string_view name);

// How a claim came to be. The entity pipeline fills the entity chain; the
// direct pipeline fills the sample index.
struct ClaimProvenance {
  std::optional<EntityMention> entity;
  std::string question_input;
  std::string question;
  std::string claim_input;

  std::string input;
  std::optional<std::size_t> sample_index;
  std::optional<std::size_t> num_requested;

  std::string separator;
};

struct Claim {
  std::string id;
  std::string text;
  std::string citance_id;
  ClaimMethod method = ClaimMethod::kDirect;
  ClaimProvenance provenance;
};

void to_json(nlohmann::json &j, const Claim &c);
void from_json(const nlohmann::json &j, Claim &c);

// Field separator used for every generator input.
inline constexpr std::string_view kDoublePipe = "||";

// Drives the two claim pipelines. Every neural step goes through the
// gateway's generator; noun-chunk counting through its chunker if present.
class ClaimGenerator {
 public:
  ClaimGenerator(const EntityLinker &linker, ScorerGateway &gateway, uint64_t seed)
      : linker_(linker), gateway_(gateway), seed_(seed) {}

  // One claim per citance mention: question from "citance || entity", then
  // claim from "question || entity", both beam search with one output.
  // Mentions whose generation comes back empty are dropped and logged.
  std::vector<Claim> Entity(const CitanceRecord &rec) const;

  // Samples k claims from "before after||citance" and drops repeats.
  std::vector<Claim> Direct(const CitanceRecord &rec,
                            std::optional<std::size_t> k_override = std::nullopt) const;

  // Chunker backend count if configured, else max(1, dictionary mentions).
  std::size_t NounChunkCount(const CitanceRecord &rec) const;

  static std::string DirectInput(const CitanceRecord &rec);
  static std::string EntityInput(std::string_view text, std::string_view entity);

  // Per-record sampling seed, independent of processing order.
  uint64_t RecordSeed(const CitanceRecord &rec) const;

 private:
  const EntityLinker &linker_;
  ScorerGateway &gateway_;
  uint64_t seed_;
};

}  // namespace claimkit

#endif  // CLAIMKIT_CLAIMGEN_H_
