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

#ifndef CLAIMKIT_KBIN_H_
#define CLAIMKIT_KBIN_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "claimkit/entity_linker.h"
#include "claimkit/kb.h"
#include "claimkit/scorer.h"
#include "claimkit/vectors.h"

namespace claimkit {

// A claim with one entity span swapped for a surface form of a related
// concept.
struct NegationCandidate {
  std::string text;
  EntityMention source_entity;
  std::string replacement_cui;
  std::string replacement_surface;
  std::optional<double> perplexity;
  std::optional<double> contradiction;

  friend bool operator==(const NegationCandidate &, const NegationCandidate &) = default;
};

struct KbinConfig {
  // Related concepts kept per entity after distance ranking.
  std::size_t top_n_concepts = 20;
  // Surface forms tried per concept, canonical name first. nullopt = all.
  std::optional<std::size_t> max_aliases_per_concept;
  TypeMatch type_match = TypeMatch::kIntersect;
};

// `claim` with the mention's byte span replaced by `surface`.
std::string ReplaceSpan(std::string_view claim, const EntityMention &mention,
                        std::string_view surface);

// Everything one GetNegation call scored, for auditing and tests.
struct NegationTrace {
  std::vector<EntityMention> mentions;
  // Minimum-perplexity surface per related concept, across all entities.
  std::vector<NegationCandidate> pool;
  NegationCandidate selected;
};

// Knowledge-base informed negation.
//
// For each linked entity of a claim, the same-type siblings of its concept
// are ranked by embedding distance and the closest top_n_concepts kept. Each
// kept concept proposes one rewrite per surface form; the least perplexing
// rewrite per concept enters the pool, and the pool member the NLI model
// finds most contradictory to the original claim is returned.
class Kbin {
 public:
  Kbin(const KnowledgeBase &kb, const VectorTable &vectors, const EntityLinker &linker,
       ScorerGateway &gateway, KbinConfig config = {});

  // Unscored rewrites for one linked mention, ordered by concept rank then
  // surface order. Throws UnlinkedMention when mention.cui is unset.
  std::vector<NegationCandidate> CandidatesForEntity(std::string_view claim,
                                                     const EntityMention &mention) const;

  // Throws NoLinkableEntity or NoCandidates.
  NegationCandidate GetNegation(std::string_view claim) const;
  NegationTrace Trace(std::string_view claim) const;

  const KbinConfig &config() const { return config_; }

 private:
  const KnowledgeBase &kb_;
  const VectorTable &vectors_;
  const EntityLinker &linker_;
  ScorerGateway &gateway_;
  KbinConfig config_;
};

// Replaces one uniformly chosen linked mention with the canonical name of a
// uniformly chosen concept of the same type from the whole KB. Concepts whose
// canonical name normalizes to the mention text are not eligible.
// Throws NoLinkableEntity or NoSameTypeConcept.
NegationCandidate RandomEntityBaseline(const EntityLinker &linker, std::string_view claim,
                                       uint64_t seed,
                                       TypeMatch type_match = TypeMatch::kIntersect);

}  // namespace claimkit

#endif  // CLAIMKIT_KBIN_H_
