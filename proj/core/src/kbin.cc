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

#include "claimkit/kbin.h"

#include <algorithm>
#include <map>

#include "claimkit/error.h"
#include "claimkit/hash.h"
#include "claimkit/text.h"

namespace claimkit {

std::string ReplaceSpan(std::string_view claim, const EntityMention &mention,
                        std::string_view surface) {
  std::string out;
  out.reserve(claim.size() - (mention.end - mention.start) + surface.size());
  out.append(claim.substr(0, mention.start));
  out.append(surface);
  out.append(claim.substr(mention.end));
  return out;
}

Kbin::Kbin(const KnowledgeBase &kb, const VectorTable &vectors, const EntityLinker &linker,
           ScorerGateway &gateway, KbinConfig config)
    : kb_(kb), vectors_(vectors), linker_(linker), gateway_(gateway), config_(config) {
  if (config_.top_n_concepts == 0) {
    throw Error(ErrorCode::kInvalidArgument, "top_n_concepts must be >= 1");
  }
}

std::vector<NegationCandidate> Kbin::CandidatesForEntity(
    std::string_view claim, const EntityMention &mention) const {
  if (!mention.cui) throw Error(ErrorCode::kUnlinkedMention, mention.text);
  const std::string &u = *mention.cui;

  CuiSet related = kb_.FilterSameType(u, kb_.Siblings(u), config_.type_match);
  if (related.empty() || vectors_.Find(u) == nullptr) return {};
  std::vector<Neighbor> ranked =
      NearestConcepts(vectors_, u, related, config_.top_n_concepts);

  const std::string mention_key = NormalizeAlias(mention.text);
  std::vector<NegationCandidate> out;
  for (const Neighbor &neighbor : ranked) {
    std::size_t used = 0;
    for (const std::string &surface : kb_.Get(neighbor.cui).Surfaces()) {
      if (NormalizeAlias(surface) == mention_key) continue;
      if (config_.max_aliases_per_concept && used >= *config_.max_aliases_per_concept) {
        break;
      }
      ++used;
      NegationCandidate c;
      c.text = ReplaceSpan(claim, mention, surface);
      c.source_entity = mention;
      c.replacement_cui = neighbor.cui;
      c.replacement_surface = surface;
      out.push_back(std::move(c));
    }
  }
  return out;
}

NegationTrace Kbin::Trace(std::string_view claim) const {
  if (claim.empty()) throw Error(ErrorCode::kInvalidArgument, "empty claim");
  NegationTrace trace;
  trace.mentions = linker_.FindMentions(claim);

  bool any_linked = false;
  for (EntityMention mention : trace.mentions) {
    mention.cui = linker_.Link(mention);
    if (!mention.cui) continue;
    any_linked = true;
    std::vector<NegationCandidate> candidates = CandidatesForEntity(claim, mention);
    if (candidates.empty()) continue;

    std::vector<std::string> texts;
    texts.reserve(candidates.size());
    for (const NegationCandidate &c : candidates) texts.push_back(c.text);
    std::vector<double> perplexities = gateway_.Perplexity(texts);

    // Keep the least perplexing surface of each concept. Candidates arrive
    // grouped by concept, so a linear pass over runs suffices.
    std::size_t run_start = 0;
    while (run_start < candidates.size()) {
      std::size_t run_end = run_start;
      std::size_t best = run_start;
      while (run_end < candidates.size() &&
             candidates[run_end].replacement_cui == candidates[run_start].replacement_cui) {
        const double p = perplexities[run_end];
        if (p < perplexities[best] ||
            (p == perplexities[best] && candidates[run_end].text < candidates[best].text)) {
          best = run_end;
        }
        ++run_end;
      }
      candidates[best].perplexity = perplexities[best];
      trace.pool.push_back(std::move(candidates[best]));
      run_start = run_end;
    }
  }
  if (!any_linked) throw Error(ErrorCode::kNoLinkableEntity, std::string(claim));
  if (trace.pool.empty()) throw Error(ErrorCode::kNoCandidates, std::string(claim));

  std::vector<NliPair> pairs;
  pairs.reserve(trace.pool.size());
  for (const NegationCandidate &c : trace.pool) pairs.push_back({std::string(claim), c.text});
  std::vector<NliProbs> probs = gateway_.Nli(pairs);
  for (std::size_t i = 0; i < trace.pool.size(); ++i) {
    trace.pool[i].contradiction = probs[i].contradiction;
  }

  auto better = [](const NegationCandidate &a, const NegationCandidate &b) {
    if (*a.contradiction != *b.contradiction) return *a.contradiction > *b.contradiction;
    if (*a.perplexity != *b.perplexity) return *a.perplexity < *b.perplexity;
    return a.text < b.text;
  };
  trace.selected = *std::min_element(trace.pool.begin(), trace.pool.end(), better);
  return trace;
}

NegationCandidate Kbin::GetNegation(std::string_view claim) const {
  return Trace(claim).selected;
}

NegationCandidate RandomEntityBaseline(const EntityLinker &linker, std::string_view claim,
                                       uint64_t seed, TypeMatch type_match) {
  if (claim.empty()) throw Error(ErrorCode::kInvalidArgument, "empty claim");
  const KnowledgeBase &kb = linker.kb();
  std::vector<EntityMention> linked;
  for (EntityMention m : linker.FindMentions(claim)) {
    m.cui = linker.Link(m);
    if (m.cui) linked.push_back(std::move(m));
  }
  if (linked.empty()) throw Error(ErrorCode::kNoLinkableEntity, std::string(claim));

  SeededRng rng(seed);
  const EntityMention &mention = linked[rng.UniformIndex(linked.size())];
  const Concept &u = kb.Get(*mention.cui);
  const std::string mention_key = NormalizeAlias(mention.text);

  // concepts() iterates in cui order, so the pool order is fixed.
  std::vector<const Concept *> pool;
  for (const auto &[cui, c] : kb.concepts()) {
    if (cui == u.cui || NormalizeAlias(c.name) == mention_key) continue;
    if (kb.SameType(u, c, type_match)) pool.push_back(&c);
  }
  if (pool.empty()) throw Error(ErrorCode::kNoSameTypeConcept, u.cui);
  const Concept &replacement = *pool[rng.UniformIndex(pool.size())];

  NegationCandidate out;
  out.text = ReplaceSpan(claim, mention, replacement.name);
  out.source_entity = mention;
  out.replacement_cui = replacement.cui;
  out.replacement_surface = replacement.name;
  return out;
}

}  // namespace claimkit
