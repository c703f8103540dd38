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

#include "claimkit/claimgen.h"

#include <algorithm>
#include <set>

#include <spdlog/spdlog.h>

#include "claimkit/error.h"
#include "claimkit/hash.h"

namespace claimkit {

void to_json(nlohmann::json &j, const CitanceRecord &r) {
  j = nlohmann::json{{"id", r.id},
                     {"citance", r.citance},
                     {"context_before", r.context_before},
                     {"context_after", r.context_after},
                     {"source_doc_id", r.source_doc_id},
                     {"cited_doc_ids", r.cited_doc_ids}};
}

void from_json(const nlohmann::json &j, CitanceRecord &r) {
  r.id = j.at("id").get<std::string>();
  r.citance = j.at("citance").get<std::string>();
  r.context_before = j.value("context_before", std::string());
  r.context_after = j.value("context_after", std::string());
  r.source_doc_id = j.value("source_doc_id", std::string());
  r.cited_doc_ids = j.value("cited_doc_ids", std::vector<std::string>());
  if (r.id.empty()) throw Error(ErrorCode::kMalformedRecord, "citance id is empty");
  if (r.citance.empty()) throw Error(ErrorCode::kMalformedRecord, "citance is empty");
}

std::string_view ClaimMethodName(ClaimMethod m) {
  return m == ClaimMethod::kEntity ? "entity" : "direct";
}

ClaimMethod ParseClaimMethod(std::string_view name) {
  if (name == "entity") return ClaimMethod::kEntity;
  if (name == "direct") return ClaimMethod::kDirect;
  throw Error(ErrorCode::kInvalidArgument, "unknown method '" + std::string(name) + "'");
}

void to_json(nlohmann::json &j, const Claim &c) {
  nlohmann::json p{{"separator", c.provenance.separator}};
  if (c.method == ClaimMethod::kEntity) {
    p["entity"] = c.provenance.entity ? nlohmann::json(*c.provenance.entity)
                                      : nlohmann::json(nullptr);
    p["question_input"] = c.provenance.question_input;
    p["question"] = c.provenance.question;
    p["claim_input"] = c.provenance.claim_input;
  } else {
    p["input"] = c.provenance.input;
    if (c.provenance.sample_index) p["sample_index"] = *c.provenance.sample_index;
    if (c.provenance.num_requested) p["num_requested"] = *c.provenance.num_requested;
  }
  j = nlohmann::json{{"id", c.id},
                     {"text", c.text},
                     {"citance_id", c.citance_id},
                     {"method", ClaimMethodName(c.method)},
                     {"provenance", std::move(p)}};
}

void from_json(const nlohmann::json &j, Claim &c) {
  c.id = j.at("id").get<std::string>();
  c.text = j.at("text").get<std::string>();
  c.citance_id = j.at("citance_id").get<std::string>();
  c.method = ParseClaimMethod(j.at("method").get<std::string>());
  if (c.text.empty()) throw Error(ErrorCode::kMalformedRecord, "claim text is empty");
  c.provenance = {};
  auto it = j.find("provenance");
  if (it == j.end() || !it->is_object()) return;
  const nlohmann::json &p = *it;
  c.provenance.separator = p.value("separator", std::string());
  if (auto e = p.find("entity"); e != p.end() && e->is_object()) {
    c.provenance.entity = e->get<EntityMention>();
  }
  c.provenance.question_input = p.value("question_input", std::string());
  c.provenance.question = p.value("question", std::string());
  c.provenance.claim_input = p.value("claim_input", std::string());
  c.provenance.input = p.value("input", std::string());
  if (p.contains("sample_index")) {
    c.provenance.sample_index = p.at("sample_index").get<std::size_t>();
  }
  if (p.contains("num_requested")) {
    c.provenance.num_requested = p.at("num_requested").get<std::size_t>();
  }
}

std::string ClaimGenerator::DirectInput(const CitanceRecord &rec) {
  std::string context = rec.context_before;
  if (!rec.context_after.empty()) {
    if (!context.empty()) context += ' ';
    context += rec.context_after;
  }
  return context + std::string(kDoublePipe) + rec.citance;
}

std::string ClaimGenerator::EntityInput(std::string_view text, std::string_view entity) {
  std::string out(text);
  out += ' ';
  out += kDoublePipe;
  out += ' ';
  out += entity;
  return out;
}

uint64_t ClaimGenerator::RecordSeed(const CitanceRecord &rec) const {
  return StableHash({std::to_string(seed_), rec.id});
}

std::vector<Claim> ClaimGenerator::Entity(const CitanceRecord &rec) const {
  std::vector<Claim> claims;
  std::vector<EntityMention> mentions = linker_.FindMentions(rec.citance);
  for (std::size_t i = 0; i < mentions.size(); ++i) {
    const EntityMention &mention = mentions[i];
    Claim claim;
    claim.citance_id = rec.id;
    claim.method = ClaimMethod::kEntity;
    claim.provenance.entity = mention;
    claim.provenance.separator = std::string(kDoublePipe);
    claim.provenance.question_input = EntityInput(rec.citance, mention.text);
    try {
      claim.provenance.question =
          gateway_.Generate({claim.provenance.question_input, 1, DecodeStrategy::kBeam, 0})
              .front();
      claim.provenance.claim_input = EntityInput(claim.provenance.question, mention.text);
      claim.text =
          gateway_.Generate({claim.provenance.claim_input, 1, DecodeStrategy::kBeam, 0})
              .front();
    } catch (const Error &e) {
      if (e.code() != ErrorCode::kEmptyGeneration) throw;
      spdlog::warn("citance {}: dropped mention '{}' at {}: empty generation", rec.id,
                   mention.text, mention.start);
      continue;
    }
    claim.id = rec.id + ":entity:" + std::to_string(i);
    claims.push_back(std::move(claim));
  }
  return claims;
}

std::size_t ClaimGenerator::NounChunkCount(const CitanceRecord &rec) const {
  if (std::optional<std::size_t> n = gateway_.CountNounChunks(rec.citance)) return *n;
  return std::max<std::size_t>(1, linker_.FindMentions(rec.citance).size());
}

std::vector<Claim> ClaimGenerator::Direct(const CitanceRecord &rec,
                                          std::optional<std::size_t> k_override) const {
  const std::size_t k = k_override ? *k_override : NounChunkCount(rec);
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  GenerationRequest req;
  req.input = DirectInput(rec);
  req.num_outputs = static_cast<int>(k);
  req.strategy = DecodeStrategy::kSampleTopK;
  req.seed = RecordSeed(rec);
  std::vector<std::string> outputs = gateway_.Generate(req);

  std::vector<Claim> claims;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    if (!seen.insert(outputs[i]).second) continue;
    Claim claim;
    claim.id = rec.id + ":direct:" + std::to_string(i);
    claim.text = outputs[i];
    claim.citance_id = rec.id;
    claim.method = ClaimMethod::kDirect;
    claim.provenance.input = req.input;
    claim.provenance.sample_index = i;
    claim.provenance.num_requested = k;
    claim.provenance.separator = std::string(kDoublePipe);
    claims.push_back(std::move(claim));
  }
  return claims;
}

}  // namespace claimkit
