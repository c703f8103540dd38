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

#include "claimkit/dataset.h"

#include <algorithm>
#include <set>
#include <tuple>

#include "claimkit/error.h"
#include "claimkit/hash.h"

namespace claimkit {

void to_json(nlohmann::json &j, const DocumentRecord &d) {
  j = nlohmann::json{{"doc_id", d.doc_id}, {"title", d.title}, {"abstract", d.abstract}};
}

void from_json(const nlohmann::json &j, DocumentRecord &d) {
  const nlohmann::json &id = j.at("doc_id");
  d.doc_id = id.is_string() ? id.get<std::string>() : id.dump();
  d.title = j.value("title", std::string());
  d.abstract = j.at("abstract").get<std::vector<std::string>>();
  if (d.abstract.empty()) {
    throw Error(ErrorCode::kMalformedRecord, "document " + d.doc_id + " has no abstract");
  }
}

std::string_view LabelName(Label l) {
  switch (l) {
    case Label::kSupports: return "SUPPORTS";
    case Label::kRefutes: return "REFUTES";
    case Label::kNei: return "NEI";
  }
  return "NEI";
}

Label ParseLabel(std::string_view name) {
  if (name == "SUPPORTS") return Label::kSupports;
  if (name == "REFUTES") return Label::kRefutes;
  if (name == "NEI") return Label::kNei;
  throw Error(ErrorCode::kMalformedRecord, "unknown label '" + std::string(name) + "'");
}

void to_json(nlohmann::json &j, const FactInstance &f) {
  nlohmann::json p{{"citance_id", f.provenance.citance_id},
                   {"claim_id", f.provenance.claim_id},
                   {"method", ClaimMethodName(f.provenance.method)}};
  if (f.provenance.original_claim) {
    p["negation"] = {{"original_claim", *f.provenance.original_claim},
                     {"replacement_cui", f.provenance.replacement_cui.value_or("")},
                     {"replacement_surface", f.provenance.replacement_surface.value_or("")}};
  }
  j = nlohmann::json{{"id", f.id},
                     {"claim", f.claim},
                     {"evidence_doc_id", f.evidence_doc_id},
                     {"label", LabelName(f.label)},
                     {"provenance", std::move(p)}};
}

void from_json(const nlohmann::json &j, FactInstance &f) {
  f.id = j.at("id").get<std::string>();
  f.claim = j.at("claim").get<std::string>();
  f.evidence_doc_id = j.at("evidence_doc_id").get<std::string>();
  f.label = ParseLabel(j.at("label").get<std::string>());
  const nlohmann::json &p = j.at("provenance");
  f.provenance = {};
  f.provenance.citance_id = p.at("citance_id").get<std::string>();
  f.provenance.claim_id = p.value("claim_id", std::string());
  f.provenance.method = ParseClaimMethod(p.value("method", std::string("direct")));
  if (auto n = p.find("negation"); n != p.end() && n->is_object()) {
    f.provenance.original_claim = n->at("original_claim").get<std::string>();
    f.provenance.replacement_cui = n->value("replacement_cui", std::string());
    f.provenance.replacement_surface = n->value("replacement_surface", std::string());
  }
}

std::string FactInstanceId(std::string_view claim, std::string_view doc_id, Label label) {
  return HexDigest(StableHash({claim, doc_id, LabelName(label)}));
}

std::vector<FactInstance> BuildDataset(
    const std::vector<Claim> &claims,
    const std::map<std::string, NegationCandidate> &negations,
    const std::map<std::string, CitanceRecord> &citances,
    const std::map<std::string, DocumentRecord> &corpus, const DatasetConfig &config,
    DatasetReport *report) {
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "corpus has no documents");
  if (config.nei_claims + config.nei_negations == 0) {
    throw Error(ErrorCode::kInvalidArgument, "NEI ratio must not be 0:0");
  }
  DatasetReport local;
  std::set<std::pair<std::string, std::string>> missing;
  auto have_doc = [&](const std::string &citance_id, const std::string &doc_id) {
    if (corpus.contains(doc_id)) return true;
    missing.emplace(citance_id, doc_id);
    return false;
  };

  std::vector<FactInstance> out;
  std::set<std::tuple<std::string, std::string, Label>> seen;
  auto emit = [&](FactInstance f) {
    if (!seen.emplace(f.claim, f.evidence_doc_id, f.label).second) {
      ++local.duplicates_dropped;
      return;
    }
    f.id = FactInstanceId(f.claim, f.evidence_doc_id, f.label);
    out.push_back(std::move(f));
  };

  // Position of each claim within its citance, for the NEI round robin.
  std::map<std::string, std::size_t> next_slot;

  // Fixed processing order keeps the output independent of input order.
  std::vector<const Claim *> ordered;
  ordered.reserve(claims.size());
  for (const Claim &c : claims) ordered.push_back(&c);
  std::sort(ordered.begin(), ordered.end(), [](const Claim *a, const Claim *b) {
    return std::tie(a->citance_id, a->id, a->text) < std::tie(b->citance_id, b->id, b->text);
  });

  for (const Claim *claim_ptr : ordered) {
    const Claim &claim = *claim_ptr;
    auto cit = citances.find(claim.citance_id);
    if (cit == citances.end()) throw Error(ErrorCode::kUnknownCitance, claim.citance_id);
    const CitanceRecord &rec = cit->second;

    const NegationCandidate *negation = nullptr;
    if (auto n = negations.find(claim.id); n != negations.end()) {
      if (n->second.text != claim.text && !n->second.text.empty()) {
        negation = &n->second;
      } else {
        ++local.negations_ignored;
      }
    }

    FactProvenance base;
    base.citance_id = rec.id;
    base.claim_id = claim.id;
    base.method = claim.method;
    FactProvenance negated = base;
    if (negation != nullptr) {
      negated.original_claim = claim.text;
      negated.replacement_cui = negation->replacement_cui;
      negated.replacement_surface = negation->replacement_surface;
    }

    std::size_t cited = rec.cited_doc_ids.size();
    if (config.max_cited) cited = std::min(cited, *config.max_cited);
    for (std::size_t d = 0; d < cited; ++d) {
      const std::string &doc = rec.cited_doc_ids[d];
      if (!have_doc(rec.id, doc)) continue;
      emit({"", claim.text, doc, Label::kSupports, base});
      if (negation != nullptr) emit({"", negation->text, doc, Label::kRefutes, negated});
    }

    const std::size_t slot = next_slot[rec.id]++;
    const std::size_t cycle = config.nei_claims + config.nei_negations;
    const bool negation_slot = slot % cycle >= config.nei_claims;
    if (!rec.source_doc_id.empty() && have_doc(rec.id, rec.source_doc_id)) {
      if (negation_slot && negation != nullptr) {
        emit({"", negation->text, rec.source_doc_id, Label::kNei, negated});
      } else {
        emit({"", claim.text, rec.source_doc_id, Label::kNei, base});
      }
    }
  }

  std::sort(out.begin(), out.end(),
            [](const FactInstance &a, const FactInstance &b) { return a.id < b.id; });

  if (config.label_cap) {
    std::array<std::size_t, kNumLabels> kept{};
    std::erase_if(out, [&](const FactInstance &f) {
      return kept[static_cast<std::size_t>(f.label)]++ >= *config.label_cap;
    });
  }

  local.missing_docs.assign(missing.begin(), missing.end());
  if (report != nullptr) *report = std::move(local);
  return out;
}

std::size_t DatasetStats::total() const {
  std::size_t n = 0;
  for (std::size_t c : labels) n += c;
  return n;
}

DatasetStats &DatasetStats::operator+=(const DatasetStats &other) {
  for (std::size_t i = 0; i < kNumLabels; ++i) labels[i] += other.labels[i];
  for (const auto &[citance, counts] : other.per_citance) {
    auto &mine = per_citance[citance];
    for (std::size_t i = 0; i < kNumLabels; ++i) mine[i] += counts[i];
  }
  return *this;
}

DatasetStats ComputeStats(std::span<const FactInstance> instances) {
  DatasetStats stats;
  for (const FactInstance &f : instances) {
    const auto label = static_cast<std::size_t>(f.label);
    ++stats.labels[label];
    ++stats.per_citance[f.provenance.citance_id][label];
  }
  return stats;
}

nlohmann::json StatsToJson(const DatasetStats &stats) {
  auto counts = [](const std::array<std::size_t, kNumLabels> &c) {
    nlohmann::json j;
    for (std::size_t i = 0; i < kNumLabels; ++i) {
      j[std::string(LabelName(static_cast<Label>(i)))] = c[i];
    }
    return j;
  };
  nlohmann::json per = nlohmann::json::object();
  for (const auto &[citance, c] : stats.per_citance) per[citance] = counts(c);
  return {{"labels", counts(stats.labels)}, {"total", stats.total()}, {"per_citance", per}};
}

std::vector<nlohmann::json> SciFactExport(
    std::span<const FactInstance> instances,
    const std::map<std::string, CitanceRecord> &citances) {
  std::vector<std::string> order;
  std::map<std::string, nlohmann::json> by_claim;
  for (const FactInstance &f : instances) {
    auto [it, inserted] = by_claim.try_emplace(f.claim);
    nlohmann::json &rec = it->second;
    if (inserted) {
      order.push_back(f.claim);
      rec = {{"claim", f.claim},
             {"evidence", nlohmann::json::object()},
             {"cited_doc_ids", nlohmann::json::array()}};
      if (auto c = citances.find(f.provenance.citance_id); c != citances.end()) {
        rec["cited_doc_ids"] = c->second.cited_doc_ids;
      }
    }
    if (f.label == Label::kNei) continue;
    rec["evidence"][f.evidence_doc_id].push_back(
        {{"sentences", nlohmann::json::array()},
         {"label", f.label == Label::kSupports ? "SUPPORT" : "CONTRADICT"}});
  }
  std::vector<nlohmann::json> out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    nlohmann::json rec = std::move(by_claim[order[i]]);
    rec["id"] = i;
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace claimkit
