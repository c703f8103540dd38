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

#ifndef CLAIMKIT_DATASET_H_
#define CLAIMKIT_DATASET_H_

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "claimkit/claimgen.h"
#include "claimkit/kbin.h"

namespace claimkit {

struct DocumentRecord {
  std::string doc_id;
  std::string title;
  std::vector<std::string> abstract;
};

void to_json(nlohmann::json &j, const DocumentRecord &d);
void from_json(const nlohmann::json &j, DocumentRecord &d);

enum class Label { kSupports = 0, kRefutes = 1, kNei = 2 };
inline constexpr std::size_t kNumLabels = 3;

std::string_view LabelName(Label l);
Label ParseLabel(std::string_view name);

struct FactProvenance {
  std::string citance_id;
  std::string claim_id;
  ClaimMethod method = ClaimMethod::kDirect;
  // Set when `claim` is a negation of the generated claim.
  std::optional<std::string> original_claim;
  std::optional<std::string> replacement_cui;
  std::optional<std::string> replacement_surface;
};

struct FactInstance {
  std::string id;
  std::string claim;
  std::string evidence_doc_id;
  Label label = Label::kSupports;
  FactProvenance provenance;
};

void to_json(nlohmann::json &j, const FactInstance &f);
void from_json(const nlohmann::json &j, FactInstance &f);

struct DatasetConfig {
  // Cited documents paired per claim, in cited_doc_ids order. nullopt = all.
  std::optional<std::size_t> max_cited;
  // NEI slots cycle through `nei_claims` claim slots then `nei_negations`
  // negation slots. A negation slot without a negation falls back to the claim.
  std::size_t nei_claims = 1;
  std::size_t nei_negations = 1;
  // Instances kept per label (lowest ids first). nullopt = no cap.
  std::optional<std::size_t> label_cap;
};

struct DatasetReport {
  // (citance id, doc id) pairs skipped because the doc is not in the corpus.
  std::vector<std::pair<std::string, std::string>> missing_docs;
  std::size_t duplicates_dropped = 0;
  std::size_t negations_ignored = 0;
};

// Deterministic instance id: hash of (claim text, doc id, label).
std::string FactInstanceId(std::string_view claim, std::string_view doc_id, Label label);

// Pairs claims and negations with citation evidence:
//   SUPPORTS  claim x each cited doc of its citance
//   REFUTES   negation x the same cited docs
//   NEI       one per claim, the claim or its negation (round robin), x the
//             citance's source doc
// Output is sorted by id. Throws UnknownCitance, EmptyCorpus.
std::vector<FactInstance> BuildDataset(
    const std::vector<Claim> &claims,
    const std::map<std::string, NegationCandidate> &negations,
    const std::map<std::string, CitanceRecord> &citances,
    const std::map<std::string, DocumentRecord> &corpus, const DatasetConfig &config,
    DatasetReport *report = nullptr);

struct DatasetStats {
  std::array<std::size_t, kNumLabels> labels{};
  std::map<std::string, std::array<std::size_t, kNumLabels>> per_citance;

  std::size_t total() const;
  DatasetStats &operator+=(const DatasetStats &other);
  friend DatasetStats operator+(DatasetStats a, const DatasetStats &b) { return a += b; }
  friend bool operator==(const DatasetStats &, const DatasetStats &) = default;
};

DatasetStats ComputeStats(std::span<const FactInstance> instances);
nlohmann::json StatsToJson(const DatasetStats &stats);

// SciFact claims-file records, one per distinct claim text, ids 0..n-1 in
// order of first appearance.
std::vector<nlohmann::json> SciFactExport(std::span<const FactInstance> instances,
                                          const std::map<std::string, CitanceRecord> &citances);

}  // namespace claimkit

#endif  // CLAIMKIT_DATASET_H_
