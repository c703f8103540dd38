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

#include <map>
#include <set>

#include "claimkit/evalkit.h"

namespace claimkit {

std::vector<YieldRow> YieldTable(
    const std::map<std::string, std::vector<std::string>> &claims_by_method,
    const std::vector<QualityJudgment> &judgments) {
  // claim -> (accepting raters, all raters)
  std::map<std::string, std::pair<std::size_t, std::size_t>> votes;
  for (const QualityJudgment &j : judgments) {
    auto &[yes, total] = votes[j.claim_id];
    ++total;
    if (Acceptable(j.rating)) ++yes;
  }

  std::vector<YieldRow> rows;
  for (const auto &[method, claim_ids] : claims_by_method) {
    YieldRow row;
    row.method = method;
    std::set<std::string> unique(claim_ids.begin(), claim_ids.end());
    row.generated = unique.size();
    for (const std::string &id : unique) {
      auto it = votes.find(id);
      if (it == votes.end()) continue;
      ++row.annotated;
      if (2 * it->second.first > it->second.second) ++row.accepted;
    }
    row.precision = row.annotated == 0
                        ? 0.0
                        : static_cast<double>(row.accepted) / static_cast<double>(row.annotated);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<NegationRow> NegationTable(const std::vector<NegationJudgment> &judgments) {
  std::map<std::string, NegationRow> rows;
  for (const NegationJudgment &j : judgments) {
    NegationRow &row = rows[j.method];
    row.method = j.method;
    ++row.total;
    switch (j.entailment) {
      case Entailment::kDefinitelyFalse: ++row.definitely_false; break;
      case Entailment::kMightBeTrue: ++row.might_be_true; break;
      case Entailment::kDefinitelyTrue: ++row.definitely_true; break;
      case Entailment::kSkip: ++row.skipped; break;
    }
    if (j.entailment != Entailment::kSkip) ++row.fluent;
  }
  std::vector<NegationRow> out;
  for (auto &[method, row] : rows) out.push_back(std::move(row));
  return out;
}

}  // namespace claimkit
