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

#include <algorithm>
#include <map>

#include "claimkit/error.h"
#include "claimkit/evalkit.h"
#include "claimkit/text.h"

namespace claimkit {

namespace {

using NgramCounts = std::map<std::vector<std::string>, std::size_t>;

NgramCounts Ngrams(const std::vector<std::string> &tokens, std::size_t n) {
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + n)];
  }
  return counts;
}

double F1(std::size_t overlap, std::size_t candidate_total, std::size_t reference_total) {
  if (overlap == 0 || candidate_total == 0 || reference_total == 0) return 0.0;
  const double precision = static_cast<double>(overlap) / candidate_total;
  const double recall = static_cast<double>(overlap) / reference_total;
  return 2.0 * precision * recall / (precision + recall);
}

double NgramF1(const std::vector<std::string> &cand, const std::vector<std::string> &ref,
               std::size_t n) {
  NgramCounts c = Ngrams(cand, n);
  NgramCounts r = Ngrams(ref, n);
  std::size_t overlap = 0;
  for (const auto &[gram, count] : c) {
    auto it = r.find(gram);
    if (it != r.end()) overlap += std::min(count, it->second);
  }
  const std::size_t cand_total = cand.size() >= n ? cand.size() - n + 1 : 0;
  const std::size_t ref_total = ref.size() >= n ? ref.size() - n + 1 : 0;
  return F1(overlap, cand_total, ref_total);
}

std::size_t LcsLength(const std::vector<std::string> &a, const std::vector<std::string> &b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace

std::string_view RougeVariantName(RougeVariant v) {
  switch (v) {
    case RougeVariant::kR1: return "r1";
    case RougeVariant::kR2: return "r2";
    case RougeVariant::kRL: return "rl";
  }
  return "r1";
}

RougeVariant ParseRougeVariant(std::string_view name) {
  if (name == "r1") return RougeVariant::kR1;
  if (name == "r2") return RougeVariant::kR2;
  if (name == "rl") return RougeVariant::kRL;
  throw Error(ErrorCode::kInvalidArgument, "unknown ROUGE variant '" + std::string(name) + "'");
}

double Select(const RougeScores &s, RougeVariant v) {
  switch (v) {
    case RougeVariant::kR1: return s.r1;
    case RougeVariant::kR2: return s.r2;
    case RougeVariant::kRL: return s.rl;
  }
  return s.r1;
}

RougeScores Rouge(std::string_view candidate, std::string_view reference) {
  std::vector<std::string> cand = WordTokens(candidate);
  std::vector<std::string> ref = WordTokens(reference);
  if (cand.empty()) throw Error(ErrorCode::kEmptyAfterTokenization, "candidate");
  if (ref.empty()) throw Error(ErrorCode::kEmptyAfterTokenization, "reference");
  RougeScores s;
  s.r1 = NgramF1(cand, ref, 1);
  s.r2 = NgramF1(cand, ref, 2);
  s.rl = F1(LcsLength(cand, ref), cand.size(), ref.size());
  return s;
}

double MaxAvgScore(const std::vector<std::pair<std::string, std::string>> &generated,
                   const std::map<std::string, std::vector<std::string>> &references,
                   RougeVariant variant) {
  if (generated.empty()) throw Error(ErrorCode::kInvalidArgument, "no generated claims");
  std::vector<double> maxima;
  maxima.reserve(generated.size());
  for (const auto &[citance_id, claim] : generated) {
    auto it = references.find(citance_id);
    if (it == references.end() || it->second.empty()) {
      throw Error(ErrorCode::kMissingReferences, citance_id);
    }
    double best = 0.0;
    for (const std::string &ref : it->second) {
      best = std::max(best, Select(Rouge(claim, ref), variant));
    }
    maxima.push_back(best);
  }
  // Summing in sorted order makes the result independent of input order.
  std::sort(maxima.begin(), maxima.end());
  double sum = 0.0;
  for (double m : maxima) sum += m;
  return sum / static_cast<double>(generated.size());
}

}  // namespace claimkit
