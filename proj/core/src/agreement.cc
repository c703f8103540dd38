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
#include <set>

#include "claimkit/error.h"
#include "claimkit/evalkit.h"
#include "claimkit/text.h"

namespace claimkit {

std::string_view AlphaMetricName(AlphaMetric m) {
  switch (m) {
    case AlphaMetric::kNominal: return "nominal";
    case AlphaMetric::kOrdinal: return "ordinal";
    case AlphaMetric::kInterval: return "interval";
  }
  return "nominal";
}

AlphaMetric ParseAlphaMetric(std::string_view name) {
  if (name == "nominal") return AlphaMetric::kNominal;
  if (name == "ordinal") return AlphaMetric::kOrdinal;
  if (name == "interval") return AlphaMetric::kInterval;
  throw Error(ErrorCode::kInvalidArgument, "unknown alpha metric '" + std::string(name) + "'");
}

namespace {

std::size_t ItemCount(const RatingMatrix &ratings) {
  std::size_t n = 0;
  for (const auto &row : ratings) n = std::max(n, row.size());
  return n;
}

// Ratings present for item i.
std::vector<double> Column(const RatingMatrix &ratings, std::size_t i) {
  std::vector<double> values;
  for (const auto &row : ratings) {
    if (i < row.size() && row[i]) values.push_back(*row[i]);
  }
  return values;
}

}  // namespace

AlphaResult KrippendorffAlpha(const RatingMatrix &ratings, AlphaMetric metric) {
  if (ratings.size() < 2) throw Error(ErrorCode::kInsufficientData, "need at least two raters");

  // Distinct values, sorted; coincidences indexed by value rank.
  std::set<double> value_set;
  const std::size_t items = ItemCount(ratings);
  std::vector<std::vector<double>> columns;
  for (std::size_t i = 0; i < items; ++i) {
    std::vector<double> col = Column(ratings, i);
    if (col.size() < 2) continue;
    value_set.insert(col.begin(), col.end());
    columns.push_back(std::move(col));
  }
  if (columns.empty()) throw Error(ErrorCode::kInsufficientData, "no item has two ratings");

  const std::vector<double> values(value_set.begin(), value_set.end());
  const std::size_t k = values.size();
  auto rank = [&](double v) {
    return static_cast<std::size_t>(std::lower_bound(values.begin(), values.end(), v) -
                                    values.begin());
  };

  std::vector<std::vector<double>> coincidence(k, std::vector<double>(k, 0.0));
  for (const std::vector<double> &col : columns) {
    const double weight = 1.0 / static_cast<double>(col.size() - 1);
    for (std::size_t a = 0; a < col.size(); ++a) {
      for (std::size_t b = 0; b < col.size(); ++b) {
        if (a != b) coincidence[rank(col[a])][rank(col[b])] += weight;
      }
    }
  }
  std::vector<double> marginal(k, 0.0);
  double n = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t d = 0; d < k; ++d) marginal[c] += coincidence[c][d];
    n += marginal[c];
  }

  AlphaResult result;
  result.pairable_values = static_cast<std::size_t>(n + 0.5);
  if (k == 1) {
    result.alpha = 1.0;
    result.zero_expected_disagreement = true;
    return result;
  }

  auto delta2 = [&](std::size_t c, std::size_t d) -> double {
    switch (metric) {
      case AlphaMetric::kNominal:
        return c == d ? 0.0 : 1.0;
      case AlphaMetric::kInterval: {
        const double diff = values[c] - values[d];
        return diff * diff;
      }
      case AlphaMetric::kOrdinal: {
        const std::size_t lo = std::min(c, d), hi = std::max(c, d);
        double s = 0.0;
        for (std::size_t g = lo; g <= hi; ++g) s += marginal[g];
        s -= (marginal[c] + marginal[d]) / 2.0;
        return s * s;
      }
    }
    return 0.0;
  };

  double observed = 0.0, expected = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t d = 0; d < k; ++d) {
      if (c == d) continue;
      const double delta = delta2(c, d);
      observed += coincidence[c][d] * delta;
      expected += marginal[c] * marginal[d] * delta;
    }
  }
  observed /= n;
  expected /= n * (n - 1.0);
  // With at least two distinct pairable values expected > 0.
  result.alpha = observed == 0.0 ? 1.0 : 1.0 - observed / expected;
  return result;
}

double ExactAgreement(const RatingMatrix &ratings) {
  if (ratings.size() < 2) throw Error(ErrorCode::kInsufficientData, "need at least two raters");
  const std::size_t items = ItemCount(ratings);
  std::size_t rated = 0, unanimous = 0;
  for (std::size_t i = 0; i < items; ++i) {
    std::vector<double> col = Column(ratings, i);
    if (col.size() < 2) continue;
    ++rated;
    if (std::all_of(col.begin(), col.end(), [&](double v) { return v == col.front(); })) {
      ++unanimous;
    }
  }
  if (rated == 0) throw Error(ErrorCode::kInsufficientData, "no item has two ratings");
  return static_cast<double>(unanimous) / static_cast<double>(rated);
}

nlohmann::json EvalMetadata(std::optional<AlphaMetric> alpha_metric) {
  nlohmann::json meta{{"rouge_variant", kRougeScoring},
                      {"rouge_stemming", false},
                      {"rouge_stopwords", false},
                      {"tokenizer_version", kTokenizerVersion}};
  meta["alpha_metric"] =
      alpha_metric ? nlohmann::json(AlphaMetricName(*alpha_metric)) : nlohmann::json(nullptr);
  return meta;
}

}  // namespace claimkit
