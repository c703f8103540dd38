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

#ifndef CLAIMKIT_EVALKIT_H_
#define CLAIMKIT_EVALKIT_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "claimkit/ratings.h"

namespace claimkit {

// ROUGE F1 (beta = 1) over WordTokens(): unigram and bigram clipped overlap
// counts, and longest common subsequence for R-L. No stemming, no stopwords.
struct RougeScores {
  double r1 = 0.0;
  double r2 = 0.0;
  double rl = 0.0;
};

enum class RougeVariant { kR1, kR2, kRL };

std::string_view RougeVariantName(RougeVariant v);
RougeVariant ParseRougeVariant(std::string_view name);
double Select(const RougeScores &s, RougeVariant v);

inline constexpr std::string_view kRougeScoring = "f1";

// Throws EmptyAfterTokenization when either side has no tokens.
RougeScores Rouge(std::string_view candidate, std::string_view reference);

// (1/|C|) * sum over generated claims of max over that citance's references.
// `generated` holds (citance id, claim text). Throws MissingReferences, or
// InvalidArgument on an empty claim list.
double MaxAvgScore(const std::vector<std::pair<std::string, std::string>> &generated,
                   const std::map<std::string, std::vector<std::string>> &references,
                   RougeVariant variant);

// Rater x item; nullopt marks a missing rating.
using RatingMatrix = std::vector<std::vector<std::optional<double>>>;

enum class AlphaMetric { kNominal, kOrdinal, kInterval };

std::string_view AlphaMetricName(AlphaMetric m);
AlphaMetric ParseAlphaMetric(std::string_view name);

struct AlphaResult {
  double alpha = 1.0;
  // Every pairable value was identical; alpha is 1 by convention.
  bool zero_expected_disagreement = false;
  std::size_t pairable_values = 0;
};

// Krippendorff's alpha through the coincidence matrix. Items with fewer than
// two ratings are not pairable. Throws InsufficientData when fewer than two
// raters or no pairable item.
AlphaResult KrippendorffAlpha(const RatingMatrix &ratings, AlphaMetric metric);

// Fraction of items rated by at least two raters on which every rating is
// identical. Throws InsufficientData.
double ExactAgreement(const RatingMatrix &ratings);

// A latest-revision quality rating joined to its claim.
struct QualityJudgment {
  std::string claim_id;
  std::string annotator;
  AnnotationRecord rating;
};

struct YieldRow {
  std::string method;
  std::size_t generated = 0;
  std::size_t annotated = 0;
  std::size_t accepted = 0;
  double precision = 0.0;
};

// Per method: claims generated, claims with at least one rating, claims
// accepted by a strict majority of their raters, and accepted / annotated.
// Judgments for claims outside `claims_by_method` are ignored.
std::vector<YieldRow> YieldTable(
    const std::map<std::string, std::vector<std::string>> &claims_by_method,
    const std::vector<QualityJudgment> &judgments);

struct NegationJudgment {
  std::string method;
  Entailment entailment = Entailment::kSkip;
};

struct NegationRow {
  std::string method;
  std::size_t total = 0;
  std::size_t fluent = 0;  // everything but SKIP
  std::size_t definitely_false = 0;
  std::size_t might_be_true = 0;
  std::size_t definitely_true = 0;
  std::size_t skipped = 0;
};

std::vector<NegationRow> NegationTable(const std::vector<NegationJudgment> &judgments);

// Metadata attached to every evaluation output.
nlohmann::json EvalMetadata(std::optional<AlphaMetric> alpha_metric = std::nullopt);

}  // namespace claimkit

#endif  // CLAIMKIT_EVALKIT_H_
