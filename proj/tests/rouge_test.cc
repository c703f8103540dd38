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

#include <gtest/gtest.h>

#include "claimkit/error.h"
#include "claimkit/evalkit.h"
#include "oracles/oracles.h"

namespace claimkit {
namespace {

struct RougeCase {
  const char *candidate;
  const char *reference;
  double r1, r2, rl;
};

// Each expectation is counted by hand from clipped n-gram overlaps and the
// longest common subsequence, then combined as F1 = 2PR / (P + R).
const RougeCase kCases[] = {
    {"a b c", "a c d", 2.0 / 3, 0.0, 2.0 / 3},
    {"the cat sat", "the cat sat", 1.0, 1.0, 1.0},
    {"a b", "c d", 0.0, 0.0, 0.0},
    // P1 = 3/6, R1 = 1; P2 = 2/5, R2 = 1; LCS 3.
    {"the cat sat on the mat", "the cat sat", 2.0 / 3, 4.0 / 7, 2.0 / 3},
    {"The Cat!", "the cat", 1.0, 1.0, 1.0},
    // Unigram a clipped to 1; the reference has no bigram.
    {"a a a", "a", 0.5, 0.0, 0.5},
    {"a b c d", "d c b a", 1.0, 0.0, 0.25},
    // Bigrams {ab: 2, ba: 1} vs {ab: 1}.
    {"a b a b", "a b", 2.0 / 3, 0.5, 2.0 / 3},
    {"x y z", "x q z", 2.0 / 3, 0.0, 2.0 / 3},
    // Tokens il, 6, levels, rise vs il, 6, levels.
    {"IL-6 levels rise", "il 6 levels", 6.0 / 7, 0.8, 6.0 / 7},
    // P1 = 2/2, R1 = 2/4; bigram "b c" shared, P2 = 1, R2 = 1/3.
    {"b c", "a b c d", 2.0 / 3, 0.5, 2.0 / 3},
    {"w1 w2 w3 w4 w5", "w1 w3 w5", 0.75, 0.0, 0.75},
};

TEST(RougeTest, HandDerivedCases) {
  for (const RougeCase &c : kCases) {
    const RougeScores s = Rouge(c.candidate, c.reference);
    EXPECT_NEAR(s.r1, c.r1, 1e-9) << c.candidate << " | " << c.reference;
    EXPECT_NEAR(s.r2, c.r2, 1e-9) << c.candidate << " | " << c.reference;
    EXPECT_NEAR(s.rl, c.rl, 1e-9) << c.candidate << " | " << c.reference;
  }
}

TEST(RougeTest, SymmetricF1) {
  for (const RougeCase &c : kCases) {
    const RougeScores a = Rouge(c.candidate, c.reference);
    const RougeScores b = Rouge(c.reference, c.candidate);
    EXPECT_NEAR(a.r1, b.r1, 1e-12);
    EXPECT_NEAR(a.r2, b.r2, 1e-12);
    EXPECT_NEAR(a.rl, b.rl, 1e-12);
  }
}

TEST(RougeTest, EmptyAfterTokenization) {
  try {
    Rouge("--", "a");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyAfterTokenization);
  }
  EXPECT_THROW(Rouge("a", " "), Error);
}

TEST(RougeTest, VariantNames) {
  for (RougeVariant v : {RougeVariant::kR1, RougeVariant::kR2, RougeVariant::kRL}) {
    EXPECT_EQ(ParseRougeVariant(RougeVariantName(v)), v);
  }
  EXPECT_THROW(ParseRougeVariant("r3"), Error);
}

TEST(MaxAvgTest, ClaimEqualToReferenceScoresOne) {
  EXPECT_DOUBLE_EQ(MaxAvgScore({{"c", "x y z"}}, {{"c", {"a b", "x y z"}}}, RougeVariant::kR1),
                   1.0);
}

TEST(MaxAvgTest, AveragesPerClaimMaxima) {
  // Best R-1 is 0.5 for the first claim ("a b" vs "a c") and 1.0 for the second.
  const double s = MaxAvgScore({{"c1", "a b"}, {"c2", "d e"}},
                               {{"c1", {"a c", "z z"}}, {"c2", {"d e"}}}, RougeVariant::kR1);
  EXPECT_NEAR(s, 0.75, 1e-12);
}

TEST(MaxAvgTest, MatchesNaiveDoubleLoopOnFiveCitances) {
  const std::vector<std::pair<std::string, std::string>> generated = {
      {"cit1", "Amoxicillin is prescribed for pneumonia in children."},
      {"cit1", "Pneumonia in children is treated with amoxicillin."},
      {"cit2", "Aspirin reduces IL-6 in asthma."},
      {"cit2", "Aspirin lowers inflammation."},
      {"cit2", "Asthma patients have IL-6."},
      {"cit3", "Influenza raises bronchitis risk in older adults."},
      {"cit4", "No effect was seen in controls."},
      {"cit5", "Ibuprofen relieves cold symptoms."},
      {"cit5", "Paracetamol relieves flu symptoms."},
  };
  const std::map<std::string, std::vector<std::string>> references = {
      {"cit1", {"Amoxicillin treats pneumonia in children.", "Children get amoxicillin."}},
      {"cit2", {"Aspirin reduces IL-6 levels.", "IL-6 is elevated in asthma."}},
      {"cit3", {"Influenza increases the risk of bronchitis."}},
      {"cit4", {"The control group showed no effect.", "No effect in controls."}},
      {"cit5", {"Ibuprofen relieves symptoms of the common cold.", "Paracetamol treats flu."}},
  };
  for (RougeVariant v : {RougeVariant::kR1, RougeVariant::kR2, RougeVariant::kRL}) {
    const double want = oracle::MaxAvg(generated, references,
                                       [v](const std::string &c, const std::string &r) {
                                         return Select(Rouge(c, r), v);
                                       });
    EXPECT_NEAR(MaxAvgScore(generated, references, v), want, 1e-12);
  }
}

TEST(MaxAvgTest, Errors) {
  EXPECT_THROW(MaxAvgScore({}, {}, RougeVariant::kR1), Error);
  try {
    MaxAvgScore({{"c1", "a"}}, {{"c2", {"a"}}}, RougeVariant::kR1);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingReferences);
  }
}

TEST(EvalMetadataTest, NamesEveryVariantDecision) {
  const nlohmann::json m = EvalMetadata(AlphaMetric::kOrdinal);
  EXPECT_EQ(m.at("rouge_variant"), "f1");
  EXPECT_EQ(m.at("alpha_metric"), "ordinal");
  EXPECT_TRUE(m.contains("tokenizer_version"));
  EXPECT_TRUE(EvalMetadata().at("alpha_metric").is_null());
}

}  // namespace
}  // namespace claimkit
