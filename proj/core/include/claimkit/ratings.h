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

#ifndef CLAIMKIT_RATINGS_H_
#define CLAIMKIT_RATINGS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace claimkit {

enum class Protocol { kQuality, kNegation };

std::string_view ProtocolName(Protocol p);
Protocol ParseProtocol(std::string_view name);

// Negation entailment scale: 3 = definitely false given the premise,
// 2 = might be true, 1 = definitely true, SKIP = not understandable.
enum class Entailment { kDefinitelyTrue = 1, kMightBeTrue = 2, kDefinitelyFalse = 3, kSkip = 0 };

nlohmann::json EntailmentToJson(Entailment e);
Entailment EntailmentFromJson(const nlohmann::json &j);

// One rater's judgments for one task.
//
// Quality protocol gating:
//   decontextualized present  iff  fluency > 1
//   atomicity, faithfulness   iff  fluency > 1 and decontextualized == 1
// Negation protocol: only `entailment` is present, one rating per slot.
struct AnnotationRecord {
  std::string annotator;
  std::string task_id;
  Protocol protocol = Protocol::kQuality;

  std::optional<int> fluency;           // 1..3
  std::optional<int> decontextualized;  // 0/1
  std::optional<int> atomicity;         // 0/1
  std::optional<int> faithfulness;      // 1..5

  // Blinded slot -> rating.
  std::map<std::string, Entailment> entailment;

  std::string timestamp;
  int64_t revision = 0;

  friend bool operator==(const AnnotationRecord &, const AnnotationRecord &) = default;
};

void to_json(nlohmann::json &j, const AnnotationRecord &r);
// Null fields count as absent. Throws MalformedRecord on wrong types.
void from_json(const nlohmann::json &j, AnnotationRecord &r);

// Throws GatingViolation naming the first broken rule.
void ValidateGating(const AnnotationRecord &rec);

// Fluency > 1 AND De-Contextualized = 1 AND Atomicity = 1 AND Faithfulness > 3,
// over a complete rating tuple.
bool AcceptabilityRule(int fluency, int decontextualized, int atomicity, int faithfulness);

// Acceptability of a gated quality record; criteria the gate left out count
// as failed. Throws GatingViolation.
bool Acceptable(const AnnotationRecord &rec);

// Drops the fields the gate would not have collected from a complete tuple.
AnnotationRecord GatedQualityRecord(int fluency, int decontextualized, int atomicity,
                                    int faithfulness);

}  // namespace claimkit

#endif  // CLAIMKIT_RATINGS_H_
