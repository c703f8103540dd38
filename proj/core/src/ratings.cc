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

#include "claimkit/ratings.h"

#include "claimkit/error.h"

namespace claimkit {

std::string_view ProtocolName(Protocol p) {
  return p == Protocol::kQuality ? "quality" : "negation";
}

Protocol ParseProtocol(std::string_view name) {
  if (name == "quality") return Protocol::kQuality;
  if (name == "negation") return Protocol::kNegation;
  throw Error(ErrorCode::kInvalidArgument, "unknown protocol '" + std::string(name) + "'");
}

nlohmann::json EntailmentToJson(Entailment e) {
  if (e == Entailment::kSkip) return "SKIP";
  return static_cast<int>(e);
}

Entailment EntailmentFromJson(const nlohmann::json &j) {
  if (j.is_string() && j.get<std::string>() == "SKIP") return Entailment::kSkip;
  if (j.is_number_integer()) {
    int v = j.get<int>();
    if (v >= 1 && v <= 3) return static_cast<Entailment>(v);
  }
  throw Error(ErrorCode::kGatingViolation, "entailment must be 1, 2, 3 or \"SKIP\"");
}

namespace {

std::optional<int> OptionalInt(const nlohmann::json &j, const char *key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_number_integer()) {
    throw Error(ErrorCode::kMalformedRecord, std::string(key) + " must be an integer");
  }
  return it->get<int>();
}

void PutOptional(nlohmann::json &j, const char *key, const std::optional<int> &v) {
  if (v) j[key] = *v;
}

[[noreturn]] void Violation(const std::string &why) {
  throw Error(ErrorCode::kGatingViolation, why);
}

void CheckRange(const std::optional<int> &v, const char *name, int lo, int hi) {
  if (v && (*v < lo || *v > hi)) {
    Violation(std::string(name) + " must be in [" + std::to_string(lo) + ", " +
              std::to_string(hi) + "]");
  }
}

}  // namespace

void to_json(nlohmann::json &j, const AnnotationRecord &r) {
  j = nlohmann::json{{"annotator", r.annotator},
                     {"task_id", r.task_id},
                     {"protocol", ProtocolName(r.protocol)},
                     {"revision", r.revision}};
  if (!r.timestamp.empty()) j["timestamp"] = r.timestamp;
  PutOptional(j, "fluency", r.fluency);
  PutOptional(j, "decontextualized", r.decontextualized);
  PutOptional(j, "atomicity", r.atomicity);
  PutOptional(j, "faithfulness", r.faithfulness);
  if (!r.entailment.empty()) {
    nlohmann::json e = nlohmann::json::object();
    for (const auto &[slot, rating] : r.entailment) e[slot] = EntailmentToJson(rating);
    j["entailment"] = std::move(e);
  }
}

void from_json(const nlohmann::json &j, AnnotationRecord &r) {
  if (!j.is_object()) throw Error(ErrorCode::kMalformedRecord, "rating must be an object");
  r = {};
  r.annotator = j.at("annotator").get<std::string>();
  r.task_id = j.at("task_id").get<std::string>();
  r.protocol = ParseProtocol(j.at("protocol").get<std::string>());
  r.fluency = OptionalInt(j, "fluency");
  r.decontextualized = OptionalInt(j, "decontextualized");
  r.atomicity = OptionalInt(j, "atomicity");
  r.faithfulness = OptionalInt(j, "faithfulness");
  if (auto it = j.find("entailment"); it != j.end() && !it->is_null()) {
    if (!it->is_object()) {
      throw Error(ErrorCode::kMalformedRecord, "entailment must map slot to rating");
    }
    for (const auto &[slot, value] : it->items()) {
      r.entailment[slot] = EntailmentFromJson(value);
    }
  }
  r.timestamp = j.value("timestamp", std::string());
  if (auto it = j.find("revision"); it != j.end() && !it->is_null()) {
    r.revision = it->get<int64_t>();
  }
}

void ValidateGating(const AnnotationRecord &rec) {
  if (rec.annotator.empty()) Violation("annotator is empty");
  if (rec.task_id.empty()) Violation("task_id is empty");
  if (rec.protocol == Protocol::kNegation) {
    if (rec.fluency || rec.decontextualized || rec.atomicity || rec.faithfulness) {
      Violation("negation ratings carry only entailment");
    }
    if (rec.entailment.empty()) Violation("negation rating needs entailment");
    return;
  }
  if (!rec.entailment.empty()) Violation("quality ratings carry no entailment");
  if (!rec.fluency) Violation("fluency is required");
  CheckRange(rec.fluency, "fluency", 1, 3);
  CheckRange(rec.decontextualized, "decontextualized", 0, 1);
  CheckRange(rec.atomicity, "atomicity", 0, 1);
  CheckRange(rec.faithfulness, "faithfulness", 1, 5);

  const bool legible = *rec.fluency > 1;
  if (rec.decontextualized.has_value() != legible) {
    Violation(legible ? "decontextualized is required when fluency > 1"
                      : "decontextualized must be absent when fluency = 1");
  }
  const bool meaningful = legible && *rec.decontextualized == 1;
  if (rec.atomicity.has_value() != meaningful || rec.faithfulness.has_value() != meaningful) {
    Violation(meaningful
                  ? "atomicity and faithfulness are required when decontextualized = 1"
                  : "atomicity and faithfulness must be absent unless fluency > 1 and "
                    "decontextualized = 1");
  }
}

bool AcceptabilityRule(int fluency, int decontextualized, int atomicity, int faithfulness) {
  return fluency > 1 && decontextualized == 1 && atomicity == 1 && faithfulness > 3;
}

bool Acceptable(const AnnotationRecord &rec) {
  if (rec.protocol != Protocol::kQuality) Violation("acceptability needs a quality rating");
  ValidateGating(rec);
  if (!rec.atomicity) return false;
  return AcceptabilityRule(*rec.fluency, *rec.decontextualized, *rec.atomicity,
                           *rec.faithfulness);
}

AnnotationRecord GatedQualityRecord(int fluency, int decontextualized, int atomicity,
                                    int faithfulness) {
  AnnotationRecord rec;
  rec.annotator = "gate";
  rec.task_id = "gate";
  rec.protocol = Protocol::kQuality;
  rec.fluency = fluency;
  if (fluency > 1) {
    rec.decontextualized = decontextualized;
    if (decontextualized == 1) {
      rec.atomicity = atomicity;
      rec.faithfulness = faithfulness;
    }
  }
  return rec;
}

}  // namespace claimkit
