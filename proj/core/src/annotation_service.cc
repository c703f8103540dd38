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
#include <chrono>
#include <cstdio>
#include <ctime>
#include <numeric>

#include "claimkit/annotation.h"
#include "claimkit/error.h"
#include "claimkit/evalkit.h"
#include "claimkit/hash.h"
#include "claimkit/jsonl.h"

namespace claimkit {

void from_json(const nlohmann::json &j, AnnotationTask &t) {
  t = {};
  t.task_id = j.at("task_id").get<std::string>();
  t.protocol = ParseProtocol(j.at("protocol").get<std::string>());
  t.claim_id = j.value("claim_id", t.task_id);
  if (t.protocol == Protocol::kQuality) {
    t.claim = j.at("claim").get<std::string>();
    t.citance = j.value("citance", std::string());
    t.context_before = j.value("context_before", std::string());
    t.context_after = j.value("context_after", std::string());
    t.method = j.value("method", std::string());
  } else {
    t.original_claim = j.at("original_claim").get<std::string>();
    for (const auto &n : j.at("negations")) {
      t.negations.push_back({n.at("method").get<std::string>(), n.at("text").get<std::string>()});
    }
    if (t.negations.empty()) {
      throw Error(ErrorCode::kMalformedRecord, "negation task " + t.task_id + " has no options");
    }
  }
}

void to_json(nlohmann::json &j, const AnnotationTask &t) {
  j = nlohmann::json{{"task_id", t.task_id},
                     {"protocol", ProtocolName(t.protocol)},
                     {"claim_id", t.claim_id}};
  if (t.protocol == Protocol::kQuality) {
    j["claim"] = t.claim;
    j["citance"] = t.citance;
    j["context_before"] = t.context_before;
    j["context_after"] = t.context_after;
    j["method"] = t.method;
  } else {
    j["original_claim"] = t.original_claim;
    j["negations"] = nlohmann::json::array();
    for (const NegationOption &n : t.negations) {
      j["negations"].push_back({{"method", n.method}, {"text", n.text}});
    }
  }
}

std::string SlotLabel(std::size_t index) {
  std::string label;
  ++index;
  while (index > 0) {
    --index;
    label.insert(label.begin(), static_cast<char>('A' + index % 26));
    index /= 26;
  }
  return label;
}

std::vector<std::size_t> SlotPermutation(std::string_view claim_id, std::string_view annotator,
                                         Protocol protocol, uint64_t seed, std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  const std::string seed_text = std::to_string(seed);
  SeededRng rng(StableHash({claim_id, annotator, ProtocolName(protocol), seed_text}));
  for (std::size_t i = n; i > 1; --i) {
    std::swap(perm[i - 1], perm[rng.UniformIndex(i)]);
  }
  return perm;
}

namespace {

std::string UtcTimestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json OptionalJson(const std::optional<int> &v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

int StatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kGatingViolation: return 422;
    case ErrorCode::kUnknownTask:
    case ErrorCode::kUnknownAnnotator: return 404;
    case ErrorCode::kStaleRevision: return 409;
    case ErrorCode::kMalformedRecord:
    case ErrorCode::kInvalidArgument: return 400;
    default: return 500;
  }
}

std::string QueryParam(const HttpRequest &request, const std::string &key) {
  auto it = request.query.find(key);
  if (it == request.query.end() || it->second.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "missing query parameter '" + key + "'");
  }
  return it->second;
}

}  // namespace

AnnotationService::AnnotationService(std::vector<AnnotationTask> tasks,
                                     std::set<std::string> annotators,
                                     const std::filesystem::path &data_dir, uint64_t seed)
    : tasks_(std::move(tasks)),
      annotators_(std::move(annotators)),
      seed_(seed),
      store_(data_dir / "ratings.jsonl") {
  for (std::size_t i = 0; i < tasks_.size(); ++i) {
    if (!task_index_.emplace(tasks_[i].task_id, i).second) {
      throw Error(ErrorCode::kMalformedRecord, "duplicate task id " + tasks_[i].task_id);
    }
  }
}

std::vector<AnnotationTask> AnnotationService::LoadTasks(const std::filesystem::path &path) {
  std::vector<AnnotationTask> tasks;
  ForEachJsonLine(path, [&](const Json &j, std::size_t) {
    tasks.push_back(j.get<AnnotationTask>());
  });
  return tasks;
}

const AnnotationTask &AnnotationService::Task(const std::string &task_id) const {
  auto it = task_index_.find(task_id);
  if (it == task_index_.end()) throw Error(ErrorCode::kUnknownTask, task_id);
  return tasks_[it->second];
}

void AnnotationService::CheckAnnotator(const std::string &annotator) const {
  if (!annotators_.contains(annotator)) throw Error(ErrorCode::kUnknownAnnotator, annotator);
}

std::vector<std::string> AnnotationService::SlotMethods(const std::string &task_id,
                                                        const std::string &annotator) const {
  const AnnotationTask &task = Task(task_id);
  std::vector<std::string> methods;
  for (std::size_t i : SlotPermutation(task.claim_id, annotator, task.protocol, seed_,
                                       task.negations.size())) {
    methods.push_back(task.negations[i].method);
  }
  return methods;
}

nlohmann::json AnnotationService::BlindedView(std::size_t index,
                                              const std::string &annotator) const {
  const AnnotationTask &task = tasks_[index];
  nlohmann::json view{{"task_id", task.task_id},
                      {"protocol", ProtocolName(task.protocol)},
                      {"index", index}};
  if (task.protocol == Protocol::kQuality) {
    view["payload"] = {{"claim", task.claim},
                       {"citance", task.citance},
                       {"context_before", task.context_before},
                       {"context_after", task.context_after}};
  } else {
    nlohmann::json slots = nlohmann::json::array();
    std::vector<std::size_t> perm = SlotPermutation(task.claim_id, annotator, task.protocol,
                                                    seed_, task.negations.size());
    for (std::size_t s = 0; s < perm.size(); ++s) {
      slots.push_back({{"slot", SlotLabel(s)}, {"text", task.negations[perm[s]].text}});
    }
    view["payload"] = {{"original_claim", task.original_claim}, {"negations", slots}};
  }
  if (auto latest = store_.Latest(annotator, task.task_id)) {
    view["revision"] = latest->revision;
  } else {
    view["revision"] = 0;
  }
  return view;
}

std::optional<nlohmann::json> AnnotationService::NextTask(const std::string &annotator,
                                                          Protocol protocol) const {
  CheckAnnotator(annotator);
  for (std::size_t i = 0; i < tasks_.size(); ++i) {
    if (tasks_[i].protocol != protocol) continue;
    if (store_.Latest(annotator, tasks_[i].task_id)) continue;
    return BlindedView(i, annotator);
  }
  return std::nullopt;
}

int64_t AnnotationService::Submit(AnnotationRecord rec) {
  CheckAnnotator(rec.annotator);
  const AnnotationTask &task = Task(rec.task_id);
  if (rec.protocol != task.protocol) {
    throw Error(ErrorCode::kGatingViolation,
                "task " + task.task_id + " uses the " + std::string(ProtocolName(task.protocol)) +
                    " protocol");
  }
  ValidateGating(rec);
  if (task.protocol == Protocol::kNegation) {
    if (rec.entailment.size() != task.negations.size()) {
      throw Error(ErrorCode::kGatingViolation, "every slot needs exactly one rating");
    }
    for (std::size_t s = 0; s < task.negations.size(); ++s) {
      if (!rec.entailment.contains(SlotLabel(s))) {
        throw Error(ErrorCode::kGatingViolation, "missing rating for slot " + SlotLabel(s));
      }
    }
  }
  rec.timestamp = UtcTimestamp();
  return store_.Append(std::move(rec));
}

nlohmann::json AnnotationService::Progress(const std::string &annotator) const {
  CheckAnnotator(annotator);
  nlohmann::json out{{"annotator", annotator}};
  for (Protocol p : {Protocol::kQuality, Protocol::kNegation}) {
    std::size_t total = 0, completed = 0;
    for (const AnnotationTask &t : tasks_) {
      if (t.protocol != p) continue;
      ++total;
      if (store_.Latest(annotator, t.task_id)) ++completed;
    }
    out[std::string(ProtocolName(p))] = {
        {"total", total}, {"completed", completed}, {"remaining", total - completed}};
  }
  return out;
}

nlohmann::json AnnotationService::Export(Protocol protocol) const {
  const std::map<AnnotationStore::Key, AnnotationRecord> latest = store_.LatestAll();

  // Latest record per (task index, annotator), in that order.
  std::map<std::pair<std::size_t, std::string>, const AnnotationRecord *> ordered;
  std::set<std::string> raters;
  for (const auto &[key, rec] : latest) {
    auto it = task_index_.find(rec.task_id);
    if (it == task_index_.end() || tasks_[it->second].protocol != protocol) continue;
    ValidateGating(rec);
    ordered[{it->second, rec.annotator}] = &rec;
    raters.insert(rec.annotator);
  }
  const std::vector<std::string> rater_list(raters.begin(), raters.end());
  auto rater_row = [&](const std::string &a) {
    return static_cast<std::size_t>(
        std::lower_bound(rater_list.begin(), rater_list.end(), a) - rater_list.begin());
  };

  nlohmann::json rows = nlohmann::json::array();
  std::vector<std::string> items;
  std::map<std::string, std::size_t> item_column;
  auto column = [&](const std::string &item) {
    auto [it, inserted] = item_column.emplace(item, items.size());
    if (inserted) items.push_back(item);
    return it->second;
  };

  std::map<std::string, std::vector<std::vector<nlohmann::json>>> cells;
  auto put = [&](const std::string &criterion, std::size_t row, std::size_t col,
                 nlohmann::json value) {
    auto &m = cells[criterion];
    if (m.size() < rater_list.size()) m.resize(rater_list.size());
    if (m[row].size() <= col) m[row].resize(col + 1, nullptr);
    m[row][col] = std::move(value);
  };

  for (const auto &[pos, rec] : ordered) {
    const AnnotationTask &task = tasks_[pos.first];
    const std::size_t r = rater_row(rec->annotator);
    nlohmann::json row{{"annotator", rec->annotator},
                       {"task_id", rec->task_id},
                       {"claim_id", task.claim_id},
                       {"revision", rec->revision}};
    if (protocol == Protocol::kQuality) {
      const std::size_t c = column(task.task_id);
      row["method"] = task.method;
      row["fluency"] = OptionalJson(rec->fluency);
      row["decontextualized"] = OptionalJson(rec->decontextualized);
      row["atomicity"] = OptionalJson(rec->atomicity);
      row["faithfulness"] = OptionalJson(rec->faithfulness);
      row["acceptable"] = Acceptable(*rec);
      put("fluency", r, c, OptionalJson(rec->fluency));
      put("decontextualized", r, c, OptionalJson(rec->decontextualized));
      put("atomicity", r, c, OptionalJson(rec->atomicity));
      put("faithfulness", r, c, OptionalJson(rec->faithfulness));
    } else {
      const std::vector<std::string> methods = SlotMethods(task.task_id, rec->annotator);
      nlohmann::json ratings = nlohmann::json::array();
      for (std::size_t s = 0; s < methods.size(); ++s) {
        const std::string slot = SlotLabel(s);
        const Entailment e = rec->entailment.at(slot);
        ratings.push_back(
            {{"slot", slot}, {"method", methods[s]}, {"entailment", EntailmentToJson(e)}});
        // SKIP is its own nominal category, coded 0.
        put("entailment", r, column(task.task_id + "/" + methods[s]), static_cast<int>(e));
      }
      row["ratings"] = std::move(ratings);
    }
    rows.push_back(std::move(row));
  }

  nlohmann::json matrices = nlohmann::json::object();
  for (auto &[criterion, m] : cells) {
    nlohmann::json rows_json = nlohmann::json::array();
    for (auto &cells_row : m) {
      cells_row.resize(items.size(), nullptr);
      rows_json.push_back(cells_row);
    }
    matrices[criterion] = std::move(rows_json);
  }
  return {{"protocol", ProtocolName(protocol)},
          {"annotators", rater_list},
          {"items", items},
          {"rows", rows},
          {"matrices", matrices},
          {"metadata", EvalMetadata()}};
}

HttpResponse AnnotationService::Handle(const HttpRequest &request) {
  try {
    if (request.path == "/v1/tasks/next" && request.method == "GET") {
      auto task = NextTask(QueryParam(request, "annotator"),
                           ParseProtocol(QueryParam(request, "protocol")));
      nlohmann::json body = task ? nlohmann::json{{"done", false}, {"task", *task}}
                                 : nlohmann::json{{"done", true}};
      return {200, body.dump()};
    }
    if (request.path == "/v1/ratings" && request.method == "POST") {
      AnnotationRecord rec;
      try {
        rec = nlohmann::json::parse(request.body).get<AnnotationRecord>();
      } catch (const nlohmann::json::exception &e) {
        return JsonError(400, "MalformedRecord", e.what());
      }
      const int64_t revision = Submit(rec);
      return {200, nlohmann::json{{"task_id", rec.task_id},
                                  {"annotator", rec.annotator},
                                  {"revision", revision}}
                       .dump()};
    }
    if (request.path == "/v1/progress" && request.method == "GET") {
      return {200, Progress(QueryParam(request, "annotator")).dump()};
    }
    if (request.path == "/v1/export" && request.method == "GET") {
      return {200, Export(ParseProtocol(QueryParam(request, "protocol"))).dump()};
    }
  } catch (const Error &e) {
    return JsonError(StatusFor(e.code()), ErrorCodeName(e.code()), e.what());
  }
  return JsonError(404, "NotFound", request.path);
}

}  // namespace claimkit
