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

#ifndef CLAIMKIT_ANNOTATION_H_
#define CLAIMKIT_ANNOTATION_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "claimkit/http.h"
#include "claimkit/ratings.h"

namespace claimkit {

struct NegationOption {
  std::string method;
  std::string text;
};

struct AnnotationTask {
  std::string task_id;
  Protocol protocol = Protocol::kQuality;
  std::string claim_id;
  // Quality payload.
  std::string claim;
  std::string citance;
  std::string context_before;
  std::string context_after;
  std::string method;
  // Negation payload. Method names never leave the service before export.
  std::string original_claim;
  std::vector<NegationOption> negations;
};

void from_json(const nlohmann::json &j, AnnotationTask &t);
void to_json(nlohmann::json &j, const AnnotationTask &t);

// "A", "B", ..., "Z", "AA", ...
std::string SlotLabel(std::size_t index);

// Order in which a negation task's methods are shown to one annotator:
// element i is the index into AnnotationTask::negations shown in slot i.
// Fisher-Yates driven by SeededRng seeded with
//   StableHash({claim_id, annotator, protocol name, decimal seed}).
std::vector<std::size_t> SlotPermutation(std::string_view claim_id, std::string_view annotator,
                                         Protocol protocol, uint64_t seed, std::size_t n);

// Append-only rating log. Every accepted record is written as one JSON line
// and fsync'ed before Append returns. The in-memory view keeps the latest
// revision per (annotator, task).
class AnnotationStore {
 public:
  using Key = std::pair<std::string, std::string>;  // (annotator, task_id)

  // Opens (creating if needed) and replays the log.
  explicit AnnotationStore(std::filesystem::path log_path);
  ~AnnotationStore();

  AnnotationStore(const AnnotationStore &) = delete;
  AnnotationStore &operator=(const AnnotationStore &) = delete;

  // rec.revision == 0 takes the next revision; any other value must equal it
  // or StaleRevision is thrown. Returns the stored revision.
  int64_t Append(AnnotationRecord rec);

  std::optional<AnnotationRecord> Latest(const std::string &annotator,
                                         const std::string &task_id) const;
  std::map<Key, AnnotationRecord> LatestAll() const;
  std::size_t history_size() const;

  // Latest-revision view rebuilt from a log file.
  static std::map<Key, AnnotationRecord> Replay(const std::filesystem::path &log_path);

  const std::filesystem::path &log_path() const { return log_path_; }

 private:
  std::filesystem::path log_path_;
  int fd_ = -1;
  mutable std::shared_mutex mu_;
  std::map<Key, AnnotationRecord> latest_;
  std::size_t history_ = 0;
};

// Administers the claim-quality and negation-entailment protocols.
class AnnotationService {
 public:
  AnnotationService(std::vector<AnnotationTask> tasks, std::set<std::string> annotators,
                    const std::filesystem::path &data_dir, uint64_t seed);

  static std::vector<AnnotationTask> LoadTasks(const std::filesystem::path &path);

  // Blinded task view for the annotator's lowest-indexed open task of the
  // protocol; nullopt when none is left. Throws UnknownAnnotator.
  std::optional<nlohmann::json> NextTask(const std::string &annotator, Protocol protocol) const;

  // Throws UnknownAnnotator, UnknownTask, GatingViolation, StaleRevision.
  int64_t Submit(AnnotationRecord rec);

  nlohmann::json Progress(const std::string &annotator) const;

  // Latest-revision ratings with methods unblinded, in task order then
  // annotator order, plus rater x item matrices per criterion.
  nlohmann::json Export(Protocol protocol) const;

  HttpResponse Handle(const HttpRequest &request);

  // Method names in the slot order `annotator` sees for `task_id`.
  std::vector<std::string> SlotMethods(const std::string &task_id,
                                       const std::string &annotator) const;

  const AnnotationStore &store() const { return store_; }

 private:
  const AnnotationTask &Task(const std::string &task_id) const;
  void CheckAnnotator(const std::string &annotator) const;
  nlohmann::json BlindedView(std::size_t index, const std::string &annotator) const;

  std::vector<AnnotationTask> tasks_;
  std::map<std::string, std::size_t> task_index_;
  std::set<std::string> annotators_;
  uint64_t seed_;
  AnnotationStore store_;
};

}  // namespace claimkit

#endif  // CLAIMKIT_ANNOTATION_H_
