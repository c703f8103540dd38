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

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "claimkit/annotation.h"
#include "claimkit/error.h"
#include "claimkit/jsonl.h"

namespace claimkit {

namespace {

void ApplyRecord(std::map<AnnotationStore::Key, AnnotationRecord> &latest,
                 AnnotationRecord rec) {
  AnnotationStore::Key key{rec.annotator, rec.task_id};
  auto it = latest.find(key);
  if (it == latest.end() || it->second.revision < rec.revision) {
    latest[key] = std::move(rec);
  }
}

}  // namespace

std::map<AnnotationStore::Key, AnnotationRecord> AnnotationStore::Replay(
    const std::filesystem::path &log_path) {
  std::map<Key, AnnotationRecord> latest;
  if (!std::filesystem::exists(log_path)) return latest;
  ForEachJsonLine(log_path, [&](const Json &j, std::size_t) {
    AnnotationRecord rec = j.get<AnnotationRecord>();
    ValidateGating(rec);
    ApplyRecord(latest, std::move(rec));
  });
  return latest;
}

AnnotationStore::AnnotationStore(std::filesystem::path log_path)
    : log_path_(std::move(log_path)) {
  if (log_path_.has_parent_path()) std::filesystem::create_directories(log_path_.parent_path());
  if (std::filesystem::exists(log_path_)) {
    ForEachJsonLine(log_path_, [&](const Json &j, std::size_t) {
      AnnotationRecord rec = j.get<AnnotationRecord>();
      ValidateGating(rec);
      ApplyRecord(latest_, std::move(rec));
      ++history_;
    });
  }
  fd_ = ::open(log_path_.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd_ < 0) {
    throw Error(ErrorCode::kIo, std::strerror(errno), log_path_.string());
  }
}

AnnotationStore::~AnnotationStore() {
  if (fd_ >= 0) ::close(fd_);
}

int64_t AnnotationStore::Append(AnnotationRecord rec) {
  std::unique_lock lock(mu_);
  Key key{rec.annotator, rec.task_id};
  auto it = latest_.find(key);
  const int64_t current = it == latest_.end() ? 0 : it->second.revision;
  if (rec.revision == 0) {
    rec.revision = current + 1;
  } else if (rec.revision != current + 1) {
    throw Error(ErrorCode::kStaleRevision,
                "revision " + std::to_string(rec.revision) + " submitted, current is " +
                    std::to_string(current));
  }

  std::string line = nlohmann::json(rec).dump() + "\n";
  const char *data = line.data();
  std::size_t left = line.size();
  while (left > 0) {
    ssize_t n = ::write(fd_, data, left);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error(ErrorCode::kIo, std::strerror(errno), log_path_.string());
    }
    data += n;
    left -= static_cast<std::size_t>(n);
  }
  if (::fsync(fd_) != 0) {
    throw Error(ErrorCode::kIo, std::strerror(errno), log_path_.string());
  }

  const int64_t revision = rec.revision;
  latest_[key] = std::move(rec);
  ++history_;
  return revision;
}

std::optional<AnnotationRecord> AnnotationStore::Latest(const std::string &annotator,
                                                        const std::string &task_id) const {
  std::shared_lock lock(mu_);
  auto it = latest_.find({annotator, task_id});
  if (it == latest_.end()) return std::nullopt;
  return it->second;
}

std::map<AnnotationStore::Key, AnnotationRecord> AnnotationStore::LatestAll() const {
  std::shared_lock lock(mu_);
  return latest_;
}

std::size_t AnnotationStore::history_size() const {
  std::shared_lock lock(mu_);
  return history_;
}

}  // namespace claimkit
