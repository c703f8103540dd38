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

#ifndef CLAIMKIT_JSONL_H_
#define CLAIMKIT_JSONL_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace claimkit {

using Json = nlohmann::json;

// Calls fn(record, line_number) for every non-blank line. Parse failures and
// exceptions thrown by fn that are not claimkit::Error are reported as
// MalformedRecord with a "path:line" location.
void ForEachJsonLine(const std::filesystem::path &path,
                     const std::function<void(const Json &, std::size_t)> &fn);

std::vector<Json> ReadJsonLines(const std::filesystem::path &path);

// Compact, key-sorted, one object per line, LF-terminated.
void WriteJsonLine(std::ostream &out, const Json &record);
void WriteJsonLines(const std::filesystem::path &path,
                    const std::vector<Json> &records);

std::string ReadFile(const std::filesystem::path &path);

}  // namespace claimkit

#endif  // CLAIMKIT_JSONL_H_
