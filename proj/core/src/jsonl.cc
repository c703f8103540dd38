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

#include "claimkit/jsonl.h"

#include <fstream>
#include <sstream>

#include "claimkit/error.h"

namespace claimkit {

void ForEachJsonLine(const std::filesystem::path &path,
                     const std::function<void(const Json &, std::size_t)> &fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open file", path.string());
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const std::string location = path.string() + ":" + std::to_string(line_number);
    Json record;
    try {
      record = Json::parse(line);
    } catch (const Json::exception &e) {
      throw Error(ErrorCode::kMalformedRecord, e.what(), location);
    }
    try {
      fn(record, line_number);
    } catch (const Error &e) {
      if (!e.location().empty()) throw;
      throw Error(e.code(), e.what(), location);
    } catch (const Json::exception &e) {
      throw Error(ErrorCode::kMalformedRecord, e.what(), location);
    }
  }
}

std::vector<Json> ReadJsonLines(const std::filesystem::path &path) {
  std::vector<Json> records;
  ForEachJsonLine(path, [&](const Json &record, std::size_t) {
    records.push_back(record);
  });
  return records;
}

void WriteJsonLine(std::ostream &out, const Json &record) {
  // nlohmann::json objects are std::map backed, so keys come out sorted.
  out << record.dump(-1, ' ', false, Json::error_handler_t::replace) << '\n';
}

void WriteJsonLines(const std::filesystem::path &path,
                    const std::vector<Json> &records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write file", path.string());
  for (const Json &record : records) WriteJsonLine(out, record);
  if (!out) throw Error(ErrorCode::kIo, "write failed", path.string());
}

std::string ReadFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open file", path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace claimkit
