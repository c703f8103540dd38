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

#include "claimkit/vectors.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>

#include "claimkit/error.h"

namespace claimkit {

namespace {

std::vector<std::string_view> SplitCsv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double ParseDouble(std::string_view field) {
  field = Trim(field);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw Error(ErrorCode::kMalformedRecord,
                "not a number: '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

VectorTable VectorTable::Load(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open file", path.string());
  std::string line;
  std::size_t line_number = 0;
  auto where = [&] { return path.string() + ":" + std::to_string(line_number); };

  if (!std::getline(in, line)) {
    throw Error(ErrorCode::kMalformedRecord, "missing header", path.string() + ":1");
  }
  ++line_number;
  std::vector<std::string_view> header = SplitCsv(Trim(line));
  if (header.size() < 2 || Trim(header[0]) != "cui") {
    throw Error(ErrorCode::kMalformedRecord, "header must be cui,d1,...,dK", where());
  }
  VectorTable table(header.size() - 1);

  while (std::getline(in, line)) {
    ++line_number;
    std::string_view row = Trim(line);
    if (row.empty()) continue;
    std::vector<std::string_view> fields = SplitCsv(row);
    if (fields.size() != header.size()) {
      throw Error(ErrorCode::kMalformedRecord,
                  "expected " + std::to_string(header.size()) + " fields, got " +
                      std::to_string(fields.size()),
                  where());
    }
    std::vector<double> values;
    values.reserve(table.dim_);
    try {
      for (std::size_t i = 1; i < fields.size(); ++i) {
        values.push_back(ParseDouble(fields[i]));
      }
      std::string cui(Trim(fields[0]));
      if (cui.empty()) throw Error(ErrorCode::kMalformedRecord, "empty cui");
      table.Add(std::move(cui), std::move(values));
    } catch (const Error &e) {
      ErrorCode code = e.code() == ErrorCode::kInvalidArgument
                           ? ErrorCode::kMalformedRecord
                           : e.code();
      throw Error(code, e.what(), where());
    }
  }
  return table;
}

void VectorTable::Add(std::string cui, std::vector<double> values) {
  if (dim_ == 0) dim_ = values.size();
  if (values.size() != dim_ || dim_ == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "vector for " + cui + " has length " +
                    std::to_string(values.size()) + ", table dim is " +
                    std::to_string(dim_));
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument, "non-finite component for " + cui);
    }
  }
  std::string key = cui;
  if (!entries_.emplace(std::move(key), std::move(values)).second) {
    throw Error(ErrorCode::kDuplicateCui, cui);
  }
}

const std::vector<double> *VectorTable::Find(std::string_view cui) const {
  auto it = entries_.find(cui);
  return it == entries_.end() ? nullptr : &it->second;
}

void VectorTable::Write(std::ostream &out) const {
  out << "cui";
  for (std::size_t i = 1; i <= dim_; ++i) out << ",d" << i;
  out << '\n';
  out << std::setprecision(17);
  for (const auto &[cui, values] : entries_) {
    out << cui;
    for (double v : values) out << ',' << v;
    out << '\n';
  }
}

double CosineDistance(std::span<const double> a, std::span<const double> b,
                      std::string_view a_name, std::string_view b_name) {
  double dot = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  if (aa == 0.0) throw Error(ErrorCode::kZeroVector, std::string(a_name));
  if (bb == 0.0) throw Error(ErrorCode::kZeroVector, std::string(b_name));
  double distance = 1.0 - dot / (std::sqrt(aa) * std::sqrt(bb));
  return std::clamp(distance, 0.0, 2.0);
}

std::vector<Neighbor> NearestConcepts(const VectorTable &table,
                                      std::string_view cui, const CuiSet &pool,
                                      std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "n must be >= 1");
  const std::vector<double> *query = table.Find(cui);
  if (query == nullptr) throw Error(ErrorCode::kMissingVector, std::string(cui));

  std::vector<Neighbor> ranked;
  ranked.reserve(pool.size());
  for (const std::string &candidate : pool) {
    const std::vector<double> *v = table.Find(candidate);
    if (v == nullptr) continue;
    ranked.push_back({candidate, CosineDistance(*query, *v, cui, candidate)});
  }
  auto by_distance = [](const Neighbor &x, const Neighbor &y) {
    if (x.distance != y.distance) return x.distance < y.distance;
    return x.cui < y.cui;
  };
  const std::size_t keep = std::min(n, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + keep, ranked.end(),
                    by_distance);
  ranked.resize(keep);
  return ranked;
}

}  // namespace claimkit
