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

#ifndef CLAIMKIT_VECTORS_H_
#define CLAIMKIT_VECTORS_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "claimkit/kb.h"

namespace claimkit {

// Concept embeddings keyed by cui. Coverage of the knowledge base is
// partial; absent cuis are normal.
class VectorTable {
 public:
  explicit VectorTable(std::size_t dim = 0) : dim_(dim) {}

  // CSV with header "cui,d1,...,dK". Throws MalformedRecord on a bad row,
  // DuplicateCui on a repeated cui.
  static VectorTable Load(const std::filesystem::path &path);

  // Throws InvalidArgument on a length mismatch or a non-finite component,
  // DuplicateCui on a repeated cui.
  void Add(std::string cui, std::vector<double> values);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return entries_.size(); }
  const std::vector<double> *Find(std::string_view cui) const;
  const std::map<std::string, std::vector<double>, std::less<>> &entries() const {
    return entries_;
  }

  void Write(std::ostream &out) const;

 private:
  std::size_t dim_;
  std::map<std::string, std::vector<double>, std::less<>> entries_;
};

// 1 - cos(a, b), clamped to [0, 2]. Throws ZeroVector if either norm is zero
// (the message names `a_name` or `b_name`).
double CosineDistance(std::span<const double> a, std::span<const double> b,
                      std::string_view a_name = "a",
                      std::string_view b_name = "b");

struct Neighbor {
  std::string cui;
  double distance;

  friend bool operator==(const Neighbor &, const Neighbor &) = default;
};

// Ranks the members of `pool` that have vectors by cosine distance to `cui`,
// ascending, ties by cui, and keeps at most n. Throws MissingVector if `cui`
// has no vector, ZeroVector on a zero-norm vector, InvalidArgument if n == 0.
std::vector<Neighbor> NearestConcepts(const VectorTable &table,
                                      std::string_view cui, const CuiSet &pool,
                                      std::size_t n);

}  // namespace claimkit

#endif  // CLAIMKIT_VECTORS_H_
