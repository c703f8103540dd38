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

#ifndef CLAIMKIT_KB_H_
#define CLAIMKIT_KB_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace claimkit {

using CuiSet = std::set<std::string, std::less<>>;

// A node of the concept knowledge base.
struct Concept {
  std::string cui;
  std::string name;
  // Deduplicated case-insensitively at load, first spelling wins.
  std::vector<std::string> aliases;
  std::vector<std::string> types;
  std::vector<std::string> parents;

  // Canonical name followed by every alias that does not normalize to it.
  std::vector<std::string> Surfaces() const;

  friend bool operator==(const Concept &, const Concept &) = default;
};

void to_json(nlohmann::json &j, const Concept &c);
void from_json(const nlohmann::json &j, Concept &c);

// How two concepts are judged to have "the same semantic type".
enum class TypeMatch {
  kIntersect,  // share at least one type code
  kExact,      // identical type sets
};

struct KbLoadReport {
  std::size_t concepts = 0;
  std::size_t aliases_dropped = 0;
  // (child cui, missing parent cui), sorted.
  std::vector<std::pair<std::string, std::string>> dangling_parents;
};

class KnowledgeBase {
 public:
  KnowledgeBase() = default;

  // One JSON concept per line. Throws MalformedRecord (with line number) or
  // DuplicateCui.
  static KnowledgeBase Load(const std::filesystem::path &path,
                            KbLoadReport *report = nullptr);
  static KnowledgeBase FromConcepts(std::vector<Concept> concepts,
                                    KbLoadReport *report = nullptr);

  std::size_t size() const { return concepts_.size(); }
  bool Contains(std::string_view cui) const;

  // Throws UnknownCui.
  const Concept &Get(std::string_view cui) const;
  const Concept *Find(std::string_view cui) const;

  const std::map<std::string, Concept, std::less<>> &concepts() const {
    return concepts_;
  }
  const CuiSet &Children(std::string_view cui) const;

  // Normalized alias -> cuis. Covers canonical names and aliases.
  const std::map<std::string, CuiSet, std::less<>> &alias_index() const {
    return alias_index_;
  }
  // Normalizes `surface` and looks it up; empty when unknown.
  const CuiSet &LookupAlias(std::string_view surface) const;

  // All v != u sharing at least one parent with u.
  CuiSet Siblings(std::string_view cui) const;

  // Members of `candidates` whose types match those of `cui`.
  CuiSet FilterSameType(std::string_view cui, const CuiSet &candidates,
                        TypeMatch match = TypeMatch::kIntersect) const;
  bool SameType(const Concept &a, const Concept &b, TypeMatch match) const;

  // Writes the concept file format back out, one concept per line in cui
  // order.
  void Write(std::ostream &out) const;

 private:
  void Index(KbLoadReport *report);

  std::map<std::string, Concept, std::less<>> concepts_;
  std::map<std::string, CuiSet, std::less<>> child_index_;
  std::map<std::string, CuiSet, std::less<>> alias_index_;
};

}  // namespace claimkit

#endif  // CLAIMKIT_KB_H_
