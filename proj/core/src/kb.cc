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

#include "claimkit/kb.h"

#include <algorithm>
#include <fstream>

#include "claimkit/error.h"
#include "claimkit/jsonl.h"
#include "claimkit/text.h"

namespace claimkit {

namespace {

const CuiSet &EmptySet() {
  static const CuiSet empty;
  return empty;
}

std::vector<std::string> StringList(const nlohmann::json &j, const char *key) {
  std::vector<std::string> out;
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return out;
  if (!it->is_array()) {
    throw Error(ErrorCode::kMalformedRecord,
                std::string("field '") + key + "' must be an array of strings");
  }
  for (const auto &v : *it) {
    if (!v.is_string()) {
      throw Error(ErrorCode::kMalformedRecord,
                  std::string("field '") + key + "' must hold strings");
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::string RequiredString(const nlohmann::json &j, const char *key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string() || it->get<std::string>().empty()) {
    throw Error(ErrorCode::kMalformedRecord,
                std::string("missing or empty string field '") + key + "'");
  }
  return it->get<std::string>();
}

// Drops aliases that normalize to an earlier alias; returns how many went.
std::size_t DedupAliases(Concept &c) {
  std::set<std::string> seen;
  std::vector<std::string> kept;
  for (std::string &alias : c.aliases) {
    std::string key = NormalizeAlias(alias);
    if (key.empty() || !seen.insert(std::move(key)).second) continue;
    kept.push_back(std::move(alias));
  }
  std::size_t dropped = c.aliases.size() - kept.size();
  c.aliases = std::move(kept);
  return dropped;
}

void SortUnique(std::vector<std::string> &v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::vector<std::string> Concept::Surfaces() const {
  std::vector<std::string> out{name};
  const std::string canonical = NormalizeAlias(name);
  for (const std::string &alias : aliases) {
    if (NormalizeAlias(alias) != canonical) out.push_back(alias);
  }
  return out;
}

void to_json(nlohmann::json &j, const Concept &c) {
  j = nlohmann::json{{"cui", c.cui},       {"name", c.name},
                     {"aliases", c.aliases}, {"types", c.types},
                     {"parents", c.parents}};
}

void from_json(const nlohmann::json &j, Concept &c) {
  if (!j.is_object()) {
    throw Error(ErrorCode::kMalformedRecord, "concept record must be an object");
  }
  c.cui = RequiredString(j, "cui");
  c.name = RequiredString(j, "name");
  c.aliases = StringList(j, "aliases");
  c.types = StringList(j, "types");
  c.parents = StringList(j, "parents");
}

KnowledgeBase KnowledgeBase::Load(const std::filesystem::path &path,
                                  KbLoadReport *report) {
  KnowledgeBase kb;
  KbLoadReport local;
  ForEachJsonLine(path, [&](const nlohmann::json &record, std::size_t) {
    Concept c = record.get<Concept>();
    local.aliases_dropped += DedupAliases(c);
    std::string cui = c.cui;
    if (!kb.concepts_.emplace(cui, std::move(c)).second) {
      throw Error(ErrorCode::kDuplicateCui, cui);
    }
  });
  kb.Index(&local);
  if (report != nullptr) *report = std::move(local);
  return kb;
}

KnowledgeBase KnowledgeBase::FromConcepts(std::vector<Concept> concepts,
                                          KbLoadReport *report) {
  KnowledgeBase kb;
  KbLoadReport local;
  for (Concept &c : concepts) {
    if (c.cui.empty() || c.name.empty()) {
      throw Error(ErrorCode::kMalformedRecord, "concept needs cui and name");
    }
    local.aliases_dropped += DedupAliases(c);
    std::string cui = c.cui;
    if (!kb.concepts_.emplace(cui, std::move(c)).second) {
      throw Error(ErrorCode::kDuplicateCui, cui);
    }
  }
  kb.Index(&local);
  if (report != nullptr) *report = std::move(local);
  return kb;
}

void KnowledgeBase::Index(KbLoadReport *report) {
  for (auto &[cui, c] : concepts_) {
    SortUnique(c.types);
    SortUnique(c.parents);
    for (const std::string &parent : c.parents) {
      child_index_[parent].insert(cui);
      if (!concepts_.contains(parent)) {
        report->dangling_parents.emplace_back(cui, parent);
      }
    }
    alias_index_[NormalizeAlias(c.name)].insert(cui);
    for (const std::string &alias : c.aliases) {
      alias_index_[NormalizeAlias(alias)].insert(cui);
    }
  }
  report->concepts = concepts_.size();
}

bool KnowledgeBase::Contains(std::string_view cui) const {
  return concepts_.find(cui) != concepts_.end();
}

const Concept *KnowledgeBase::Find(std::string_view cui) const {
  auto it = concepts_.find(cui);
  return it == concepts_.end() ? nullptr : &it->second;
}

const Concept &KnowledgeBase::Get(std::string_view cui) const {
  const Concept *c = Find(cui);
  if (c == nullptr) throw Error(ErrorCode::kUnknownCui, std::string(cui));
  return *c;
}

const CuiSet &KnowledgeBase::Children(std::string_view cui) const {
  auto it = child_index_.find(cui);
  return it == child_index_.end() ? EmptySet() : it->second;
}

const CuiSet &KnowledgeBase::LookupAlias(std::string_view surface) const {
  auto it = alias_index_.find(NormalizeAlias(surface));
  return it == alias_index_.end() ? EmptySet() : it->second;
}

CuiSet KnowledgeBase::Siblings(std::string_view cui) const {
  const Concept &u = Get(cui);
  CuiSet out;
  for (const std::string &parent : u.parents) {
    for (const std::string &child : Children(parent)) {
      if (child != u.cui) out.insert(child);
    }
  }
  return out;
}

bool KnowledgeBase::SameType(const Concept &a, const Concept &b,
                             TypeMatch match) const {
  // Both type lists are sorted and unique after Index().
  if (match == TypeMatch::kExact) return !a.types.empty() && a.types == b.types;
  auto i = a.types.begin();
  auto j = b.types.begin();
  while (i != a.types.end() && j != b.types.end()) {
    if (*i == *j) return true;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

CuiSet KnowledgeBase::FilterSameType(std::string_view cui,
                                     const CuiSet &candidates,
                                     TypeMatch match) const {
  const Concept &u = Get(cui);
  CuiSet out;
  for (const std::string &candidate : candidates) {
    if (SameType(u, Get(candidate), match)) out.insert(candidate);
  }
  return out;
}

void KnowledgeBase::Write(std::ostream &out) const {
  for (const auto &[cui, c] : concepts_) WriteJsonLine(out, c);
}

}  // namespace claimkit
