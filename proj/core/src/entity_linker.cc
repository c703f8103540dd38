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

#include "claimkit/entity_linker.h"

#include "claimkit/text.h"

namespace claimkit {

void to_json(nlohmann::json &j, const EntityMention &m) {
  j = nlohmann::json{{"text", m.text},
                     {"start", m.start},
                     {"end", m.end},
                     {"candidates", m.candidates}};
  j["cui"] = m.cui ? nlohmann::json(*m.cui) : nlohmann::json(nullptr);
}

void from_json(const nlohmann::json &j, EntityMention &m) {
  m.text = j.at("text").get<std::string>();
  m.start = j.at("start").get<std::size_t>();
  m.end = j.at("end").get<std::size_t>();
  m.cui.reset();
  if (auto it = j.find("cui"); it != j.end() && it->is_string()) {
    m.cui = it->get<std::string>();
  }
  m.candidates.clear();
  if (auto it = j.find("candidates"); it != j.end() && it->is_array()) {
    m.candidates = it->get<std::vector<std::string>>();
  }
}

EntityLinker::EntityLinker(const KnowledgeBase &kb) : kb_(kb) {
  nodes_.emplace_back();
  for (const auto &[alias, cuis] : kb.alias_index()) {
    if (CodePointCount(alias) < kMinAliasCodePoints) continue;
    Insert(alias, cuis);
  }
}

void EntityLinker::Insert(std::string_view normalized_alias, const CuiSet &cuis) {
  int32_t node = 0;
  for (const CodePoint &cp : DecodeUtf8(normalized_alias)) {
    auto it = nodes_[node].children.find(cp.value);
    if (it == nodes_[node].children.end()) {
      const int32_t next = static_cast<int32_t>(nodes_.size());
      nodes_[node].children.emplace(cp.value, next);
      nodes_.emplace_back();
      node = next;
    } else {
      node = it->second;
    }
  }
  nodes_[node].terminal = static_cast<int32_t>(terminals_.size());
  terminals_.emplace_back(cuis.begin(), cuis.end());
}

std::vector<EntityMention> EntityLinker::FindMentions(std::string_view text) const {
  std::vector<EntityMention> mentions;
  const std::vector<CodePoint> cps = DecodeUtf8(text);
  const std::size_t n = cps.size();
  std::vector<bool> alnum(n);
  for (std::size_t i = 0; i < n; ++i) alnum[i] = IsAlnum(cps[i].value);
  auto boundary = [&](std::size_t p) {
    return p == 0 || p == n || alnum[p - 1] != alnum[p];
  };
  auto byte_offset = [&](std::size_t p) {
    return p == n ? text.size() : cps[p].begin;
  };

  std::size_t start = 0;
  while (start < n) {
    if (!boundary(start) || IsSpace(cps[start].value)) {
      ++start;
      continue;
    }
    std::size_t best_end = 0;
    int32_t best_terminal = -1;
    int32_t node = 0;
    std::size_t i = start;
    while (i < n) {
      char32_t edge;
      if (IsSpace(cps[i].value)) {
        edge = U' ';
        while (i < n && IsSpace(cps[i].value)) ++i;
      } else {
        edge = ToLower(cps[i].value);
        ++i;
      }
      auto it = nodes_[node].children.find(edge);
      if (it == nodes_[node].children.end()) break;
      node = it->second;
      if (nodes_[node].terminal >= 0 && boundary(i)) {
        best_end = i;
        best_terminal = nodes_[node].terminal;
      }
    }
    if (best_terminal < 0) {
      ++start;
      continue;
    }
    EntityMention m;
    m.start = byte_offset(start);
    m.end = byte_offset(best_end);
    m.text = std::string(text.substr(m.start, m.end - m.start));
    m.candidates = terminals_[best_terminal];
    if (m.candidates.size() == 1) m.cui = m.candidates.front();
    mentions.push_back(std::move(m));
    start = best_end;
  }
  return mentions;
}

std::optional<std::string> EntityLinker::Link(const EntityMention &mention) const {
  if (mention.candidates.empty()) return std::nullopt;
  if (mention.candidates.size() == 1) return mention.candidates.front();
  const std::string *best = nullptr;
  std::size_t best_count = 0;
  for (const std::string &cui : mention.candidates) {
    const Concept *c = kb_.Find(cui);
    const std::size_t count = c == nullptr ? 0 : c->Surfaces().size();
    if (best == nullptr || count > best_count ||
        (count == best_count && cui < *best)) {
      best = &cui;
      best_count = count;
    }
  }
  return *best;
}

}  // namespace claimkit
