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

#ifndef CLAIMKIT_ENTITY_LINKER_H_
#define CLAIMKIT_ENTITY_LINKER_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "claimkit/kb.h"

namespace claimkit {

// A span of source text matched against the alias index. Offsets are UTF-8
// byte offsets, half-open.
struct EntityMention {
  std::string text;
  std::size_t start = 0;
  std::size_t end = 0;
  // Set only when exactly one concept carries the matched alias.
  std::optional<std::string> cui;
  // Sorted lexicographically.
  std::vector<std::string> candidates;

  friend bool operator==(const EntityMention &, const EntityMention &) = default;
};

void to_json(nlohmann::json &j, const EntityMention &m);
void from_json(const nlohmann::json &j, EntityMention &m);

// Aliases whose normalized form is shorter than this many code points are
// never matched.
inline constexpr std::size_t kMinAliasCodePoints = 3;

// Dictionary named-entity recognizer and linker over a KnowledgeBase.
//
// Matching runs left to right over the text. At every word boundary it
// follows a code-point trie of normalized aliases and keeps the longest alias
// that also ends on a word boundary; the scan then resumes after the match.
// A word boundary is the start or end of the text or any position between an
// alphanumeric and a non-alphanumeric code point. Whitespace runs in the text
// match a single space in the alias.
//
// The linker keeps a reference to the KnowledgeBase, which must outlive it.
// Both are immutable after construction and safe for concurrent readers.
class EntityLinker {
 public:
  explicit EntityLinker(const KnowledgeBase &kb);

  std::vector<EntityMention> FindMentions(std::string_view text) const;

  // Unambiguous mention -> its candidate. Ambiguous -> the candidate with the
  // most surface forms, ties by cui. No candidates -> nullopt.
  std::optional<std::string> Link(const EntityMention &mention) const;

  const KnowledgeBase &kb() const { return kb_; }

 private:
  struct Node {
    std::map<char32_t, int32_t> children;
    // Index into terminals_, or -1.
    int32_t terminal = -1;
  };

  void Insert(std::string_view normalized_alias, const CuiSet &cuis);

  const KnowledgeBase &kb_;
  std::vector<Node> nodes_;
  std::vector<std::vector<std::string>> terminals_;
};

}  // namespace claimkit

#endif  // CLAIMKIT_ENTITY_LINKER_H_
