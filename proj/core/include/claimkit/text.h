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

#ifndef CLAIMKIT_TEXT_H_
#define CLAIMKIT_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace claimkit {

// A decoded code point and the byte range it occupies in the source UTF-8
// string. Invalid byte sequences decode to U+FFFD one byte at a time.
struct CodePoint {
  char32_t value;
  std::size_t begin;
  std::size_t end;
};

std::vector<CodePoint> DecodeUtf8(std::string_view text);
void AppendUtf8(std::string &out, char32_t cp);
std::size_t CodePointCount(std::string_view text);

// Unicode character classes used for word boundaries and tokenization.
bool IsAlnum(char32_t cp);
bool IsSpace(char32_t cp);

// Simple (1:1) Unicode lowercase mapping.
char32_t ToLower(char32_t cp);
std::string Lowercase(std::string_view text);

// Lowercase, trim, and collapse internal whitespace runs to a single space.
// This is the key space of the alias index.
std::string NormalizeAlias(std::string_view text);

// Lowercased tokens separated by runs of non-alphanumeric code points.
std::vector<std::string> WordTokens(std::string_view text);

// Bumped whenever WordTokens changes behaviour; recorded in eval metadata.
inline constexpr std::string_view kTokenizerVersion = "alnum-lower-1";

}  // namespace claimkit

#endif  // CLAIMKIT_TEXT_H_
