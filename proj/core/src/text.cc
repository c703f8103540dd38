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

#include "claimkit/text.h"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

namespace claimkit {

std::vector<CodePoint> DecodeUtf8(std::string_view text) {
  std::vector<CodePoint> out;
  out.reserve(text.size());
  const auto *bytes = reinterpret_cast<const uint8_t *>(text.data());
  const int32_t length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t begin = i;
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) {
      c = 0xFFFD;
      i = begin + 1;
    }
    out.push_back({static_cast<char32_t>(c), static_cast<std::size_t>(begin),
                   static_cast<std::size_t>(i)});
  }
  return out;
}

void AppendUtf8(std::string &out, char32_t cp) {
  uint8_t buf[U8_MAX_LENGTH];
  int32_t n = 0;
  UBool error = false;
  U8_APPEND(buf, n, U8_MAX_LENGTH, static_cast<UChar32>(cp), error);
  if (error) {
    AppendUtf8(out, 0xFFFD);
    return;
  }
  out.append(reinterpret_cast<const char *>(buf), n);
}

std::size_t CodePointCount(std::string_view text) {
  return DecodeUtf8(text).size();
}

bool IsAlnum(char32_t cp) { return u_isalnum(static_cast<UChar32>(cp)); }

bool IsSpace(char32_t cp) { return u_isUWhiteSpace(static_cast<UChar32>(cp)); }

char32_t ToLower(char32_t cp) {
  return static_cast<char32_t>(u_tolower(static_cast<UChar32>(cp)));
}

std::string Lowercase(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const CodePoint &cp : DecodeUtf8(text)) AppendUtf8(out, ToLower(cp.value));
  return out;
}

std::string NormalizeAlias(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (const CodePoint &cp : DecodeUtf8(text)) {
    if (IsSpace(cp.value)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    AppendUtf8(out, ToLower(cp.value));
  }
  return out;
}

std::vector<std::string> WordTokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (const CodePoint &cp : DecodeUtf8(text)) {
    if (IsAlnum(cp.value)) {
      AppendUtf8(current, ToLower(cp.value));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

}  // namespace claimkit
