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

#ifndef CLAIMKIT_HASH_H_
#define CLAIMKIT_HASH_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>
#include <string_view>

namespace claimkit {

// 64-bit FNV-1a. Stable across platforms and releases; used for instance ids,
// slot-permutation seeds and input fingerprints.
uint64_t StableHash(std::string_view data);

// Hashes the parts joined by a unit separator (0x1F), so ("ab","c") and
// ("a","bc") differ.
uint64_t StableHash(std::initializer_list<std::string_view> parts);

std::string HexDigest(uint64_t value);

// Seeded generator with a platform-independent bounded draw.
// std::uniform_int_distribution is implementation-defined, which would make
// seeded runs differ between standard libraries.
class SeededRng {
 public:
  explicit SeededRng(uint64_t seed) : engine_(seed) {}

  // Uniform in [0, n). n must be positive.
  std::size_t UniformIndex(std::size_t n);

  // Uniform in [0, 1) with 53 bits of precision.
  double UniformReal();

  uint64_t Next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace claimkit

#endif  // CLAIMKIT_HASH_H_
