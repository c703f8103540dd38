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

#ifndef CLAIMKIT_TESTS_ORACLES_GENERATORS_H_
#define CLAIMKIT_TESTS_ORACLES_GENERATORS_H_

// Seeded input generators for property tests.

#include <cstdint>
#include <string>
#include <vector>

#include "claimkit/claimgen.h"
#include "claimkit/dataset.h"
#include "claimkit/kb.h"

namespace claimkit::oracle {

// Text stitched from KB aliases (random casing, truncation, glued prefixes
// and suffixes, whitespace runs, punctuation) and filler words.
std::string RandomLinkerText(const KnowledgeBase &kb, uint64_t seed);

struct SyntheticCorpus {
  std::vector<Claim> claims;
  std::map<std::string, NegationCandidate> negations;
  std::map<std::string, CitanceRecord> citances;
  std::map<std::string, DocumentRecord> corpus;
  // Pairing arithmetic derived while generating.
  std::size_t expected_supports = 0;
  std::size_t expected_refutes = 0;
  std::size_t expected_nei = 0;
  std::size_t expected_missing = 0;
};

// Citances cite 1..4 documents, some of them absent from the corpus; each
// citance yields 1..3 claims with unique text, about half of them negated.
SyntheticCorpus RandomCorpus(std::size_t citances, uint64_t seed);

}  // namespace claimkit::oracle

#endif  // CLAIMKIT_TESTS_ORACLES_GENERATORS_H_
