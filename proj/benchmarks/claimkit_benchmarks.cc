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

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "claimkit/entity_linker.h"
#include "claimkit/evalkit.h"
#include "claimkit/hash.h"
#include "claimkit/kb.h"
#include "claimkit/vectors.h"

namespace claimkit {
namespace {

std::string Id(std::size_t i) { return "C" + std::to_string(100000 + i); }

VectorTable RandomTable(std::size_t count, std::size_t dim) {
  SeededRng rng(1);
  VectorTable t(dim);
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<double> v(dim);
    for (double &x : v) x = rng.UniformReal() * 2.0 - 1.0;
    t.Add(Id(i), v);
  }
  return t;
}

void BM_NearestConcepts(benchmark::State &state) {
  const std::size_t count = static_cast<std::size_t>(state.range(0));
  const VectorTable table = RandomTable(count, 64);
  CuiSet pool;
  for (const auto &[cui, v] : table.entries()) pool.insert(cui);
  for (auto _ : state) {
    benchmark::DoNotOptimize(NearestConcepts(table, Id(0), pool, 20));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(count));
}
BENCHMARK(BM_NearestConcepts)->Arg(1000)->Arg(10000);

KnowledgeBase SyntheticKb(std::size_t concepts) {
  std::vector<Concept> all;
  for (std::size_t i = 0; i < concepts; ++i) {
    Concept c;
    c.cui = Id(i);
    c.name = "concept term " + std::to_string(i);
    c.aliases = {"alias " + std::to_string(i), "term" + std::to_string(i) + " factor"};
    c.types = {"T" + std::to_string(i % 7)};
    all.push_back(c);
  }
  return KnowledgeBase::FromConcepts(std::move(all));
}

void BM_FindMentions(benchmark::State &state) {
  const KnowledgeBase kb = SyntheticKb(5000);
  const EntityLinker linker(kb);
  std::string text;
  SeededRng rng(2);
  for (int i = 0; i < 40; ++i) {
    text += rng.UniformIndex(2) ? "concept term " + std::to_string(rng.UniformIndex(5000))
                                : "unrelated words";
    text += " and ";
  }
  for (auto _ : state) benchmark::DoNotOptimize(linker.FindMentions(text));
  state.SetBytesProcessed(state.iterations() * static_cast<int64_t>(text.size()));
}
BENCHMARK(BM_FindMentions);

void BM_Rouge(benchmark::State &state) {
  const std::string a =
      "Aspirin reduces the levels of IL-6 in patients with asthma according to a cohort study";
  const std::string b = "In a cohort of asthma patients IL-6 levels were lower with aspirin use";
  for (auto _ : state) benchmark::DoNotOptimize(Rouge(a, b));
}
BENCHMARK(BM_Rouge);

void BM_KrippendorffAlpha(benchmark::State &state) {
  const std::size_t items = static_cast<std::size_t>(state.range(0));
  SeededRng rng(3);
  RatingMatrix m(3);
  for (auto &row : m) {
    for (std::size_t i = 0; i < items; ++i) row.push_back(double(rng.UniformIndex(5) + 1));
  }
  for (auto _ : state) benchmark::DoNotOptimize(KrippendorffAlpha(m, AlphaMetric::kOrdinal));
}
BENCHMARK(BM_KrippendorffAlpha)->Arg(100)->Arg(10000);

}  // namespace
}  // namespace claimkit

BENCHMARK_MAIN();
