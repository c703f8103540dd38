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

// Acceptance checks for the primary pipeline. Prints one PASS or FAIL line
// per criterion and exits non-zero when any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "claimkit/annotation.h"
#include "claimkit/dataset.h"
#include "claimkit/entity_linker.h"
#include "claimkit/error.h"
#include "claimkit/evalkit.h"
#include "claimkit/hash.h"
#include "claimkit/jsonl.h"
#include "claimkit/kb.h"
#include "claimkit/kbin.h"
#include "claimkit/parallel.h"
#include "claimkit/ratings.h"
#include "claimkit/reference_scorers.h"
#include "claimkit/scorer.h"
#include "claimkit/vectors.h"
#include "cli.h"
#include "oracles/generators.h"
#include "oracles/oracles.h"
#include "test_util.h"

namespace claimkit {
namespace {

using Clock = std::chrono::steady_clock;
using testing::Fixture;
using testing::ReadText;
using testing::TempDir;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failure and keeps the check going.
class Check {
 public:
  void Expect(bool ok, const std::string &what) {
    if (!ok && outcome_.pass) {
      outcome_.pass = false;
      outcome_.detail = what;
    }
  }
  Outcome Done(const std::string &summary) {
    if (outcome_.pass) outcome_.detail = summary;
    return outcome_;
  }
  bool ok() const { return outcome_.pass; }

 private:
  Outcome outcome_;
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Fmt(const char *format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

// KBIN against exhaustive search over (mention, same-type top-N concept,
// surface) with table-backed scorers.
Outcome KbinOracle() {
  Check check;
  const auto start = Clock::now();
  const KnowledgeBase kb = KnowledgeBase::Load(Fixture("desk_kb.jsonl"));
  const VectorTable vectors = VectorTable::Load(Fixture("desk_vectors.csv"));
  const EntityLinker linker(kb);
  std::vector<std::string> claims;
  ForEachJsonLine(Fixture("kbin_claims.jsonl"),
                  [&](const Json &j, std::size_t) { claims.push_back(j.at("text")); });

  std::size_t matched = 0;
  for (std::size_t top_n : {1u, 3u, 20u}) {
    std::map<std::string, double> ppl;
    std::map<TableNli::Key, NliProbs> nli;
    for (const std::string &claim : claims) {
      for (const oracle::KbinTriple &t : oracle::KbinTriples(kb, vectors, claim, top_n)) {
        ppl[t.text] = 10.0 + static_cast<double>(StableHash(t.text) % 5);
        const double c = static_cast<double>(2 * (1 + StableHash({claim, t.text}) % 7)) / 16.0;
        nli[{claim, t.text}] = {(1.0 - c) / 2.0, (1.0 - c) / 2.0, c};
      }
    }
    ScorerGateway gw({}, std::make_shared<TablePerplexity>(ppl), std::make_shared<TableNli>(nli),
                     nullptr);
    KbinConfig config;
    config.top_n_concepts = top_n;
    const Kbin kbin(kb, vectors, linker, gw, config);
    for (const std::string &claim : claims) {
      const auto want = oracle::Kbin(
          kb, vectors, claim, top_n, [&](const std::string &t) { return ppl.at(t); },
          [&](const std::string &t) { return nli.at({claim, t}).contradiction; });
      if (!want) {
        bool threw = false;
        try {
          kbin.GetNegation(claim);
        } catch (const Error &) {
          threw = true;
        }
        check.Expect(threw, "oracle has no negation but KBIN returned one: " + claim);
        continue;
      }
      const NegationCandidate got = kbin.GetNegation(claim);
      check.Expect(got.text == want->text, "N=" + std::to_string(top_n) + " '" + claim +
                                               "': got '" + got.text + "', want '" +
                                               want->text + "'");
      if (top_n == 20 && got.text == want->text) ++matched;
    }
  }
  const double secs = Seconds(start);
  check.Expect(matched >= 25, "only " + std::to_string(matched) + " exact matches at N=20");
  check.Expect(secs < 5.0, "took " + Fmt("%.3f s", secs));
  return check.Done(std::to_string(matched) + "/" + std::to_string(claims.size()) +
                    " claims matched at N=20, N in {1,3,20} checked in " + Fmt("%.3f s", secs));
}

std::string VecId(std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "C%05zu", i);
  return buf;
}

Outcome TopN() {
  Check check;
  SeededRng rng(8675309);
  VectorTable table(8);
  std::vector<std::vector<double>> made;
  for (std::size_t i = 0; i < 1000; ++i) {
    std::vector<double> v(8);
    if (!made.empty() && rng.UniformIndex(5) == 0) {
      const std::vector<double> &copy = made[rng.UniformIndex(made.size())];
      const double scale = rng.UniformIndex(2) == 0 ? 3.0 : 1.0;
      for (std::size_t d = 0; d < v.size(); ++d) v[d] = copy[d] * scale;
    } else {
      for (double &x : v) x = std::round((rng.UniformReal() * 2.0 - 1.0) * 4.0) / 4.0;
      if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) v[0] = 1.0;
    }
    made.push_back(v);
    table.Add(VecId(i), v);
  }
  CuiSet pool;
  for (const auto &[cui, v] : table.entries()) pool.insert(cui);
  std::size_t queries = 0;
  for (std::size_t q = 0; q < 1000; q += 10) {
    for (std::size_t n : {1u, 5u, 20u}) {
      const auto got = NearestConcepts(table, VecId(q), pool, n);
      const auto want = oracle::Nearest(table, VecId(q), pool, n);
      check.Expect(got == want, "query " + VecId(q) + " N=" + std::to_string(n));
      ++queries;
    }
  }
  return check.Done(std::to_string(queries) + " queries over 1000 vectors, N in {1,5,20}");
}

Outcome RougeFixtures() {
  Check check;
  struct Case {
    const char *c, *r;
    double r1, r2, rl;
  };
  const Case cases[] = {
      {"a b c", "a c d", 2.0 / 3, 0.0, 2.0 / 3},
      {"the cat sat", "the cat sat", 1.0, 1.0, 1.0},
      {"a b", "c d", 0.0, 0.0, 0.0},
      {"the cat sat on the mat", "the cat sat", 2.0 / 3, 4.0 / 7, 2.0 / 3},
      {"The Cat!", "the cat", 1.0, 1.0, 1.0},
      {"a a a", "a", 0.5, 0.0, 0.5},
      {"a b c d", "d c b a", 1.0, 0.0, 0.25},
      {"a b a b", "a b", 2.0 / 3, 0.5, 2.0 / 3},
      {"x y z", "x q z", 2.0 / 3, 0.0, 2.0 / 3},
      {"IL-6 levels rise", "il 6 levels", 6.0 / 7, 0.8, 6.0 / 7},
      {"b c", "a b c d", 2.0 / 3, 0.5, 2.0 / 3},
      {"w1 w2 w3 w4 w5", "w1 w3 w5", 0.75, 0.0, 0.75},
  };
  for (const Case &k : cases) {
    const RougeScores s = Rouge(k.c, k.r);
    const std::string tag = std::string(k.c) + " | " + k.r;
    check.Expect(std::abs(s.r1 - k.r1) <= 1e-9, "R-1 " + tag);
    check.Expect(std::abs(s.r2 - k.r2) <= 1e-9, "R-2 " + tag);
    check.Expect(std::abs(s.rl - k.rl) <= 1e-9, "R-L " + tag);
  }
  const RougeScores same = Rouge("Aspirin reduces IL-6 levels.", "Aspirin reduces IL-6 levels.");
  check.Expect(same.r1 == 1.0 && same.r2 == 1.0 && same.rl == 1.0, "identical strings");

  const std::vector<std::pair<std::string, std::string>> generated = {
      {"cit1", "Amoxicillin is prescribed for pneumonia in children."},
      {"cit1", "Pneumonia in children is treated with amoxicillin."},
      {"cit2", "Aspirin reduces IL-6 in asthma."},
      {"cit2", "Aspirin lowers inflammation."},
      {"cit3", "Influenza raises bronchitis risk in older adults."},
      {"cit4", "No effect was seen in controls."},
      {"cit5", "Ibuprofen relieves cold symptoms."},
      {"cit5", "Paracetamol relieves flu symptoms."},
  };
  const std::map<std::string, std::vector<std::string>> references = {
      {"cit1", {"Amoxicillin treats pneumonia in children.", "Children get amoxicillin."}},
      {"cit2", {"Aspirin reduces IL-6 levels.", "IL-6 is elevated in asthma."}},
      {"cit3", {"Influenza increases the risk of bronchitis."}},
      {"cit4", {"The control group showed no effect.", "No effect in controls."}},
      {"cit5", {"Ibuprofen relieves symptoms of the common cold.", "Paracetamol treats flu."}},
  };
  for (RougeVariant v : {RougeVariant::kR1, RougeVariant::kR2, RougeVariant::kRL}) {
    double sum = 0.0;
    for (const auto &[cit, claim] : generated) {
      double best = 0.0;
      for (const std::string &ref : references.at(cit)) {
        best = std::max(best, Select(Rouge(claim, ref), v));
      }
      sum += best;
    }
    const double naive = sum / static_cast<double>(generated.size());
    check.Expect(std::abs(MaxAvgScore(generated, references, v) - naive) <= 1e-12,
                 "max-avg " + std::string(RougeVariantName(v)));
  }
  return check.Done(std::to_string(std::size(cases)) +
                    " hand cases at 1e-9, max-avg on 5 citances at 1e-12");
}

RatingMatrix RandomRatings(std::size_t raters, std::size_t items, int levels, uint64_t seed) {
  SeededRng rng(seed);
  RatingMatrix m(raters);
  for (std::size_t i = 0; i < items; ++i) {
    const int truth = static_cast<int>(rng.UniformIndex(levels)) + 1;
    for (std::size_t r = 0; r < raters; ++r) {
      if (rng.UniformIndex(6) == 0) {
        m[r].push_back(std::nullopt);
      } else if (rng.UniformIndex(3) == 0) {
        m[r].push_back(static_cast<int>(rng.UniformIndex(levels)) + 1);
      } else {
        m[r].push_back(truth);
      }
    }
  }
  return m;
}

Outcome Alpha() {
  Check check;
  const RatingMatrix unanimous = {{1, 2, 3, 4, 2}, {1, 2, 3, 4, 2}, {1, std::nullopt, 3, 4, 2}};
  for (AlphaMetric m : {AlphaMetric::kNominal, AlphaMetric::kOrdinal, AlphaMetric::kInterval}) {
    check.Expect(KrippendorffAlpha(unanimous, m).alpha == 1.0,
                 "unanimous " + std::string(AlphaMetricName(m)));
  }
  const std::vector<RatingMatrix> fixtures = {
      {{1, 1}, {1, 2}},
      RandomRatings(2, 12, 5, 1),
      RandomRatings(3, 20, 5, 2),
      RandomRatings(5, 40, 3, 3),
  };
  std::size_t compared = 0;
  for (std::size_t f = 0; f < fixtures.size(); ++f) {
    for (AlphaMetric m : {AlphaMetric::kNominal, AlphaMetric::kOrdinal, AlphaMetric::kInterval}) {
      const double got = KrippendorffAlpha(fixtures[f], m).alpha;
      const double want = oracle::Alpha(fixtures[f], m);
      check.Expect(std::abs(got - want) <= 1e-9, "fixture " + std::to_string(f) + " " +
                                                     std::string(AlphaMetricName(m)));
      ++compared;
    }
  }
  const std::map<double, double> relabel{{1, 9}, {2, -4}, {3, 0.5}, {4, 100}, {5, 2}};
  for (const RatingMatrix &m : fixtures) {
    RatingMatrix r = m;
    for (auto &row : r) {
      for (auto &cell : row) {
        if (cell) cell = relabel.at(*cell);
      }
    }
    check.Expect(std::abs(KrippendorffAlpha(m, AlphaMetric::kNominal).alpha -
                          KrippendorffAlpha(r, AlphaMetric::kNominal).alpha) <= 1e-12,
                 "nominal relabeling");
  }
  return check.Done(std::to_string(compared) +
                    " fixture/metric pairs match the direct formula at 1e-9");
}

Outcome Acceptability() {
  Check check;
  int tuples = 0;
  for (int f = 1; f <= 3; ++f) {
    for (int d = 0; d <= 1; ++d) {
      for (int a = 0; a <= 1; ++a) {
        for (int q = 1; q <= 5; ++q) {
          const bool want = f > 1 && d == 1 && a == 1 && q > 3;
          const std::string tag = "(" + std::to_string(f) + "," + std::to_string(d) + "," +
                                  std::to_string(a) + "," + std::to_string(q) + ")";
          check.Expect(AcceptabilityRule(f, d, a, q) == want, "rule " + tag);
          check.Expect(Acceptable(GatedQualityRecord(f, d, a, q)) == want, "gated " + tag);
          ++tuples;
        }
      }
    }
  }
  check.Expect(tuples == 60, "tuple count");
  check.Expect(AcceptabilityRule(3, 1, 1, 5), "(3,1,1,5) accepted");
  check.Expect(!AcceptabilityRule(3, 1, 0, 4), "(3,1,0,4) rejected");
  return check.Done("60 tuples agree with the rule, example patterns hold");
}

Outcome Dataset() {
  Check check;
  const oracle::SyntheticCorpus s = oracle::RandomCorpus(50, 2024);
  DatasetReport report;
  const std::vector<FactInstance> out =
      BuildDataset(s.claims, s.negations, s.citances, s.corpus, {}, &report);
  std::map<std::string, std::string> original;
  for (const Claim &c : s.claims) original[c.id] = c.text;
  std::set<std::tuple<std::string, std::string, Label>> triples;
  std::size_t counts[kNumLabels] = {0, 0, 0};
  for (const FactInstance &f : out) {
    ++counts[static_cast<std::size_t>(f.label)];
    check.Expect(triples.emplace(f.claim, f.evidence_doc_id, f.label).second,
                 "duplicate triple " + f.id);
    const CitanceRecord &rec = s.citances.at(f.provenance.citance_id);
    if (f.label == Label::kNei) {
      check.Expect(f.evidence_doc_id == rec.source_doc_id, "NEI doc is not the source " + f.id);
    } else {
      check.Expect(std::find(rec.cited_doc_ids.begin(), rec.cited_doc_ids.end(),
                             f.evidence_doc_id) != rec.cited_doc_ids.end(),
                   "evidence not cited " + f.id);
    }
    if (f.label == Label::kRefutes) {
      check.Expect(f.claim != original.at(f.provenance.claim_id), "REFUTES equals original");
    }
  }
  check.Expect(counts[static_cast<std::size_t>(Label::kSupports)] == s.expected_supports,
               "SUPPORTS count");
  check.Expect(counts[static_cast<std::size_t>(Label::kRefutes)] == s.expected_refutes,
               "REFUTES count");
  check.Expect(counts[static_cast<std::size_t>(Label::kNei)] == s.expected_nei, "NEI count");
  check.Expect(report.missing_docs.size() == s.expected_missing, "missing doc count");
  return check.Done(std::to_string(out.size()) + " instances from 50 citances (" +
                    std::to_string(s.expected_supports) + " SUPPORTS, " +
                    std::to_string(s.expected_refutes) + " REFUTES, " +
                    std::to_string(s.expected_nei) + " NEI)");
}

Outcome Linker() {
  Check check;
  const KnowledgeBase kb = KnowledgeBase::Load(Fixture("desk_kb.jsonl"));
  const EntityLinker linker(kb);
  constexpr std::size_t kTexts = 10000;
  std::vector<std::string> texts;
  texts.reserve(kTexts);
  for (uint64_t seed = 0; seed < kTexts; ++seed) texts.push_back(oracle::RandomLinkerText(kb, seed));

  std::vector<std::vector<EntityMention>> serial(kTexts);
  for (std::size_t i = 0; i < kTexts; ++i) {
    serial[i] = linker.FindMentions(texts[i]);
    const auto &got = serial[i];
    const auto want = oracle::Mentions(kb, texts[i]);
    bool same = got.size() == want.size();
    for (std::size_t k = 0; same && k < got.size(); ++k) {
      same = got[k].start == want[k].start && got[k].end == want[k].end &&
             got[k].candidates == want[k].candidates;
      if (k > 0) same = same && got[k - 1].end <= got[k].start;
    }
    check.Expect(same, "text " + std::to_string(i) + ": " + texts[i]);
    if (!check.ok()) break;
  }
  for (int run = 0; run < 3; ++run) {
    std::vector<std::vector<EntityMention>> parallel(kTexts);
    ParallelFor(kTexts, 8, [&](std::size_t i) { parallel[i] = linker.FindMentions(texts[i]); });
    check.Expect(parallel == serial, "8-way run " + std::to_string(run) + " differs");
  }
  return check.Done("10000 texts match the longest-match oracle, 8-way runs identical");
}

Outcome Annotation() {
  Check check;
  std::vector<AnnotationTask> tasks;
  for (int i = 0; i < 4; ++i) {
    AnnotationTask q;
    q.task_id = "q" + std::to_string(i);
    q.claim_id = "c" + std::to_string(i);
    q.claim = "Claim " + std::to_string(i);
    q.method = i % 2 ? "direct" : "entity";
    tasks.push_back(q);
    AnnotationTask n;
    n.task_id = "n" + std::to_string(i);
    n.protocol = Protocol::kNegation;
    n.claim_id = q.claim_id;
    n.original_claim = q.claim;
    n.negations = {{"kbin", "first rewrite " + std::to_string(i)},
                   {"random-entity", "second rewrite " + std::to_string(i)},
                   {"manual", "third rewrite " + std::to_string(i)}};
    tasks.push_back(n);
  }
  const std::set<std::string> annotators{"ann1", "ann2"};
  TempDir dir;
  auto service = std::make_unique<AnnotationService>(tasks, annotators, dir.path(), 17);

  // Fluency 1 with any downstream criterion is rejected.
  for (const char *extra : {"decontextualized", "atomicity", "faithfulness"}) {
    nlohmann::json body{{"annotator", "ann1"}, {"task_id", "q0"}, {"protocol", "quality"},
                        {"fluency", 1}, {extra, 1}};
    const HttpResponse r = service->Handle({"POST", "/v1/ratings", {}, body.dump()});
    check.Expect(r.status >= 400 && r.status < 500, std::string("fluency=1 with ") + extra);
  }
  check.Expect(service->store().history_size() == 0, "rejected rating was stored");

  // Blinded views never name a method.
  for (const std::string &a : annotators) {
    for (Protocol p : {Protocol::kQuality, Protocol::kNegation}) {
      for (std::size_t step = 0; step <= tasks.size(); ++step) {
        const HttpResponse r = service->Handle(
            {"GET",
             "/v1/tasks/next",
             {{"annotator", a}, {"protocol", std::string(ProtocolName(p))}},
             ""});
        for (const char *method : {"kbin", "random-entity", "manual", "entity", "direct"}) {
          check.Expect(r.body.find(std::string("\"") + method + "\"") == std::string::npos,
                       std::string("method name leaked: ") + method);
        }
        const auto view = nlohmann::json::parse(r.body);
        if (view.at("done")) break;
        const std::string id = view.at("task").at("task_id");
        AnnotationRecord rec;
        rec.annotator = a;
        rec.task_id = id;
        rec.protocol = p;
        if (p == Protocol::kQuality) {
          rec = GatedQualityRecord(3, 1, 1, 4);
          rec.annotator = a;
          rec.task_id = id;
        } else {
          rec.entailment = {{"A", Entailment::kDefinitelyFalse},
                            {"B", Entailment::kMightBeTrue},
                            {"C", Entailment::kSkip}};
        }
        service->Submit(rec);
      }
    }
  }
  // A revision of one rating, then replay.
  AnnotationRecord revised = GatedQualityRecord(2, 0, 0, 0);
  revised.annotator = "ann2";
  revised.task_id = "q1";
  check.Expect(service->Submit(revised) == 2, "revision number");
  const auto before = service->store().LatestAll();
  const std::string export_before = service->Export(Protocol::kNegation).dump() +
                                    service->Export(Protocol::kQuality).dump();
  service.reset();
  AnnotationService replayed(tasks, annotators, dir.path(), 17);
  check.Expect(replayed.store().LatestAll() == before, "log replay state differs");
  check.Expect(AnnotationStore::Replay(dir / "ratings.jsonl") == before, "static replay differs");
  check.Expect(replayed.Export(Protocol::kNegation).dump() +
                       replayed.Export(Protocol::kQuality).dump() ==
                   export_before,
               "export differs after replay");

  // Slot order depends only on (claim_id, annotator, seed).
  TempDir other;
  std::vector<AnnotationTask> reordered(tasks.rbegin(), tasks.rend());
  AnnotationService fresh(reordered, annotators, other.path(), 17);
  for (const auto &task : tasks) {
    if (task.protocol != Protocol::kNegation) continue;
    for (const std::string &a : annotators) {
      const auto perm = SlotPermutation(task.claim_id, a, Protocol::kNegation, 17, 3);
      const auto methods = fresh.SlotMethods(task.task_id, a);
      for (std::size_t s = 0; s < 3; ++s) {
        check.Expect(methods[s] == task.negations[perm[s]].method, "slot permutation");
      }
      check.Expect(replayed.SlotMethods(task.task_id, a) == methods, "slot order across runs");
    }
  }
  const auto exported = replayed.Export(Protocol::kNegation);
  check.Expect(exported.at("rows").size() == 8, "negation export rows");
  return check.Done("gating enforced, replay identical, slots reproducible, views blinded");
}

Outcome EndToEnd() {
  Check check;
  TempDir dir;
  const std::string kb = Fixture("desk_kb.jsonl").string();
  const std::string claims = (dir / "gen" / "claims.jsonl").string();
  const std::string negs = (dir / "neg" / "negations.jsonl").string();
  const std::string data = (dir / "ds" / "dataset.jsonl").string();
  const std::vector<std::vector<std::string>> stages = {
      {"generate", "--method", "entity", "--citances", Fixture("citances.jsonl").string(), "--kb",
       kb, "--generator", "echo", "--seed", "11", "--out", claims},
      {"negate", "--kb", kb, "--vectors", Fixture("desk_vectors.csv").string(), "--claims", claims,
       "--perplexity", "ngram:" + Fixture("ppl_corpus.txt").string(), "--nli", "uniform",
       "--seed", "11", "--out", negs},
      {"build-dataset", "--claims", claims, "--negations", negs, "--citances",
       Fixture("citances.jsonl").string(), "--corpus", Fixture("corpus.jsonl").string(),
       "--scifact-out", (dir / "ds" / "scifact.jsonl").string(), "--out", data},
  };
  const std::vector<std::string> outputs = {claims, negs, data,
                                            (dir / "ds" / "scifact.jsonl").string()};

  const auto start = Clock::now();
  for (const auto &args : stages) {
    std::ostringstream out, err;
    const int code = cli::Run(args, out, err);
    check.Expect(code == cli::kExitOk, args[0] + " exited " + std::to_string(code) + ": " +
                                           err.str());
  }
  const double secs = Seconds(start);
  check.Expect(secs < 10.0, "took " + Fmt("%.3f s", secs));
  if (!check.ok()) return check.Done("");

  std::vector<std::string> first;
  for (const auto &path : outputs) first.push_back(ReadText(path));
  std::size_t instances = 0;
  ForEachJsonLine(data, [&](const Json &, std::size_t) { ++instances; });
  check.Expect(instances > 0, "empty dataset");

  for (const char *stage : {"gen", "neg", "ds"}) {
    std::ostringstream out, err;
    const int code = cli::Run({"rerun", (dir / stage / "run.json").string()}, out, err);
    check.Expect(code == cli::kExitOk, std::string("rerun ") + stage + ": " + err.str());
  }
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    check.Expect(ReadText(outputs[i]) == first[i], "rerun changed " + outputs[i]);
  }
  return check.Done(std::to_string(instances) + " instances in " + Fmt("%.3f s", secs) +
                    ", rerun from manifests byte-identical");
}

}  // namespace
}  // namespace claimkit

int main() {
  using claimkit::Outcome;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"kbin-oracle-equivalence", claimkit::KbinOracle},
      {"top-n-exhaustive-scan", claimkit::TopN},
      {"rouge-fixtures", claimkit::RougeFixtures},
      {"krippendorff-alpha", claimkit::Alpha},
      {"acceptability-rule", claimkit::Acceptability},
      {"dataset-invariants", claimkit::Dataset},
      {"entity-linker-properties", claimkit::Linker},
      {"annotation-service", claimkit::Annotation},
      {"end-to-end-pipeline", claimkit::EndToEnd},
  };
  int failed = 0;
  for (const auto &[name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << "\n";
    if (!o.pass) ++failed;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
