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

#include "cli.h"

#include <pthread.h>
#include <signal.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "claimkit/annotation.h"
#include "claimkit/claimgen.h"
#include "claimkit/dataset.h"
#include "claimkit/entity_linker.h"
#include "claimkit/error.h"
#include "claimkit/evalkit.h"
#include "claimkit/hash.h"
#include "claimkit/http.h"
#include "claimkit/jsonl.h"
#include "claimkit/kb.h"
#include "claimkit/kbin.h"
#include "claimkit/parallel.h"
#include "claimkit/scorer_service.h"
#include "claimkit/text.h"
#include "claimkit/vectors.h"
#include "run_support.h"

namespace claimkit::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Configuration problems detected after parsing; reported like CLI11 errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ofstream OpenOutput(const fs::path &path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open output", path.string());
  return out;
}

void WriteLines(const fs::path &path, const std::vector<json> &records) {
  std::ofstream out = OpenOutput(path);
  for (const json &r : records) WriteJsonLine(out, r);
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "write failed", path.string());
}

json ReadJsonDocument(const fs::path &path) {
  const std::string text = ReadFile(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error &e) {
    throw Error(ErrorCode::kMalformedRecord, e.what(), path.string());
  }
}

// Seed flag shared by commands that draw randomness.
struct SeedFlag {
  std::optional<uint64_t> value;
  void Attach(CLI::App *cmd) {
    cmd->add_option("--seed", value, "Random seed; a random one is drawn and recorded if absent");
  }
  RunSeed Resolve(std::ostream &err) const {
    RunSeed seed = ResolveSeed(value);
    if (!seed.from_flag) err << "seed: " << seed.value << "\n";
    return seed;
  }
};

void AttachBackends(CLI::App *cmd, BackendOptions &o, bool perplexity, bool nli,
                    bool generator) {
  if (perplexity) {
    cmd->add_option("--perplexity", o.perplexity,
                    "Perplexity backend: URL, table:<jsonl> or ngram:<corpus>");
  }
  if (nli) cmd->add_option("--nli", o.nli, "NLI backend: URL, table:<jsonl> or uniform");
  if (generator) {
    cmd->add_option("--generator", o.generator,
                    "Generator backend: URL, echo or replay:<jsonl>");
  }
  cmd->add_option("--timeout-ms", o.timeout_ms, "Per-call backend timeout")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-in-flight", o.max_in_flight, "Concurrent backend calls")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--batch-size", o.batch_size, "Texts per backend call")
      ->check(CLI::PositiveNumber);
}

void RequireBackend(const std::string &source, const char *flag) {
  if (source.empty()) throw UsageError(std::string(flag) + " is required for this input");
}

std::size_t ResolveJobs(std::optional<std::size_t> jobs) {
  return jobs.value_or(DefaultJobs());
}

// Per-record failures that do not abort a batch.
json FailureJson(const std::string &id, const Error &e) {
  return {{"id", id}, {"code", ErrorCodeName(e.code())}, {"message", e.what()}};
}

// ---------------------------------------------------------------- kb

struct KbArgs {
  std::string kb;
  std::string vectors;
  std::string out;
  std::string vectors_out;
};

json LoadReportJson(const KbLoadReport &report) {
  json dangling = json::array();
  for (const auto &[child, parent] : report.dangling_parents) {
    dangling.push_back({{"cui", child}, {"parent", parent}});
  }
  return {{"concepts", report.concepts},
          {"aliases_dropped", report.aliases_dropped},
          {"dangling_parents", std::move(dangling)}};
}

json VectorCoverage(const KnowledgeBase &kb, const VectorTable &vectors) {
  std::size_t covered = 0;
  json unknown = json::array();
  for (const auto &[cui, c] : kb.concepts()) covered += vectors.Find(cui) != nullptr;
  for (const auto &[cui, v] : vectors.entries()) {
    if (!kb.Contains(cui)) unknown.push_back(cui);
  }
  return {{"dim", vectors.dim()},
          {"count", vectors.size()},
          {"concepts_with_vectors", covered},
          {"concepts_without_vectors", kb.size() - covered},
          {"unknown_cuis", std::move(unknown)}};
}

int KbValidate(const KbArgs &a, std::ostream &out) {
  KbLoadReport report;
  const KnowledgeBase kb = KnowledgeBase::Load(a.kb, &report);
  json result = LoadReportJson(report);
  if (!a.vectors.empty()) result["vectors"] = VectorCoverage(kb, VectorTable::Load(a.vectors));
  out << result.dump(2) << "\n";
  return kExitOk;
}

int KbBuild(const KbArgs &a, const std::vector<std::string> &args, std::ostream &out) {
  KbLoadReport report;
  const KnowledgeBase kb = KnowledgeBase::Load(a.kb, &report);
  Manifest manifest("kb build", args);
  manifest.AddInput("kb", a.kb);
  {
    std::ofstream file = OpenOutput(a.out);
    kb.Write(file);
  }
  manifest.AddOutput(a.out, kb.size());
  manifest.report() = LoadReportJson(report);
  if (!a.vectors.empty()) {
    const VectorTable vectors = VectorTable::Load(a.vectors);
    manifest.AddInput("vectors", a.vectors);
    manifest.report()["vectors"] = VectorCoverage(kb, vectors);
    if (!a.vectors_out.empty()) {
      {
        std::ofstream file = OpenOutput(a.vectors_out);
        vectors.Write(file);
      }
      manifest.AddOutput(a.vectors_out, vectors.size());
    }
  }
  manifest.WriteBeside(a.out);
  out << manifest.report().dump(2) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- link

struct LinkArgs {
  std::string kb;
  std::vector<std::string> texts;
};

int Link(const LinkArgs &a, std::ostream &out) {
  const KnowledgeBase kb = KnowledgeBase::Load(a.kb);
  const EntityLinker linker(kb);
  for (const std::string &text : a.texts) {
    for (const EntityMention &m : linker.FindMentions(text)) {
      json j = m;
      const std::optional<std::string> linked = linker.Link(m);
      j["linked_cui"] = linked ? json(*linked) : json(nullptr);
      WriteJsonLine(out, j);
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------- negate

struct NegateArgs {
  std::string kb;
  std::string vectors;
  std::string claims;
  std::string out;
  std::string baseline;
  std::size_t top_n = 20;
  std::optional<std::size_t> max_aliases;
  bool exact_types = false;
  std::optional<std::size_t> jobs;
  SeedFlag seed;
  BackendOptions backends;
};

struct ClaimInput {
  std::string id;
  std::string text;
};

// Accepts claim records from `generate` or bare {"text"} / {"claim"} lines.
std::vector<ClaimInput> ReadClaimInputs(const fs::path &path) {
  std::vector<ClaimInput> claims;
  ForEachJsonLine(path, [&](const json &j, std::size_t line) {
    ClaimInput c;
    if (j.contains("text")) {
      c.text = j.at("text").get<std::string>();
    } else if (j.contains("claim")) {
      c.text = j.at("claim").get<std::string>();
    } else {
      throw Error(ErrorCode::kMalformedRecord, "claim record needs a text field");
    }
    if (c.text.empty()) throw Error(ErrorCode::kMalformedRecord, "claim text is empty");
    c.id = j.contains("id") ? j.at("id").get<std::string>() : "line:" + std::to_string(line);
    claims.push_back(std::move(c));
  });
  return claims;
}

json NegationJson(const ClaimInput &claim, const NegationCandidate &n, const std::string &method) {
  const EntityMention &m = n.source_entity;
  auto opt = [](const std::optional<double> &v) { return v ? json(*v) : json(nullptr); };
  return {{"claim_id", claim.id},
          {"claim", claim.text},
          {"negation", n.text},
          {"method", method},
          {"replaced",
           {{"surface", m.text},
            {"start", m.start},
            {"end", m.end},
            {"cui", m.cui ? json(*m.cui) : json(nullptr)},
            {"replacement_cui", n.replacement_cui},
            {"replacement_surface", n.replacement_surface}}},
          {"scores", {{"perplexity", opt(n.perplexity)}, {"contradiction", opt(n.contradiction)}}}};
}

bool IsPerRecordError(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNoLinkableEntity:
    case ErrorCode::kNoCandidates:
    case ErrorCode::kNoSameTypeConcept:
    case ErrorCode::kUnlinkedMention:
    case ErrorCode::kBackendUnavailable:
    case ErrorCode::kBackendMalformedResponse:
    case ErrorCode::kEmptyGeneration:
      return true;
    default:
      return false;
  }
}

int Negate(NegateArgs &a, const std::vector<std::string> &args, std::ostream &err) {
  const bool random_baseline = !a.baseline.empty();
  if (random_baseline && a.baseline != "random-entity") {
    throw UsageError("unknown baseline '" + a.baseline + "'");
  }
  if (a.top_n == 0) throw UsageError("--top-n must be positive");
  ApplyEnvironment(a.backends);
  const RunSeed seed = a.seed.Resolve(err);

  const KnowledgeBase kb = KnowledgeBase::Load(a.kb);
  const VectorTable vectors =
      a.vectors.empty() ? VectorTable() : VectorTable::Load(a.vectors);
  const std::vector<ClaimInput> claims = ReadClaimInputs(a.claims);
  if (!random_baseline && !claims.empty()) {
    if (a.vectors.empty()) throw UsageError("--vectors is required for KBIN");
    RequireBackend(a.backends.perplexity, "--perplexity");
    RequireBackend(a.backends.nli, "--nli");
  }

  const EntityLinker linker(kb);
  std::unique_ptr<ScorerGateway> gateway;
  std::unique_ptr<Kbin> kbin;
  KbinConfig config;
  config.top_n_concepts = a.top_n;
  config.max_aliases_per_concept = a.max_aliases;
  config.type_match = a.exact_types ? TypeMatch::kExact : TypeMatch::kIntersect;
  if (!random_baseline && !claims.empty()) {
    gateway = MakeGateway(a.backends);
    kbin = std::make_unique<Kbin>(kb, vectors, linker, *gateway, config);
  }

  const std::string method = random_baseline ? "random-entity" : "kbin";
  std::vector<std::optional<json>> results(claims.size());
  std::vector<std::optional<json>> failures(claims.size());
  ParallelFor(claims.size(), ResolveJobs(a.jobs), [&](std::size_t i) {
    const ClaimInput &c = claims[i];
    try {
      NegationCandidate n =
          random_baseline
              ? RandomEntityBaseline(linker, c.text,
                                     StableHash({std::to_string(seed.value), c.id}),
                                     config.type_match)
              : kbin->GetNegation(c.text);
      results[i] = NegationJson(c, n, method);
    } catch (const Error &e) {
      if (!IsPerRecordError(e.code())) throw;
      failures[i] = FailureJson(c.id, e);
    }
  });

  std::vector<json> records;
  json failed = json::array();
  for (std::size_t i = 0; i < claims.size(); ++i) {
    if (results[i]) records.push_back(std::move(*results[i]));
    if (failures[i]) failed.push_back(std::move(*failures[i]));
  }
  WriteLines(a.out, records);
  if (!failed.empty()) err << "negate: " << failed.size() << " claim(s) not negated\n";

  Manifest manifest("negate", args);
  manifest.AddInput("kb", a.kb);
  if (!a.vectors.empty()) manifest.AddInput("vectors", a.vectors);
  manifest.AddInput("claims", a.claims);
  manifest.AddOutput(a.out, records.size());
  manifest.SetSeed(seed);
  manifest.config() = {{"method", method},
                       {"top_n_concepts", a.top_n},
                       {"max_aliases_per_concept",
                        a.max_aliases ? json(*a.max_aliases) : json(nullptr)},
                       {"type_match", a.exact_types ? "exact" : "intersect"},
                       {"backends", BackendOptionsJson(a.backends)}};
  manifest.report() = {{"claims", claims.size()}, {"negated", records.size()},
                       {"failed", std::move(failed)}};
  manifest.WriteBeside(a.out);
  return kExitOk;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::string method;
  std::string citances;
  std::string out;
  std::string kb;
  std::optional<std::size_t> k;
  std::optional<std::size_t> jobs;
  SeedFlag seed;
  BackendOptions backends;
};

std::vector<CitanceRecord> ReadCitances(const fs::path &path) {
  std::vector<CitanceRecord> out;
  ForEachJsonLine(path, [&](const json &j, std::size_t) { out.push_back(j.get<CitanceRecord>()); });
  return out;
}

int Generate(GenerateArgs &a, const std::vector<std::string> &args, std::ostream &err) {
  const ClaimMethod method = ParseClaimMethod(a.method);
  if (method == ClaimMethod::kEntity && a.kb.empty()) {
    throw UsageError("--kb is required for --method entity");
  }
  if (a.k && *a.k == 0) throw UsageError("--k must be positive");
  ApplyEnvironment(a.backends);
  const RunSeed seed = a.seed.Resolve(err);

  const KnowledgeBase kb = a.kb.empty() ? KnowledgeBase() : KnowledgeBase::Load(a.kb);
  const std::vector<CitanceRecord> citances = ReadCitances(a.citances);
  if (!citances.empty()) RequireBackend(a.backends.generator, "--generator");
  const EntityLinker linker(kb);
  std::unique_ptr<ScorerGateway> gateway = MakeGateway(a.backends);
  const ClaimGenerator generator(linker, *gateway, seed.value);

  std::vector<std::vector<Claim>> results(citances.size());
  std::vector<std::optional<json>> failures(citances.size());
  ParallelFor(citances.size(), ResolveJobs(a.jobs), [&](std::size_t i) {
    try {
      results[i] = method == ClaimMethod::kEntity ? generator.Entity(citances[i])
                                                  : generator.Direct(citances[i], a.k);
    } catch (const Error &e) {
      if (!IsPerRecordError(e.code())) throw;
      failures[i] = FailureJson(citances[i].id, e);
    }
  });

  std::vector<json> records;
  json failed = json::array();
  for (std::size_t i = 0; i < citances.size(); ++i) {
    for (const Claim &c : results[i]) records.push_back(c);
    if (failures[i]) failed.push_back(std::move(*failures[i]));
  }
  WriteLines(a.out, records);
  if (!failed.empty()) err << "generate: " << failed.size() << " citance(s) failed\n";

  Manifest manifest("generate", args);
  if (!a.kb.empty()) manifest.AddInput("kb", a.kb);
  manifest.AddInput("citances", a.citances);
  manifest.AddOutput(a.out, records.size());
  manifest.SetSeed(seed);
  manifest.config() = {{"method", ClaimMethodName(method)},
                       {"k", a.k ? json(*a.k) : json(nullptr)},
                       {"backends", BackendOptionsJson(a.backends)}};
  manifest.report() = {{"citances", citances.size()}, {"claims", records.size()},
                       {"failed", std::move(failed)}};
  manifest.WriteBeside(a.out);
  return kExitOk;
}

// ---------------------------------------------------------------- build-dataset

struct DatasetArgs {
  std::string claims;
  std::string negations;
  std::string citances;
  std::string corpus;
  std::string out;
  std::string scifact_out;
  std::optional<std::size_t> max_cited;
  std::optional<std::size_t> label_cap;
  std::string nei_ratio = "1:1";
};

std::pair<std::size_t, std::size_t> ParseRatio(const std::string &ratio) {
  const std::size_t colon = ratio.find(':');
  try {
    if (colon == std::string::npos) throw std::invalid_argument(ratio);
    std::size_t used_a = 0, used_b = 0;
    const std::string a = ratio.substr(0, colon), b = ratio.substr(colon + 1);
    const unsigned long x = std::stoul(a, &used_a), y = std::stoul(b, &used_b);
    if (used_a != a.size() || used_b != b.size() || a.starts_with('-') || b.starts_with('-')) {
      throw std::invalid_argument(ratio);
    }
    return {x, y};
  } catch (const std::logic_error &) {
    throw UsageError("--nei-ratio must look like claims:negations, got '" + ratio + "'");
  }
}

NegationCandidate CandidateFromJson(const json &j) {
  NegationCandidate n;
  n.text = j.at("negation").get<std::string>();
  if (auto r = j.find("replaced"); r != j.end() && r->is_object()) {
    n.source_entity.text = r->value("surface", std::string());
    n.source_entity.start = r->value("start", std::size_t{0});
    n.source_entity.end = r->value("end", std::size_t{0});
    if (r->contains("cui") && (*r)["cui"].is_string()) n.source_entity.cui = (*r)["cui"];
    n.replacement_cui = r->value("replacement_cui", std::string());
    n.replacement_surface = r->value("replacement_surface", std::string());
  }
  if (auto s = j.find("scores"); s != j.end() && s->is_object()) {
    if (s->contains("perplexity") && (*s)["perplexity"].is_number()) {
      n.perplexity = (*s)["perplexity"].get<double>();
    }
    if (s->contains("contradiction") && (*s)["contradiction"].is_number()) {
      n.contradiction = (*s)["contradiction"].get<double>();
    }
  }
  return n;
}

int BuildDatasetCommand(const DatasetArgs &a, const std::vector<std::string> &args,
                        std::ostream &out) {
  const auto [nei_claims, nei_negations] = ParseRatio(a.nei_ratio);

  std::vector<Claim> claims;
  ForEachJsonLine(a.claims, [&](const json &j, std::size_t) { claims.push_back(j.get<Claim>()); });
  std::map<std::string, std::string> id_by_text;
  for (const Claim &c : claims) id_by_text.emplace(c.text, c.id);

  // Negations are keyed by claim_id, or matched on claim text when absent.
  std::map<std::string, NegationCandidate> negations;
  std::size_t unmatched = 0;
  if (!a.negations.empty()) {
    std::set<std::string> known;
    for (const Claim &c : claims) known.insert(c.id);
    ForEachJsonLine(a.negations, [&](const json &j, std::size_t) {
      std::string id;
      if (j.contains("claim_id") && j["claim_id"].is_string()) {
        id = j["claim_id"].get<std::string>();
      } else if (auto it = id_by_text.find(j.at("claim").get<std::string>());
                 it != id_by_text.end()) {
        id = it->second;
      }
      if (id.empty() || !known.contains(id)) {
        ++unmatched;
        return;
      }
      negations.insert_or_assign(id, CandidateFromJson(j));
    });
  }

  std::map<std::string, CitanceRecord> citances;
  for (CitanceRecord &r : ReadCitances(a.citances)) {
    const std::string id = r.id;
    if (!citances.emplace(id, std::move(r)).second) {
      throw Error(ErrorCode::kMalformedRecord, "duplicate citance id " + id, a.citances);
    }
  }
  std::map<std::string, DocumentRecord> corpus;
  ForEachJsonLine(a.corpus, [&](const json &j, std::size_t) {
    DocumentRecord d = j.get<DocumentRecord>();
    const std::string id = d.doc_id;
    corpus.insert_or_assign(id, std::move(d));
  });

  DatasetConfig config;
  config.max_cited = a.max_cited;
  config.label_cap = a.label_cap;
  config.nei_claims = nei_claims;
  config.nei_negations = nei_negations;
  DatasetReport report;
  const std::vector<FactInstance> instances =
      BuildDataset(claims, negations, citances, corpus, config, &report);

  std::vector<json> records(instances.begin(), instances.end());
  WriteLines(a.out, records);
  Manifest manifest("build-dataset", args);
  manifest.AddInput("claims", a.claims);
  if (!a.negations.empty()) manifest.AddInput("negations", a.negations);
  manifest.AddInput("citances", a.citances);
  manifest.AddInput("corpus", a.corpus);
  manifest.AddOutput(a.out, records.size());
  if (!a.scifact_out.empty()) {
    const std::vector<json> scifact = SciFactExport(instances, citances);
    WriteLines(a.scifact_out, scifact);
    manifest.AddOutput(a.scifact_out, scifact.size());
  }

  json missing = json::array();
  for (const auto &[cit, doc] : report.missing_docs) {
    missing.push_back({{"citance_id", cit}, {"doc_id", doc}});
  }
  const json stats = StatsToJson(ComputeStats(instances));
  manifest.config() = {{"max_cited", a.max_cited ? json(*a.max_cited) : json(nullptr)},
                       {"label_cap", a.label_cap ? json(*a.label_cap) : json(nullptr)},
                       {"nei_ratio", {nei_claims, nei_negations}}};
  manifest.report() = {{"stats", stats},
                       {"missing_docs", std::move(missing)},
                       {"duplicates_dropped", report.duplicates_dropped},
                       {"negations_ignored", report.negations_ignored + unmatched}};
  manifest.WriteBeside(a.out);
  out << stats.dump(2) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
  std::string out;
  // rouge
  std::string candidate;
  std::string reference;
  std::string pairs;
  // max-avg / yield
  std::string claims;
  std::string references;
  std::string variant = "all";
  // alpha / agreement
  std::string ratings;
  std::vector<std::string> criteria;
  std::string metric;
  // yield / negation-table
  std::string annotations;
};

// Writes eval results to --out (with a manifest) or standard output.
void EmitEval(const EvalArgs &a, const std::string &command, const std::vector<std::string> &args,
              const std::vector<std::pair<std::string, fs::path>> &inputs,
              const std::vector<json> &records, std::ostream &out) {
  if (a.out.empty()) {
    for (const json &r : records) WriteJsonLine(out, r);
    return;
  }
  WriteLines(a.out, records);
  Manifest manifest(command, args);
  for (const auto &[role, path] : inputs) manifest.AddInput(role, path);
  manifest.AddOutput(a.out, records.size());
  manifest.WriteBeside(a.out);
}

json RougeJson(const RougeScores &s) { return {{"r1", s.r1}, {"r2", s.r2}, {"rl", s.rl}}; }

int EvalRouge(const EvalArgs &a, const std::vector<std::string> &args, std::ostream &out) {
  std::vector<json> records;
  std::vector<std::pair<std::string, fs::path>> inputs;
  if (!a.pairs.empty()) {
    if (!a.candidate.empty() || !a.reference.empty()) {
      throw UsageError("use either --pairs or --candidate/--reference");
    }
    inputs.emplace_back("pairs", a.pairs);
    ForEachJsonLine(a.pairs, [&](const json &j, std::size_t line) {
      json r = RougeJson(Rouge(j.at("candidate").get<std::string>(),
                               j.at("reference").get<std::string>()));
      r["line"] = line;
      r["metadata"] = EvalMetadata();
      records.push_back(std::move(r));
    });
  } else {
    if (a.candidate.empty() || a.reference.empty()) {
      throw UsageError("--candidate and --reference are required without --pairs");
    }
    json r = RougeJson(Rouge(a.candidate, a.reference));
    r["metadata"] = EvalMetadata();
    records.push_back(std::move(r));
  }
  EmitEval(a, "eval rouge", args, inputs, records, out);
  return kExitOk;
}

std::vector<RougeVariant> Variants(const std::string &name) {
  if (name == "all") return {RougeVariant::kR1, RougeVariant::kR2, RougeVariant::kRL};
  return {ParseRougeVariant(name)};
}

int EvalMaxAvg(const EvalArgs &a, const std::vector<std::string> &args, std::ostream &out) {
  const std::vector<RougeVariant> variants = Variants(a.variant);
  std::vector<std::pair<std::string, std::string>> generated;
  std::set<std::string> citances;
  ForEachJsonLine(a.claims, [&](const json &j, std::size_t) {
    std::string cit = j.at("citance_id").get<std::string>();
    citances.insert(cit);
    generated.emplace_back(std::move(cit), j.at("text").get<std::string>());
  });
  std::map<std::string, std::vector<std::string>> references;
  ForEachJsonLine(a.references, [&](const json &j, std::size_t) {
    auto &refs = references[j.at("citance_id").get<std::string>()];
    for (const auto &r : j.at("references")) refs.push_back(r.get<std::string>());
  });
  json scores = json::object();
  for (RougeVariant v : variants) {
    scores[std::string(RougeVariantName(v))] = MaxAvgScore(generated, references, v);
  }
  json r{{"max_avg", std::move(scores)},
         {"claims", generated.size()},
         {"citances", citances.size()},
         {"metadata", EvalMetadata()}};
  EmitEval(a, "eval max-avg", args, {{"claims", a.claims}, {"references", a.references}}, {r},
           out);
  return kExitOk;
}

RatingMatrix MatrixFromJson(const json &j, const std::string &where) {
  if (!j.is_array()) throw Error(ErrorCode::kMalformedRecord, "rating matrix must be an array", where);
  RatingMatrix m;
  for (const json &row : j) {
    if (!row.is_array()) throw Error(ErrorCode::kMalformedRecord, "matrix row must be an array", where);
    auto &r = m.emplace_back();
    for (const json &cell : row) {
      if (cell.is_null()) {
        r.emplace_back();
      } else if (cell.is_number()) {
        r.emplace_back(cell.get<double>());
      } else if (cell.is_string() && cell.get<std::string>() == "SKIP") {
        r.emplace_back(0.0);
      } else {
        throw Error(ErrorCode::kMalformedRecord, "matrix cell must be a number or null", where);
      }
    }
  }
  return m;
}

// A bare matrix, {"matrix": [...]}, or an annotation export with "matrices".
std::vector<std::pair<std::string, RatingMatrix>> LoadMatrices(
    const fs::path &path, const std::vector<std::string> &criteria) {
  const json doc = ReadJsonDocument(path);
  std::vector<std::pair<std::string, RatingMatrix>> out;
  if (doc.is_array()) {
    out.emplace_back("matrix", MatrixFromJson(doc, path.string()));
  } else if (doc.contains("matrix")) {
    out.emplace_back(doc.value("criterion", std::string("matrix")),
                     MatrixFromJson(doc["matrix"], path.string()));
  } else if (doc.contains("matrices")) {
    const json &matrices = doc["matrices"];
    if (criteria.empty()) {
      for (const auto &[name, m] : matrices.items()) {
        out.emplace_back(name, MatrixFromJson(m, path.string()));
      }
    } else {
      for (const std::string &c : criteria) {
        if (!matrices.contains(c)) {
          throw Error(ErrorCode::kInvalidArgument, "no ratings for criterion " + c, path.string());
        }
        out.emplace_back(c, MatrixFromJson(matrices[c], path.string()));
      }
    }
  } else {
    throw Error(ErrorCode::kMalformedRecord, "expected a rating matrix or an export", path.string());
  }
  return out;
}

AlphaMetric DefaultMetric(const std::string &criterion) {
  return criterion == "faithfulness" ? AlphaMetric::kInterval : AlphaMetric::kNominal;
}

int EvalAlpha(const EvalArgs &a, const std::vector<std::string> &args, std::ostream &out,
              bool agreement) {
  std::vector<json> records;
  for (const auto &[criterion, matrix] : LoadMatrices(a.ratings, a.criteria)) {
    const AlphaMetric metric = a.metric.empty() ? DefaultMetric(criterion) : ParseAlphaMetric(a.metric);
    json r{{"criterion", criterion}};
    if (agreement) {
      r["exact_agreement"] = ExactAgreement(matrix);
      r["metadata"] = EvalMetadata();
    } else {
      const AlphaResult alpha = KrippendorffAlpha(matrix, metric);
      r["alpha"] = alpha.alpha;
      r["zero_expected_disagreement"] = alpha.zero_expected_disagreement;
      r["pairable_values"] = alpha.pairable_values;
      r["metadata"] = EvalMetadata(metric);
    }
    records.push_back(std::move(r));
  }
  EmitEval(a, agreement ? "eval agreement" : "eval alpha", args, {{"ratings", a.ratings}},
           records, out);
  return kExitOk;
}

std::optional<int> OptionalInt(const json &row, const char *key) {
  auto it = row.find(key);
  if (it == row.end() || it->is_null()) return std::nullopt;
  return it->get<int>();
}

int EvalYield(const EvalArgs &a, const std::vector<std::string> &args, std::ostream &out) {
  std::map<std::string, std::vector<std::string>> by_method;
  ForEachJsonLine(a.claims, [&](const json &j, std::size_t) {
    by_method[j.at("method").get<std::string>()].push_back(j.at("id").get<std::string>());
  });
  const json doc = ReadJsonDocument(a.annotations);
  std::vector<QualityJudgment> judgments;
  for (const json &row : doc.at("rows")) {
    QualityJudgment q;
    q.claim_id = row.at("claim_id").get<std::string>();
    q.annotator = row.at("annotator").get<std::string>();
    q.rating.annotator = q.annotator;
    q.rating.task_id = row.value("task_id", q.claim_id);
    q.rating.protocol = Protocol::kQuality;
    q.rating.fluency = OptionalInt(row, "fluency");
    q.rating.decontextualized = OptionalInt(row, "decontextualized");
    q.rating.atomicity = OptionalInt(row, "atomicity");
    q.rating.faithfulness = OptionalInt(row, "faithfulness");
    judgments.push_back(std::move(q));
  }
  std::vector<json> records;
  for (const YieldRow &y : YieldTable(by_method, judgments)) {
    records.push_back({{"method", y.method},
                       {"generated", y.generated},
                       {"annotated", y.annotated},
                       {"accepted", y.accepted},
                       {"precision", y.precision},
                       {"metadata", EvalMetadata()}});
  }
  EmitEval(a, "eval yield", args, {{"claims", a.claims}, {"annotations", a.annotations}},
           records, out);
  return kExitOk;
}

int EvalNegationTable(const EvalArgs &a, const std::vector<std::string> &args, std::ostream &out) {
  const json doc = ReadJsonDocument(a.annotations);
  std::vector<NegationJudgment> judgments;
  for (const json &row : doc.at("rows")) {
    for (const json &r : row.at("ratings")) {
      judgments.push_back({r.at("method").get<std::string>(), EntailmentFromJson(r.at("entailment"))});
    }
  }
  std::vector<json> records;
  for (const NegationRow &n : NegationTable(judgments)) {
    records.push_back({{"method", n.method},
                       {"total", n.total},
                       {"fluent", n.fluent},
                       {"definitely_false", n.definitely_false},
                       {"might_be_true", n.might_be_true},
                       {"definitely_true", n.definitely_true},
                       {"skipped", n.skipped},
                       {"metadata", EvalMetadata()}});
  }
  EmitEval(a, "eval negation-table", args, {{"annotations", a.annotations}}, records, out);
  return kExitOk;
}

// ---------------------------------------------------------------- serve

struct ServeArgs {
  std::string host = "127.0.0.1";
  int port = 8700;
  std::string data_dir = "annotation-data";
  std::string tasks;
  std::vector<std::string> annotators;
  std::string ui_dir;
  SeedFlag seed;
  BackendOptions backends;
};

// A seed stored by an earlier session wins over a fresh random one, so slot
// orders stay stable across restarts.
RunSeed ServeSeed(const ServeArgs &a, std::ostream &err) {
  const fs::path stored = fs::path(a.data_dir) / "run.json";
  std::optional<uint64_t> previous;
  if (fs::exists(stored)) {
    const json doc = ReadJsonDocument(stored);
    if (doc.contains("seed")) previous = doc["seed"].get<uint64_t>();
  }
  const fs::path log = fs::path(a.data_dir) / "ratings.jsonl";
  const bool has_ratings = fs::exists(log) && fs::file_size(log) > 0;
  if (a.seed.value && previous && *a.seed.value != *previous && has_ratings) {
    throw Error(ErrorCode::kInvalidArgument,
                "--seed differs from the seed of the stored ratings (" +
                    std::to_string(*previous) + ")",
                stored.string());
  }
  if (!a.seed.value && previous) return {*previous, true};
  return a.seed.Resolve(err);
}

int Serve(ServeArgs &a, const std::vector<std::string> &args, std::ostream &out,
          std::ostream &err) {
  ApplyEnvironment(a.backends);
  fs::create_directories(a.data_dir);
  const RunSeed seed = ServeSeed(a, err);
  std::vector<AnnotationTask> tasks;
  if (!a.tasks.empty()) tasks = AnnotationService::LoadTasks(a.tasks);
  AnnotationService annotations(std::move(tasks),
                                std::set<std::string>(a.annotators.begin(), a.annotators.end()),
                                a.data_dir, seed.value);
  const ScorerService scorers(MakePerplexityBackend(a.backends), MakeNliBackend(a.backends),
                              MakeGeneratorBackend(a.backends));

  Manifest manifest("serve", args);
  if (!a.tasks.empty()) manifest.AddInput("tasks", a.tasks);
  manifest.SetSeed(seed);
  manifest.config() = {{"host", a.host},
                       {"port", a.port},
                       {"annotators", a.annotators},
                       {"ui_dir", a.ui_dir},
                       {"backends", BackendOptionsJson(a.backends)}};
  manifest.WriteBeside(fs::path(a.data_dir) / "ratings.jsonl");

  // Signals are taken synchronously by a watcher thread; server threads
  // inherit the blocked mask.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  std::optional<fs::path> ui;
  if (!a.ui_dir.empty()) ui = a.ui_dir;
  HttpServer server(
      [&](const HttpRequest &request) {
        if (std::optional<HttpResponse> r = scorers.Handle(request)) return *r;
        return annotations.Handle(request);
      },
      ui);
  const int port = server.Start(a.host, a.port);
  out << "listening on http://" << a.host << ":" << port << std::endl;
  std::jthread watcher([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.Stop();
  });
  server.Wait();
  watcher.detach();
  pthread_sigmask(SIG_UNBLOCK, &signals, nullptr);
  return kExitOk;
}

// ---------------------------------------------------------------- rerun

std::vector<std::string> RerunArgs(const fs::path &manifest_path) {
  const json doc = ReadJsonDocument(manifest_path);
  std::vector<std::string> args = doc.at("args").get<std::vector<std::string>>();
  if (doc.value("seed_source", std::string()) == "random") {
    args.push_back("--seed");
    args.push_back(std::to_string(doc.at("seed").get<uint64_t>()));
  }
  return args;
}

}  // namespace

int Run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"claimkit: scientific claim generation, negation and evaluation tools", "claimkit"};
  app.set_version_flag("--version", CLAIMKIT_VERSION);
  app.require_subcommand(1);
  std::function<int()> action;

  // kb
  KbArgs kb_args;
  CLI::App *kb = app.add_subcommand("kb", "Validate or normalize a concept knowledge base");
  kb->require_subcommand(1);
  CLI::App *kb_validate = kb->add_subcommand("validate", "Check a KB and report its contents");
  kb_validate->add_option("--kb", kb_args.kb, "Concept JSON lines")->required();
  kb_validate->add_option("--vectors", kb_args.vectors, "Concept vector CSV");
  kb_validate->callback([&] { action = [&] { return KbValidate(kb_args, out); }; });
  CLI::App *kb_build = kb->add_subcommand("build", "Write a normalized KB");
  kb_build->add_option("--kb", kb_args.kb, "Concept JSON lines")->required();
  kb_build->add_option("--out", kb_args.out, "Normalized KB output")->required();
  kb_build->add_option("--vectors", kb_args.vectors, "Concept vector CSV");
  kb_build->add_option("--vectors-out", kb_args.vectors_out, "Normalized vector output")
      ->needs(kb_build->get_option("--vectors"));
  kb_build->callback([&] { action = [&] { return KbBuild(kb_args, args, out); }; });

  // link
  LinkArgs link_args;
  CLI::App *link = app.add_subcommand("link", "Print KB mentions found in text");
  link->add_option("--kb", link_args.kb, "Concept JSON lines")->required();
  link->add_option("--text", link_args.texts, "Text to scan; repeatable")->required();
  link->callback([&] { action = [&] { return Link(link_args, out); }; });

  // negate
  NegateArgs negate_args;
  CLI::App *negate = app.add_subcommand("negate", "Negate claims by entity replacement");
  negate->add_option("--kb", negate_args.kb, "Concept JSON lines")->required();
  negate->add_option("--vectors", negate_args.vectors, "Concept vector CSV");
  negate->add_option("--claims", negate_args.claims, "Claim JSON lines")->required();
  negate->add_option("--out", negate_args.out, "Negation JSON lines output")->required();
  negate->add_option("--baseline", negate_args.baseline, "Use a baseline instead of KBIN")
      ->check(CLI::IsMember({"random-entity"}));
  negate->add_option("--top-n", negate_args.top_n, "Nearest same-type concepts kept");
  negate->add_option("--max-aliases", negate_args.max_aliases, "Surfaces tried per concept");
  negate->add_flag("--exact-types", negate_args.exact_types, "Require identical type sets");
  negate->add_option("--jobs", negate_args.jobs, "Worker threads")->check(CLI::PositiveNumber);
  negate_args.seed.Attach(negate);
  AttachBackends(negate, negate_args.backends, true, true, false);
  negate->callback([&] { action = [&] { return Negate(negate_args, args, err); }; });

  // generate
  GenerateArgs generate_args;
  CLI::App *generate = app.add_subcommand("generate", "Generate claims from citances");
  generate->add_option("--method", generate_args.method, "entity or direct")
      ->required()
      ->check(CLI::IsMember({"entity", "direct"}));
  generate->add_option("--citances", generate_args.citances, "Citance JSON lines")->required();
  generate->add_option("--out", generate_args.out, "Claim JSON lines output")->required();
  generate->add_option("--kb", generate_args.kb, "Concept JSON lines");
  generate->add_option("--k", generate_args.k, "Samples per citance for direct generation");
  generate->add_option("--jobs", generate_args.jobs, "Worker threads")->check(CLI::PositiveNumber);
  generate_args.seed.Attach(generate);
  AttachBackends(generate, generate_args.backends, false, false, true);
  generate->callback([&] { action = [&] { return Generate(generate_args, args, err); }; });

  // build-dataset
  DatasetArgs dataset_args;
  CLI::App *dataset = app.add_subcommand("build-dataset", "Pair claims with evidence documents");
  dataset->add_option("--claims", dataset_args.claims, "Claim JSON lines")->required();
  dataset->add_option("--negations", dataset_args.negations, "Negation JSON lines");
  dataset->add_option("--citances", dataset_args.citances, "Citance JSON lines")->required();
  dataset->add_option("--corpus", dataset_args.corpus, "Document JSON lines")->required();
  dataset->add_option("--out", dataset_args.out, "Fact instance JSON lines output")->required();
  dataset->add_option("--max-cited", dataset_args.max_cited, "Cited documents used per citance");
  dataset->add_option("--nei-ratio", dataset_args.nei_ratio,
                      "NEI slots as claims:negations round robin");
  dataset->add_option("--label-cap", dataset_args.label_cap, "Maximum instances per label");
  dataset->add_option("--scifact-out", dataset_args.scifact_out, "SciFact-style export");
  dataset->callback(
      [&] { action = [&] { return BuildDatasetCommand(dataset_args, args, out); }; });

  // eval
  EvalArgs eval_args;
  CLI::App *eval = app.add_subcommand("eval", "Evaluation metrics and result tables");
  eval->require_subcommand(1);
  auto add_out = [&](CLI::App *cmd) {
    cmd->add_option("--out", eval_args.out, "JSON lines output (default: standard output)");
  };
  CLI::App *rouge = eval->add_subcommand("rouge", "ROUGE-1/2/L F1 of candidate against reference");
  rouge->add_option("--candidate", eval_args.candidate, "Candidate text");
  rouge->add_option("--reference", eval_args.reference, "Reference text");
  rouge->add_option("--pairs", eval_args.pairs, "JSON lines of {candidate, reference}");
  add_out(rouge);
  rouge->callback([&] { action = [&] { return EvalRouge(eval_args, args, out); }; });
  CLI::App *max_avg = eval->add_subcommand("max-avg", "Max-average ROUGE of claims vs references");
  max_avg->add_option("--claims", eval_args.claims, "Claim JSON lines")->required();
  max_avg->add_option("--references", eval_args.references,
                      "JSON lines of {citance_id, references}")
      ->required();
  max_avg->add_option("--variant", eval_args.variant, "r1, r2, rl or all")
      ->check(CLI::IsMember({"r1", "r2", "rl", "all"}));
  add_out(max_avg);
  max_avg->callback([&] { action = [&] { return EvalMaxAvg(eval_args, args, out); }; });
  for (const bool agreement : {false, true}) {
    CLI::App *cmd = eval->add_subcommand(agreement ? "agreement" : "alpha",
                                         agreement ? "Exact pairwise agreement"
                                                   : "Krippendorff's alpha");
    cmd->add_option("--ratings", eval_args.ratings, "Rating matrix or annotation export")
        ->required();
    cmd->add_option("--criterion", eval_args.criteria, "Export criterion; repeatable");
    if (!agreement) {
      cmd->add_option("--metric", eval_args.metric, "nominal, ordinal or interval")
          ->check(CLI::IsMember({"nominal", "ordinal", "interval"}));
    }
    add_out(cmd);
    cmd->callback([&, agreement] {
      action = [&, agreement] { return EvalAlpha(eval_args, args, out, agreement); };
    });
  }
  CLI::App *yield = eval->add_subcommand("yield", "Acceptable-claim yield per method");
  yield->add_option("--claims", eval_args.claims, "Claim JSON lines")->required();
  yield->add_option("--annotations", eval_args.annotations, "Quality annotation export")
      ->required();
  add_out(yield);
  yield->callback([&] { action = [&] { return EvalYield(eval_args, args, out); }; });
  CLI::App *negation_table =
      eval->add_subcommand("negation-table", "Entailment distribution per negation method");
  negation_table->add_option("--annotations", eval_args.annotations, "Negation annotation export")
      ->required();
  add_out(negation_table);
  negation_table->callback(
      [&] { action = [&] { return EvalNegationTable(eval_args, args, out); }; });

  // serve
  ServeArgs serve_args;
  CLI::App *serve = app.add_subcommand("serve", "Run the annotation service and scorer stubs");
  serve->add_option("--host", serve_args.host, "Bind address");
  serve->add_option("--port", serve_args.port, "Port; 0 picks a free one")
      ->check(CLI::Range(0, 65535));
  serve->add_option("--data-dir", serve_args.data_dir, "Rating log directory");
  serve->add_option("--tasks", serve_args.tasks, "Annotation task JSON lines");
  serve->add_option("--annotators", serve_args.annotators, "Registered annotator ids")
      ->delimiter(',');
  serve->add_option("--ui-dir", serve_args.ui_dir, "Static UI bundle served under /ui");
  serve_args.seed.Attach(serve);
  AttachBackends(serve, serve_args.backends, true, true, true);
  serve->callback([&] { action = [&] { return Serve(serve_args, args, out, err); }; });

  // rerun
  std::string rerun_manifest;
  CLI::App *rerun = app.add_subcommand("rerun", "Repeat the run recorded in a run.json");
  rerun->add_option("manifest", rerun_manifest, "run.json path")->required();
  rerun->callback([&] {
    action = [&] { return Run(RerunArgs(rerun_manifest), out, err); };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion &) {
    out << CLAIMKIT_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    // Help for the deepest subcommand that was selected.
    const CLI::App *selected = &app;
    while (true) {
      const auto subs = selected->get_subcommands();
      if (subs.empty()) break;
      selected = subs.front();
    }
    err << selected->help();
    return kExitUsage;
  }

  try {
    return action();
  } catch (const UsageError &e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const nlohmann::json::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const fs::filesystem_error &e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace claimkit::cli
