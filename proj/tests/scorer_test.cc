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

#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <thread>

#include <httplib.h>

#include "claimkit/error.h"
#include "claimkit/hash.h"
#include "claimkit/http.h"
#include "claimkit/http_backend.h"
#include "claimkit/jsonl.h"
#include "claimkit/reference_scorers.h"
#include "claimkit/scorer.h"
#include "claimkit/scorer_service.h"
#include "test_util.h"

namespace claimkit {
namespace {

using testing::Fixture;

class CountingPerplexity : public PerplexityBackend {
 public:
  std::vector<double> Perplexity(const std::vector<std::string> &texts) override {
    ++calls;
    sizes.push_back(texts.size());
    return std::vector<double>(texts.size(), value);
  }
  std::atomic<int> calls{0};
  std::vector<std::size_t> sizes;
  double value = 2.0;
};

class FixedNli : public NliBackend {
 public:
  explicit FixedNli(NliProbs p) : p_(p) {}
  std::vector<NliProbs> Nli(const std::vector<NliPair> &pairs) override {
    return std::vector<NliProbs>(pairs.size(), p_);
  }

 private:
  NliProbs p_;
};

class FixedGenerator : public GeneratorBackend {
 public:
  explicit FixedGenerator(std::vector<std::string> outputs) : outputs_(std::move(outputs)) {}
  std::vector<std::vector<std::string>> Generate(const std::vector<std::string> &inputs, int,
                                                 DecodeStrategy, uint64_t) override {
    return std::vector<std::vector<std::string>>(inputs.size(), outputs_);
  }

 private:
  std::vector<std::string> outputs_;
};

ErrorCode CodeOf(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(NgramPerplexityTest, TrainingSentenceBeatsShuffledTokens) {
  const auto scorer = NgramPerplexity::FromFile(Fixture("ppl_corpus.txt"));
  const std::string sentence = "Amoxicillin is commonly prescribed for pneumonia in children.";
  const std::string shuffled = "children. pneumonia for commonly in Amoxicillin prescribed is";
  EXPECT_LT(scorer->Score(sentence), scorer->Score(shuffled));
  EXPECT_GT(scorer->Score(sentence), 1.0);
  EXPECT_EQ(scorer->Perplexity({sentence})[0], scorer->Score(sentence));
}

TEST(NgramPerplexityTest, HandComputedTinyCorpus) {
  // Corpus "ab": alphabet {a, b, EOS} plus one unseen slot, V = 4.
  // Trigram events: (BOS BOS a), (BOS a b), (a b EOS), each seen once with
  // its context seen once: p = (1 + 1) / (1 + 4) = 0.4 for all three.
  const NgramPerplexity scorer({"ab"});
  EXPECT_NEAR(scorer.Score("ab"), 1.0 / 0.4, 1e-12);
}

TEST(TablePerplexityTest, Lookup) {
  TablePerplexity table({{"a b", 5.0}});
  EXPECT_EQ(table.Perplexity({"a b"}), std::vector<double>{5.0});
  EXPECT_EQ(CodeOf([&] { table.Perplexity({"missing"}); }),
            ErrorCode::kBackendMalformedResponse);
}

TEST(GatewayTest, EmptyTextRejectedBeforeBackend) {
  auto backend = std::make_shared<CountingPerplexity>();
  ScorerGateway gw({}, backend, nullptr, nullptr);
  EXPECT_EQ(CodeOf([&] { gw.Perplexity({"ok", ""}); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(backend->calls, 0);
}

TEST(GatewayTest, BatchesRequests) {
  auto backend = std::make_shared<CountingPerplexity>();
  GatewayConfig config;
  config.batch_size = 2;
  ScorerGateway gw(config, backend, nullptr, nullptr);
  EXPECT_EQ(gw.Perplexity({"a", "b", "c", "d", "e"}).size(), 5u);
  EXPECT_EQ(backend->sizes, (std::vector<std::size_t>{2, 2, 1}));
}

TEST(GatewayTest, RejectsNonPositivePerplexity) {
  auto backend = std::make_shared<CountingPerplexity>();
  backend->value = 0.0;
  ScorerGateway gw({}, backend, nullptr, nullptr);
  EXPECT_EQ(CodeOf([&] { gw.Perplexity({"a"}); }), ErrorCode::kBackendMalformedResponse);
}

TEST(GatewayTest, MissingBackendIsUnavailable) {
  ScorerGateway gw({}, nullptr, nullptr, nullptr);
  EXPECT_EQ(CodeOf([&] { gw.Perplexity({"a"}); }), ErrorCode::kBackendUnavailable);
  EXPECT_EQ(CodeOf([&] { gw.Nli("a", "b"); }), ErrorCode::kBackendUnavailable);
  EXPECT_EQ(CodeOf([&] { gw.Generate({"x", 1}); }), ErrorCode::kBackendUnavailable);
  EXPECT_FALSE(gw.CountNounChunks("x").has_value());
}

TEST(NliTest, TableLookupAndUniformDefault) {
  const NliProbs p{0.1, 0.2, 0.7};
  auto table = std::make_shared<TableNli>(std::map<TableNli::Key, NliProbs>{{{"p", "h"}, p}});
  ScorerGateway gw({}, nullptr, table, nullptr);
  EXPECT_EQ(gw.Nli("p", "h"), p);
  const NliProbs u = gw.Nli("p", "other");
  EXPECT_DOUBLE_EQ(u.entailment, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(u.neutral, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(u.contradiction, 1.0 / 3.0);
}

TEST(NliTest, NonNormalizedResponseRejected) {
  ScorerGateway gw({}, nullptr, std::make_shared<FixedNli>(NliProbs{0.5, 0.5, 0.5}), nullptr);
  EXPECT_EQ(CodeOf([&] { gw.Nli("p", "h"); }), ErrorCode::kBackendMalformedResponse);
  EXPECT_EQ(CodeOf([] { ScorerGateway::Normalize({-0.1, 0.6, 0.5}); }),
            ErrorCode::kBackendMalformedResponse);
}

TEST(NliTest, SmallRoundingIsRenormalized) {
  const NliProbs n = ScorerGateway::Normalize({0.2, 0.3, 0.5004});
  EXPECT_NEAR(n.entailment + n.neutral + n.contradiction, 1.0, 1e-12);
}

TEST(GenerateTest, EchoStubSuffixes) {
  ScorerGateway gw({}, nullptr, nullptr, std::make_shared<EchoGenerator>());
  EXPECT_EQ(gw.Generate({"x", 2}), (std::vector<std::string>{"CLAIM: x #1", "CLAIM: x #2"}));
}

TEST(GenerateTest, Preconditions) {
  ScorerGateway gw({}, nullptr, nullptr, std::make_shared<EchoGenerator>());
  EXPECT_EQ(CodeOf([&] { gw.Generate({"x", 0}); }), ErrorCode::kInvalidArgument);
  ScorerGateway empty({}, nullptr, nullptr, std::make_shared<FixedGenerator>(
                                                  std::vector<std::string>{"", ""}));
  EXPECT_EQ(CodeOf([&] { empty.Generate({"x", 2}); }), ErrorCode::kEmptyGeneration);
  ScorerGateway many({}, nullptr, nullptr, std::make_shared<FixedGenerator>(
                                                 std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(CodeOf([&] { many.Generate({"x", 2}); }), ErrorCode::kBackendMalformedResponse);
}

// Tracks the largest number of overlapping calls.
class SlowPerplexity : public PerplexityBackend {
 public:
  std::vector<double> Perplexity(const std::vector<std::string> &texts) override {
    const int now = ++active;
    int seen = peak.load();
    while (now > seen && !peak.compare_exchange_weak(seen, now)) {
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
    --active;
    return std::vector<double>(texts.size(), 3.0);
  }
  std::atomic<int> active{0};
  std::atomic<int> peak{0};
};

TEST(GatewayTest, InFlightCallsAreBounded) {
  auto backend = std::make_shared<SlowPerplexity>();
  GatewayConfig config;
  config.max_in_flight = 2;
  ScorerGateway gw(config, backend, nullptr, nullptr);
  std::vector<std::jthread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&] {
      for (int i = 0; i < 3; ++i) gw.Perplexity({"text"});
    });
  }
  threads.clear();
  EXPECT_LE(backend->peak.load(), 2);
  EXPECT_GE(backend->peak.load(), 1);
}

TEST(GatewayTest, SlotWaitTimesOut) {
  auto backend = std::make_shared<SlowPerplexity>();
  GatewayConfig config;
  config.max_in_flight = 1;
  config.timeout = std::chrono::milliseconds(1);
  ScorerGateway gw(config, backend, nullptr, nullptr);
  std::atomic<int> unavailable{0};
  std::vector<std::jthread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&] {
      try {
        gw.Perplexity({"text"});
      } catch (const Error &e) {
        if (e.code() == ErrorCode::kBackendUnavailable) ++unavailable;
      }
    });
  }
  threads.clear();
  EXPECT_GE(unavailable.load(), 1);
}

class ScorerHttpTest : public ::testing::Test {
 protected:
  void SetUp() override {
    replay_ = ReplayGenerator::Load(Fixture("generate_recording.jsonl"));
    perplexity_ = std::make_shared<TablePerplexity>(std::map<std::string, double>{{"a b", 5.0}});
    nli_ = std::make_shared<TableNli>(
        std::map<TableNli::Key, NliProbs>{{{"p", "h"}, NliProbs{0.25, 0.25, 0.5}}});
    service_ = std::make_unique<ScorerService>(perplexity_, nli_, replay_);
    server_ = std::make_unique<HttpServer>([this](const HttpRequest &r) {
      if (auto resp = service_->Handle(r)) return *resp;
      return JsonError(404, "NotFound", r.path);
    });
    port_ = server_->Start("127.0.0.1", 0);
    client_ = std::make_unique<HttpScorerClient>("http://127.0.0.1:" + std::to_string(port_),
                                                 std::chrono::milliseconds(5000));
  }
  void TearDown() override { server_->Stop(); }

  std::shared_ptr<ReplayGenerator> replay_;
  std::shared_ptr<TablePerplexity> perplexity_;
  std::shared_ptr<TableNli> nli_;
  std::unique_ptr<ScorerService> service_;
  std::unique_ptr<HttpServer> server_;
  std::unique_ptr<HttpScorerClient> client_;
  int port_ = 0;
};

TEST_F(ScorerHttpTest, GenerateRoundTripMatchesRecording) {
  std::size_t checked = 0;
  ForEachJsonLine(Fixture("generate_recording.jsonl"), [&](const Json &j, std::size_t) {
    const auto outputs = client_->Generate(
        {j.at("input").get<std::string>()}, j.at("num_outputs").get<int>(),
        ParseDecodeStrategy(j.at("strategy").get<std::string>()), j.at("seed").get<uint64_t>());
    ASSERT_EQ(outputs.size(), 1u);
    EXPECT_EQ(Json(outputs[0]).dump(), j.at("outputs").dump());
    ++checked;
  });
  EXPECT_GT(checked, 10u);
}

TEST_F(ScorerHttpTest, PerplexityAndNliRoundTrip) {
  EXPECT_EQ(client_->Perplexity({"a b"}), std::vector<double>{5.0});
  const std::vector<NliProbs> p = client_->Nli({{"p", "h"}, {"x", "y"}});
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[0], (NliProbs{0.25, 0.25, 0.5}));
  EXPECT_EQ(p[1], NliProbs{});
}

TEST_F(ScorerHttpTest, GatewayOverHttp) {
  auto client = std::shared_ptr<HttpScorerClient>(std::move(client_));
  ScorerGateway gw({}, client, client, client);
  EXPECT_EQ(gw.Perplexity({"a b"}), std::vector<double>{5.0});
  EXPECT_EQ(gw.Nli("p", "h").contradiction, 0.5);
}

TEST_F(ScorerHttpTest, ServiceErrorsMapToStatusCodes) {
  httplib::Client raw("127.0.0.1", port_);
  auto bad_json = raw.Post("/v1/perplexity", "{not json", "application/json");
  ASSERT_TRUE(bad_json);
  EXPECT_EQ(bad_json->status, 400);
  auto missing = raw.Post("/v1/perplexity", R"({"texts":["unknown"]})", "application/json");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 503);
  auto get = raw.Get("/v1/perplexity");
  ASSERT_TRUE(get);
  EXPECT_EQ(get->status, 405);
  EXPECT_EQ(CodeOf([&] { client_->Perplexity({"unknown"}); }), ErrorCode::kBackendUnavailable);
}

TEST(HttpBackendTest, DownServerIsUnavailable) {
  // Bind and release a port so nothing is listening on it.
  int port = 0;
  {
    HttpServer probe([](const HttpRequest &) { return HttpResponse{}; });
    port = probe.Start("127.0.0.1", 0);
    probe.Stop();
  }
  HttpScorerClient client("http://127.0.0.1:" + std::to_string(port),
                          std::chrono::milliseconds(500));
  EXPECT_EQ(CodeOf([&] { client.Perplexity({"a"}); }), ErrorCode::kBackendUnavailable);
}

TEST(HttpBackendTest, GarbageResponseIsMalformed) {
  HttpServer server([](const HttpRequest &) { return HttpResponse{200, "[1,2", "application/json"}; });
  const int port = server.Start("127.0.0.1", 0);
  HttpScorerClient client("http://127.0.0.1:" + std::to_string(port),
                          std::chrono::milliseconds(2000));
  EXPECT_EQ(CodeOf([&] { client.Perplexity({"a"}); }), ErrorCode::kBackendMalformedResponse);
  server.Stop();
}

}  // namespace
}  // namespace claimkit
