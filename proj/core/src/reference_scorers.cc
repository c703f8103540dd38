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

#include "claimkit/reference_scorers.h"

#include <cmath>
#include <fstream>
#include <set>

#include "claimkit/error.h"
#include "claimkit/jsonl.h"
#include "claimkit/text.h"

namespace claimkit {

namespace {

constexpr char32_t kBos = 0x02;
constexpr char32_t kEos = 0x03;

// Code points fit in 21 bits, so three of them pack into one key.
uint64_t Pack(char32_t a, char32_t b) {
  return (static_cast<uint64_t>(a) << 21) | static_cast<uint64_t>(b);
}
uint64_t Pack(char32_t a, char32_t b, char32_t c) {
  return (Pack(a, b) << 21) | static_cast<uint64_t>(c);
}

std::vector<char32_t> Symbols(std::string_view text) {
  std::vector<char32_t> out{kBos, kBos};
  for (const CodePoint &cp : DecodeUtf8(text)) out.push_back(cp.value);
  out.push_back(kEos);
  return out;
}

}  // namespace

NgramPerplexity::NgramPerplexity(const std::vector<std::string> &corpus) {
  std::set<char32_t> alphabet{kEos};
  for (const std::string &sentence : corpus) {
    std::vector<char32_t> s = Symbols(sentence);
    for (std::size_t i = 2; i < s.size(); ++i) {
      alphabet.insert(s[i]);
      ++trigrams_[Pack(s[i - 2], s[i - 1], s[i])];
      ++contexts_[Pack(s[i - 2], s[i - 1])];
    }
  }
  // One extra slot for unseen characters.
  vocabulary_ = alphabet.size() + 1;
}

std::shared_ptr<NgramPerplexity> NgramPerplexity::FromFile(
    const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open corpus", path.string());
  std::vector<std::string> corpus;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) corpus.push_back(line);
  }
  return std::make_shared<NgramPerplexity>(corpus);
}

double NgramPerplexity::Score(std::string_view text) const {
  std::vector<char32_t> s = Symbols(text);
  double nll = 0.0;
  const double v = static_cast<double>(vocabulary_);
  for (std::size_t i = 2; i < s.size(); ++i) {
    auto tri = trigrams_.find(Pack(s[i - 2], s[i - 1], s[i]));
    auto ctx = contexts_.find(Pack(s[i - 2], s[i - 1]));
    const double num = (tri == trigrams_.end() ? 0.0 : tri->second) + 1.0;
    const double den = (ctx == contexts_.end() ? 0.0 : ctx->second) + v;
    nll -= std::log(num / den);
  }
  return std::exp(nll / static_cast<double>(s.size() - 2));
}

std::vector<double> NgramPerplexity::Perplexity(const std::vector<std::string> &texts) {
  std::vector<double> out;
  out.reserve(texts.size());
  for (const std::string &t : texts) out.push_back(Score(t));
  return out;
}

std::shared_ptr<TablePerplexity> TablePerplexity::Load(const std::filesystem::path &path) {
  std::map<std::string, double> table;
  ForEachJsonLine(path, [&](const Json &r, std::size_t) {
    table[r.at("text").get<std::string>()] = r.at("perplexity").get<double>();
  });
  return std::make_shared<TablePerplexity>(std::move(table));
}

std::vector<double> TablePerplexity::Perplexity(const std::vector<std::string> &texts) {
  std::vector<double> out;
  out.reserve(texts.size());
  for (const std::string &t : texts) {
    auto it = table_.find(t);
    if (it != table_.end()) {
      out.push_back(it->second);
    } else if (fallback_ != nullptr) {
      out.push_back(fallback_->Perplexity({t}).at(0));
    } else {
      throw Error(ErrorCode::kBackendMalformedResponse,
                  "no perplexity recorded for '" + t + "'");
    }
  }
  return out;
}

std::shared_ptr<TableNli> TableNli::Load(const std::filesystem::path &path) {
  std::map<Key, NliProbs> table;
  ForEachJsonLine(path, [&](const Json &r, std::size_t) {
    table[{r.at("premise").get<std::string>(), r.at("hypothesis").get<std::string>()}] =
        r.get<NliProbs>();
  });
  return std::make_shared<TableNli>(std::move(table));
}

std::vector<NliProbs> TableNli::Nli(const std::vector<NliPair> &pairs) {
  std::vector<NliProbs> out;
  out.reserve(pairs.size());
  for (const NliPair &p : pairs) {
    auto it = table_.find({p.premise, p.hypothesis});
    out.push_back(it == table_.end() ? NliProbs{} : it->second);
  }
  return out;
}

std::string EchoGenerator::Output(std::string_view input, int index) {
  return "CLAIM: " + std::string(input) + " #" + std::to_string(index);
}

std::vector<std::vector<std::string>> EchoGenerator::Generate(
    const std::vector<std::string> &inputs, int num_outputs, DecodeStrategy, uint64_t) {
  std::vector<std::vector<std::string>> out;
  out.reserve(inputs.size());
  for (const std::string &input : inputs) {
    std::vector<std::string> outputs;
    for (int i = 1; i <= num_outputs; ++i) outputs.push_back(Output(input, i));
    out.push_back(std::move(outputs));
  }
  return out;
}

ReplayGenerator::ReplayGenerator(const std::vector<Recording> &recordings) {
  for (const Recording &r : recordings) {
    responses_[Key(r.input, r.num_outputs, r.strategy, r.seed)] = r.outputs;
  }
}

std::shared_ptr<ReplayGenerator> ReplayGenerator::Load(const std::filesystem::path &path) {
  std::vector<Recording> recordings;
  ForEachJsonLine(path, [&](const Json &j, std::size_t) {
    Recording r;
    r.input = j.at("input").get<std::string>();
    r.num_outputs = j.at("num_outputs").get<int>();
    r.strategy = ParseDecodeStrategy(j.at("strategy").get<std::string>());
    r.seed = j.value("seed", uint64_t{0});
    r.outputs = j.at("outputs").get<std::vector<std::string>>();
    recordings.push_back(std::move(r));
  });
  return std::make_shared<ReplayGenerator>(recordings);
}

std::string ReplayGenerator::Key(std::string_view input, int num_outputs,
                                 DecodeStrategy strategy, uint64_t seed) {
  return Json{{"input", input},
              {"num_outputs", num_outputs},
              {"strategy", DecodeStrategyName(strategy)},
              {"seed", seed}}
      .dump();
}

std::vector<std::vector<std::string>> ReplayGenerator::Generate(
    const std::vector<std::string> &inputs, int num_outputs, DecodeStrategy strategy,
    uint64_t seed) {
  std::vector<std::vector<std::string>> out;
  for (const std::string &input : inputs) {
    auto it = responses_.find(Key(input, num_outputs, strategy, seed));
    if (it == responses_.end()) {
      throw Error(ErrorCode::kBackendUnavailable, "no recorded response for '" + input + "'");
    }
    out.push_back(it->second);
  }
  return out;
}

}  // namespace claimkit
