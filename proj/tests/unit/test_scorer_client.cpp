// Copyright 2026 The Legalsum Authors.
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

#include <atomic>
#include <mutex>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "legalsum/consistency.hpp"
#include "legalsum/error.hpp"
#include "local_server.hpp"

namespace legalsum::consistency {
namespace {

using nlohmann::json;

// Reference /nli: score = 1 when premise == hypothesis, else 0.25.
void install_nli(httplib::Server& server, std::atomic<int>& requests, std::size_t& max_pairs) {
  static std::mutex mu;
  server.Post("/api/nli", [&](const httplib::Request& req, httplib::Response& res) {
    const json body = json::parse(req.body);
    const auto& p = body["premises"];
    const auto& h = body["hypotheses"];
    {
      std::lock_guard lock(mu);
      max_pairs = std::max(max_pairs, p.size() * h.size());
    }
    ++requests;
    json scores = json::array();
    for (const auto& prem : p) {
      json row = json::array();
      for (const auto& hyp : h) row.push_back(prem == hyp ? 1.0 : 0.25);
      scores.push_back(row);
    }
    res.set_content(json{{"scores", scores}}.dump(), "application/json");
  });
}

TEST(RemoteScorer, NliTilesAndReassembles) {
  testsupport::LocalServer server;
  std::atomic<int> requests{0};
  std::size_t max_pairs = 0;
  install_nli(server.server(), requests, max_pairs);
  server.start();

  ScorerConfig cfg;
  cfg.base_url = server.url("/api");
  cfg.max_pairs_per_request = 4;
  cfg.max_in_flight = 3;
  const RemoteScorer scorer(cfg);
  const std::vector<std::string> premises{"a", "b", "c", "d", "e"};
  const std::vector<std::string> hypotheses{"c", "x", "a"};
  const auto m = scorer.score(premises, hypotheses);
  ASSERT_EQ(m.rows(), 5u);
  ASSERT_EQ(m.cols(), 3u);
  for (std::size_t r = 0; r < 5; ++r)
    for (std::size_t c = 0; c < 3; ++c) EXPECT_DOUBLE_EQ(m.at(r, c), premises[r] == hypotheses[c] ? 1.0 : 0.25);
  EXPECT_LE(max_pairs, 4u);
  EXPECT_GT(requests.load(), 1);
  EXPECT_DOUBLE_EQ(summac_score(m), (1.0 + 0.25 + 1.0) / 3.0);
}

TEST(RemoteScorer, ThreeByFourRequest) {
  testsupport::LocalServer server;
  std::atomic<int> requests{0};
  std::size_t max_pairs = 0;
  install_nli(server.server(), requests, max_pairs);
  server.start();
  ScorerConfig cfg;
  cfg.base_url = server.url("/api");
  const auto m = RemoteScorer(cfg).score({"p1", "p2", "p3"}, {"h1", "h2", "h3", "p2"});
  EXPECT_EQ(m.rows(), 3u);
  EXPECT_EQ(m.cols(), 4u);
  EXPECT_EQ(requests.load(), 1);
  EXPECT_DOUBLE_EQ(m.at(1, 3), 1.0);
}

TEST(RemoteScorer, RejectsMalformedReplies) {
  testsupport::LocalServer server;
  server.server().Post("/wrongdim/nli", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"scores":[[0.5]]})", "application/json");
  });
  server.server().Post("/range/nli", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"scores":[[1.5, 0.2]]})", "application/json");
  });
  server.server().Post("/flat/nli", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"scores":[0.5, 0.2]})", "application/json");
  });
  server.server().Post("/err/nli", [](const httplib::Request&, httplib::Response& res) { res.status = 500; });
  server.server().Post("/strings/nli", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"scores":[["a", "b"]]})", "application/json");
  });
  server.start();
  auto scorer_at = [&](const std::string& path) {
    ScorerConfig cfg;
    cfg.base_url = server.url(path);
    return RemoteScorer(cfg);
  };
  const std::vector<std::string> p{"p"}, h{"h1", "h2"};
  EXPECT_THROW(scorer_at("/wrongdim").score(p, h), ExternalServiceError);
  EXPECT_THROW(scorer_at("/range").score(p, h), ExternalServiceError);
  EXPECT_THROW(scorer_at("/err").score(p, h), ExternalServiceError);
  EXPECT_THROW(scorer_at("/strings").score(p, h), ExternalServiceError);
  EXPECT_DOUBLE_EQ(scorer_at("/flat").score(p, h).at(0, 1), 0.2);
}

TEST(RemoteScorer, Unreachable) {
  ScorerConfig cfg;
  cfg.base_url = "http://127.0.0.1:1";
  cfg.timeout = std::chrono::milliseconds(500);
  const RemoteScorer scorer(cfg);
  EXPECT_THROW(scorer.score({"a"}, {"b"}), ExternalServiceError);
  EXPECT_THROW(scorer.extract("Ram"), ExternalServiceError);
  EXPECT_THROW(RemoteScorer(ScorerConfig{"ftp://x"}), ValidationError);
}

TEST(RemoteScorer, NerSpans) {
  testsupport::LocalServer server;
  std::string seen_text;
  server.server().Post("/ner", [&](const httplib::Request& req, httplib::Response& res) {
    seen_text = json::parse(req.body)["text"];
    // Second entity carries character offsets that do not match the bytes.
    res.set_content(R"({"entities":[{"text":"Mahabir","start":0,"end":7,"label":"PERSON"},)"
                    R"({"text":"High Court","start":1,"end":3,"label":"ORG"}]})",
                    "application/json");
  });
  server.start();
  ScorerConfig cfg;
  cfg.base_url = server.url();
  const std::string text = "Mahabir filed an application in the High Court";
  const auto mentions = RemoteScorer(cfg).extract(text);
  EXPECT_EQ(seen_text, text);
  ASSERT_EQ(mentions.size(), 2u);
  EXPECT_EQ(mentions[0].label, "PERSON");
  EXPECT_EQ(mentions[0].span.begin, 0u);
  EXPECT_EQ(text.substr(mentions[1].span.begin, mentions[1].span.end - mentions[1].span.begin), "High Court");
  EXPECT_EQ(mentions[1].normalized, "high court");
}

TEST(RemoteScorer, FallbackWhenNerDown) {
  ScorerConfig cfg;
  cfg.base_url = "http://127.0.0.1:1";
  cfg.timeout = std::chrono::milliseconds(500);
  const RemoteScorer remote(cfg);
  const HeuristicEntityExtractor heuristic;
  const FallbackEntityExtractor ex(remote, heuristic);
  EXPECT_DOUBLE_EQ(ne_prec("Ram Kumar appealed.", "Ram Kumar appealed to the court.", ex), 1.0);
}

}  // namespace
}  // namespace legalsum::consistency
