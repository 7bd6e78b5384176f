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

#include "legalsum/evalrunner.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "legalsum/error.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace legalsum::evalrunner {
namespace {

const std::vector<double> kA{2.1, 2.5, 2.3, 2.2};
const std::vector<double> kB{1.1, 1.4, 1.2, 1.3};

TEST(TTest, MatchesPooledFormula) {
  const auto [t, df] = oracle::pooled_t(kA, kB);
  const auto r = t_test(kA, kB);
  EXPECT_NEAR(r.t, t, 1e-6);
  EXPECT_DOUBLE_EQ(r.df, 6.0);
  EXPECT_DOUBLE_EQ(df, 6.0);
  // Hand arithmetic: means 2.275 / 1.25, SS 0.0875 / 0.05.
  EXPECT_NEAR(r.t, 1.025 / std::sqrt(0.1375 / 6 * 0.5), 1e-9);
  EXPECT_NEAR(r.p_value, oracle::two_sided_p(r.t, 6.0), 1e-8);
  EXPECT_TRUE(r.significant);
  EXPECT_NEAR(t_test(kB, kA).t, -r.t, 1e-12);
}

TEST(TTest, PValueAgainstNumericIntegration) {
  const std::vector<double> a{0.31, 0.42, 0.38, 0.29, 0.35};
  const std::vector<double> b{0.30, 0.36, 0.33, 0.31, 0.28, 0.34};
  const auto r = t_test(a, b);
  EXPECT_NEAR(r.t, oracle::pooled_t(a, b).first, 1e-9);
  EXPECT_NEAR(r.p_value, oracle::two_sided_p(r.t, 9.0), 1e-8);
  EXPECT_EQ(r.significant, r.p_value < 0.05);
}

TEST(TTest, DegenerateCases) {
  const auto same = t_test(kA, kA);
  EXPECT_DOUBLE_EQ(same.t, 0.0);
  EXPECT_FALSE(same.significant);
  const auto flat = t_test({1, 1, 1}, {1, 1});
  EXPECT_DOUBLE_EQ(flat.t, 0.0);
  EXPECT_FALSE(flat.significant);
  const auto apart = t_test({2, 2, 2}, {1, 1});
  EXPECT_TRUE(std::isinf(apart.t));
  EXPECT_TRUE(apart.significant);
  EXPECT_THROW(t_test({1}, {1, 2}), ValidationError);
  EXPECT_THROW(t_test(kA, kB, 1.5), ValidationError);
}

TEST(TTest, Paired) {
  // Differences 1.0, 1.1, 1.1, 0.9: mean 1.025, sd sqrt(0.0275/3).
  const auto r = paired_t_test(kA, kB);
  EXPECT_NEAR(r.t, 1.025 / (std::sqrt(0.0275 / 3) / 2), 1e-9);
  EXPECT_DOUBLE_EQ(r.df, 3.0);
  EXPECT_THROW(paired_t_test(kA, {1.0, 2.0}), ValidationError);
}

RunResult make_result(std::string name, Family family, const std::vector<double>& r2f1) {
  RunResult r;
  r.model_name = std::move(name);
  r.family = family;
  for (std::size_t i = 0; i < r2f1.size(); ++i) {
    ScoreCard c;
    c.doc_id = "d" + std::to_string(i);
    c.model_name = r.model_name;
    c.r2.f1 = r2f1[i];
    c.bleu_percent = 10.0 * r2f1[i];
    r.cards.push_back(c);
  }
  compute_aggregates(r);
  return r;
}

TEST(Significance, AsteriskRule) {
  std::vector<RunResult> results{
      make_result("llm-high", Family::kLlm, kA),
      make_result("abs-below", Family::kAbstractive, {1.0, 1.05, 0.95, 1.0}),
      make_result("abs-close", Family::kAbstractive, {1.2, 1.5, 1.1, 1.4}),
      make_result("ext-weak", Family::kExtractive, {0.5, 0.6, 0.5, 0.6}),
      make_result("ext-best", Family::kExtractive, kB),
  };
  mark_significance(results);
  EXPECT_EQ(best_extractive(results, Metric::kR2F1), 4);
  // Above the best extractive and significant.
  EXPECT_TRUE(results[0].is_significant(Metric::kR2F1));
  // Below the best extractive: never marked, even though the test is significant.
  EXPECT_LT(results[1].aggregate(Metric::kR2F1), results[4].aggregate(Metric::kR2F1));
  EXPECT_TRUE(t_test(results[1].column(Metric::kR2F1), results[4].column(Metric::kR2F1)).significant);
  EXPECT_FALSE(results[1].is_significant(Metric::kR2F1));
  // Above but not significant.
  EXPECT_GT(results[2].aggregate(Metric::kR2F1), results[4].aggregate(Metric::kR2F1));
  EXPECT_FALSE(results[2].is_significant(Metric::kR2F1));
  // Extractive rows are never marked.
  EXPECT_FALSE(results[3].is_significant(Metric::kR2F1));
  EXPECT_FALSE(results[4].is_significant(Metric::kR2F1));
}

TEST(Significance, NoExtractiveBaseline) {
  std::vector<RunResult> results{make_result("a", Family::kLlm, kA), make_result("b", Family::kLlm, kB)};
  mark_significance(results);
  EXPECT_EQ(best_extractive(results, Metric::kR2F1), -1);
  for (const auto& r : results)
    for (Metric m : kAllMetrics) EXPECT_FALSE(r.is_significant(m));
}

TEST(Evaluate, CardsInCorpusOrderAndAggregates) {
  std::vector<corpus::CorpusPair> pairs;
  std::map<std::string, GeneratedSummary> summaries;
  for (int i = 0; i < 12; ++i) {
    const std::string id = "doc" + std::to_string(i);
    pairs.push_back(corpus::make_pair(id, "The court in case " + std::to_string(i) + " dismissed the appeal of Ram.",
                                      "The court dismissed the appeal."));
    GeneratedSummary s;
    s.doc_id = id;
    s.text = i % 2 ? "The court dismissed the appeal." : "An unrelated sentence here.";
    summaries[id] = s;
  }
  EvalOptions opts;
  opts.workers = 4;
  const auto result = evaluate_corpus(pairs, summaries, "m", Family::kLlm, opts);
  ASSERT_EQ(result.cards.size(), 12u);
  for (int i = 0; i < 12; ++i) EXPECT_EQ(result.cards[i].doc_id, "doc" + std::to_string(i));
  EXPECT_DOUBLE_EQ(result.cards[1].r2.f1, 1.0);
  EXPECT_DOUBLE_EQ(result.cards[1].bleu_percent, 100.0);
  EXPECT_DOUBLE_EQ(result.cards[0].r2.f1, 0.0);
  EXPECT_NEAR(result.aggregate(Metric::kR2F1), 0.5, 1e-12);
  EXPECT_NEAR(result.aggregate(Metric::kBleu), 50.0, 1e-9);

  summaries.erase("doc7");
  try {
    evaluate_corpus(pairs, summaries, "m", Family::kLlm, opts);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("doc7"), std::string::npos);
  }
}

TEST(Persistence, CardsAndAggregatesRoundTrip) {
  testsupport::TempDir dir;
  std::vector<RunResult> results{make_result("llm", Family::kLlm, kA), make_result("ext", Family::kExtractive, kB)};
  save_cards(dir / "cards.jsonl", results);
  save_aggregates(dir / "aggregates.json", results);
  const auto back = load_cards(dir / "cards.jsonl");
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].model_name, "llm");
  EXPECT_EQ(back[1].cards.size(), 4u);
  EXPECT_NEAR(back[0].aggregate(Metric::kR2F1), results[0].aggregate(Metric::kR2F1), 1e-12);
  const auto families = load_families(dir / "aggregates.json");
  EXPECT_EQ(families.at("ext"), Family::kExtractive);
  EXPECT_THROW(load_cards(dir / "missing.jsonl"), InputError);
}

TEST(Names, MetricsAndFamilies) {
  EXPECT_EQ(metric_key(Metric::kR2P), "r2_p");
  EXPECT_EQ(metric_key(Metric::kBleu), "bleu");
  EXPECT_EQ(parse_family("abstractive"), Family::kAbstractive);
  EXPECT_THROW(parse_family("neural"), ValidationError);
}

}  // namespace
}  // namespace legalsum::evalrunner
