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

#include "legalsum/extractive.hpp"

#include <gtest/gtest.h>

#include "legalsum/consistency.hpp"
#include "legalsum/error.hpp"
#include "legalsum/textproc.hpp"

namespace legalsum::extractive {
namespace {

corpus::CaseDocument make_doc(std::string text) {
  const std::size_t n = textproc::word_count(text);
  return {"doc", std::move(text), n};
}

const char* kJudgment =
    "JUDGMENT\n\n"
    "The appellant Ram Kumar was appointed in 1975. "
    "He was dismissed on 4 June 1991 by the Delhi Development Authority. "
    "the matter was heard at length. "
    "It was argued that no report was supplied. "
    "CONCLUSION\n\n"
    "The appeal is dismissed. "
    "There shall be no costs.";

TEST(Select, GreedyUnderBudgetInDocumentOrder) {
  EXPECT_EQ(select_sentences({0.9, 0.5, 0.8}, {6, 7, 5}, 12), (std::vector<std::size_t>{0, 2}));
  // The top sentence is kept even when it alone exceeds the budget.
  EXPECT_EQ(select_sentences({0.1, 0.9}, {3, 20}, 5), (std::vector<std::size_t>{1}));
  // Ties go to the earlier sentence.
  EXPECT_EQ(select_sentences({0.5, 0.5, 0.5}, {4, 4, 4}, 8), (std::vector<std::size_t>{0, 1}));
}

TEST(Headings, CapsAndPatterns) {
  const std::string text = "FACTS\nSome text here. More text.\n1. Issues\nThe issue is. Done.";
  const auto sentences = textproc::split_sentences(text);
  const auto headings = detect_headings(text, sentences, Options::default_heading_patterns());
  ASSERT_GE(headings.size(), 2u);
  EXPECT_EQ(headings.front(), 0u);
}

TEST(Score, FeaturesAndRanges) {
  const auto scores = score_sentences(make_doc(kJudgment));
  // Heading lines join the sentence that follows them.
  ASSERT_EQ(scores.size(), 5u);
  double max_tfidf = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const auto& s = scores[i];
    EXPECT_EQ(s.index, i);
    EXPECT_GE(s.tfidf_mean, 0.0);
    EXPECT_LE(s.tfidf_mean, 1.0);
    max_tfidf = std::max(max_tfidf, s.tfidf_mean);
    EXPECT_NEAR(s.total, s.tfidf_mean + 0.2 * s.entity_count + 0.2 * s.date_count + 0.2 * s.heading_proximity,
                1e-12);
  }
  EXPECT_DOUBLE_EQ(max_tfidf, 1.0);
  EXPECT_DOUBLE_EQ(scores[0].heading_proximity, 1.0);
  EXPECT_GE(scores[1].date_count, 1u);
}

TEST(Score, WeightsApply) {
  Options zero;
  zero.weights = {0.0, 0.0, 0.0};
  for (const auto& s : score_sentences(make_doc(kJudgment), zero)) EXPECT_DOUBLE_EQ(s.total, s.tfidf_mean);
  Options bad;
  bad.weights.entity = -1.0;
  EXPECT_THROW(bad.weights.validate(), ValidationError);
}

TEST(Extract, SentencesComeFromSource) {
  const auto doc = make_doc(kJudgment);
  const auto summary = extract_summary(doc, 25);
  EXPECT_EQ(summary.model_name, "casesummarizer");
  EXPECT_LE(textproc::word_count(summary.text), 25u + 10u);
  for (const auto& sentence : textproc::split_sentences(summary.text).sentences) {
    EXPECT_NE(textproc::collapse_whitespace(doc.text).find(sentence), std::string::npos) << sentence;
  }
  EXPECT_DOUBLE_EQ(consistency::num_prec(summary.text, doc.text), 1.0);
  EXPECT_DOUBLE_EQ(consistency::ne_prec(summary.text, doc.text), 1.0);
  EXPECT_THROW(extract_summary(doc, 0), ValidationError);
}

TEST(Extract, Deterministic) {
  const auto doc = make_doc(kJudgment);
  EXPECT_EQ(extract_summary(doc, 20).text, extract_summary(doc, 20).text);
}

}  // namespace
}  // namespace legalsum::extractive
