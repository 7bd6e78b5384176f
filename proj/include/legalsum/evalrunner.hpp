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

// Corpus-level scoring of model summaries, aggregation, and the Student
// t-test used to mark significant wins over the best extractive baseline.

#ifndef LEGALSUM_EVALRUNNER_HPP_
#define LEGALSUM_EVALRUNNER_HPP_

#include <array>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "legalsum/consistency.hpp"
#include "legalsum/corpus.hpp"
#include "legalsum/metrics.hpp"
#include "legalsum/summary.hpp"

namespace legalsum::evalrunner {

using metrics::ScoreCard;

enum class Family { kLlm, kAbstractive, kExtractive };
Family parse_family(std::string_view name);
std::string_view family_name(Family family);

enum class Metric { kR2P, kR2R, kR2F1, kRLP, kRLR, kRLF1, kMeteor, kBleu, kSummaC, kNEPrec, kNumPrec };
inline constexpr std::size_t kMetricCount = 11;
inline constexpr std::array<Metric, kMetricCount> kAllMetrics = {
    Metric::kR2P, Metric::kR2R, Metric::kR2F1, Metric::kRLP,   Metric::kRLR,   Metric::kRLF1,
    Metric::kMeteor, Metric::kBleu, Metric::kSummaC, Metric::kNEPrec, Metric::kNumPrec};

// Stable keys used in cards.jsonl / aggregates.json ("r2_p", "bleu", ...).
std::string_view metric_key(Metric metric);
double metric_value(const ScoreCard& card, Metric metric);

struct RunResult {
  std::string model_name;
  Family family = Family::kLlm;
  std::vector<ScoreCard> cards;
  // Arithmetic means of the card values, indexed by Metric.
  std::array<double, kMetricCount> aggregates{};
  // Significantly above the best extractive model on this metric.
  std::array<bool, kMetricCount> significant{};

  double aggregate(Metric m) const { return aggregates[static_cast<std::size_t>(m)]; }
  bool is_significant(Metric m) const { return significant[static_cast<std::size_t>(m)]; }
  std::vector<double> column(Metric m) const;
};

struct TTestResult {
  double t = 0.0;
  double df = 0.0;
  double p_value = 1.0;
  bool significant = false;
};

// Two-sample pooled-variance Student t-test, two-sided at alpha. Zero pooled
// variance gives t = 0 (not significant) for equal means and +/-inf
// (significant) otherwise. Throws ValidationError for samples smaller than 2
// or alpha outside (0, 1).
TTestResult t_test(const std::vector<double>& a, const std::vector<double>& b, double alpha = 0.05);

// Paired variant over per-document differences (same document order).
TTestResult paired_t_test(const std::vector<double>& a, const std::vector<double>& b, double alpha = 0.05);

struct EvalOptions {
  const consistency::NliScorer* nli = nullptr;            // lexical overlap when null
  const consistency::EntityExtractor* entities = nullptr;  // heuristic when null
  metrics::RougeLMode rougeL_mode = metrics::RougeLMode::kWholeSummary;
  textproc::TokenizeOptions tokenize;
  textproc::AbbreviationList abbreviations = textproc::AbbreviationList::builtin();
  std::size_t workers = 1;
  std::function<void(std::size_t done, std::size_t total)> progress;
};

ScoreCard score_summary(const corpus::CorpusPair& pair, std::string_view summary, std::string_view model_name,
                        const EvalOptions& options = {});

// One card per document in corpus order. Throws ValidationError naming the
// first document without a summary.
RunResult evaluate_corpus(const std::vector<corpus::CorpusPair>& pairs,
                          const std::map<std::string, GeneratedSummary>& summaries,
                          std::string_view model_name, Family family = Family::kLlm,
                          const EvalOptions& options = {});

void compute_aggregates(RunResult& result);

enum class TestKind { kPooled, kPaired };

// For every metric, picks the best extractive model (highest aggregate, ties
// by model name) and flags each non-extractive model whose aggregate is
// higher and whose t-test against it is significant.
void mark_significance(std::vector<RunResult>& results, double alpha = 0.05, TestKind kind = TestKind::kPooled);

// Index of the best extractive model for a metric, or -1 without one.
long best_extractive(const std::vector<RunResult>& results, Metric metric);

// cards.jsonl: one card per line, models in order, documents in corpus order.
void save_cards(const std::filesystem::path& path, const std::vector<RunResult>& results);
// Groups cards by model (first-seen order) and recomputes aggregates.
std::vector<RunResult> load_cards(const std::filesystem::path& path);

void save_aggregates(const std::filesystem::path& path, const std::vector<RunResult>& results);
// model name -> family, as recorded in aggregates.json.
std::map<std::string, Family> load_families(const std::filesystem::path& path);

}  // namespace legalsum::evalrunner

#endif  // LEGALSUM_EVALRUNNER_HPP_
