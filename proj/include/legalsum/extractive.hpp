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

// Unsupervised CaseSummarizer-style baseline: length-normalized TF-IDF
// sentence scores boosted by entities, dates and heading proximity, then
// greedy budgeted selection.

#ifndef LEGALSUM_EXTRACTIVE_HPP_
#define LEGALSUM_EXTRACTIVE_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "legalsum/consistency.hpp"
#include "legalsum/corpus.hpp"
#include "legalsum/summary.hpp"
#include "legalsum/textproc.hpp"

namespace legalsum::extractive {

struct Weights {
  double entity = 0.2;
  double date = 0.2;
  double heading = 0.2;

  // Throws ValidationError for a negative or non-finite weight.
  void validate() const;
};

struct SentenceScore {
  std::size_t index = 0;
  // Mean TF-IDF over the sentence's tokens, divided by the document maximum.
  double tfidf_mean = 0.0;
  std::size_t entity_count = 0;
  std::size_t date_count = 0;
  // 1 / (1 + sentence distance to the nearest heading); 0 without headings.
  double heading_proximity = 0.0;
  double total = 0.0;
};

struct Options {
  Weights weights;
  // Regexes matched against whole trimmed lines. All-capital lines are
  // always headings.
  std::vector<std::string> heading_patterns = default_heading_patterns();
  const consistency::EntityExtractor* entities = nullptr;  // heuristic when null
  textproc::AbbreviationList abbreviations = textproc::AbbreviationList::builtin();
  std::string model_name = "casesummarizer";

  static std::vector<std::string> default_heading_patterns();
};

// Sentence indices holding a heading line.
std::vector<std::size_t> detect_headings(std::string_view text, const textproc::SentenceList& sentences,
                                         const std::vector<std::string>& patterns);

// Throws ValidationError for a document without sentences.
std::vector<SentenceScore> score_sentences(const corpus::CaseDocument& doc, const Options& options = {});

// Indices picked by descending score (ties: smaller index first), skipping
// any sentence that would push the word total past the budget. The top
// sentence is always kept. Returned in document order.
std::vector<std::size_t> select_sentences(const std::vector<double>& totals,
                                          const std::vector<std::size_t>& word_counts,
                                          std::size_t budget_words);

// Throws ValidationError when budget_words < 1.
GeneratedSummary extract_summary(const corpus::CaseDocument& doc, std::size_t budget_words,
                                 const Options& options = {});

}  // namespace legalsum::extractive

#endif  // LEGALSUM_EXTRACTIVE_HPP_
