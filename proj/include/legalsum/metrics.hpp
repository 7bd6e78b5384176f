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

// Gold-standard match metrics over normalized token sequences.

#ifndef LEGALSUM_METRICS_HPP_
#define LEGALSUM_METRICS_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "legalsum/textproc.hpp"

namespace legalsum::metrics {

using textproc::TokenSeq;

struct PRF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// f1 = 2PR/(P+R), or 0 when P+R == 0.
PRF make_prf(double precision, double recall);

// Clipped bigram overlap. Zero on a side without bigrams.
PRF rouge2(const TokenSeq& candidate, const TokenSeq& reference);

// Whole-summary LCS.
PRF rougeL(const TokenSeq& candidate, const TokenSeq& reference);

// Sentence-level variant: union-LCS of every reference sentence against all
// candidate sentences, summed over reference sentences.
PRF rougeL_sentences(const std::vector<TokenSeq>& candidate, const std::vector<TokenSeq>& reference);

enum class RougeLMode { kWholeSummary, kSentenceUnion };
RougeLMode parse_rougeL_mode(std::string_view name);

// Corpus BLEU formula on a single pair, in percent [0, 100]: geometric mean
// of modified 1..4-gram precisions with add-one smoothing on n >= 2 orders
// that have no overlap, times the brevity penalty min(1, e^(1 - r/c)).
double bleu(const TokenSeq& candidate, const TokenSeq& reference);

// Exact-match METEOR. Leftmost-greedy unigram alignment, Fmean = 10PR/(R+9P),
// fragmentation penalty 0.5 * (chunks/m)^3.
double meteor(const TokenSeq& candidate, const TokenSeq& reference);

struct MeteorAlignment {
  std::size_t matches = 0;
  std::size_t chunks = 0;
};
MeteorAlignment meteor_alignment(const TokenSeq& candidate, const TokenSeq& reference);

// Per-document scores of one model. Ranges: PRF and meteor, summac,
// num_prec, ne_prec in [0, 1]; bleu_percent in [0, 100].
struct ScoreCard {
  std::string doc_id;
  std::string model_name;
  PRF r2;
  PRF rl;
  double meteor = 0.0;
  double bleu_percent = 0.0;
  double summac = 0.0;
  double num_prec = 0.0;
  double ne_prec = 0.0;
};

}  // namespace legalsum::metrics

#endif  // LEGALSUM_METRICS_HPP_
