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

#include "legalsum/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "legalsum/error.hpp"

namespace legalsum::metrics {
namespace {

std::size_t clipped_overlap(const textproc::NgramCounts& cand, const textproc::NgramCounts& ref) {
  std::size_t overlap = 0;
  for (const auto& [gram, count] : cand) {
    auto it = ref.find(gram);
    if (it != ref.end()) overlap += std::min(count, it->second);
  }
  return overlap;
}

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

PRF make_prf(double precision, double recall) {
  const double sum = precision + recall;
  return {precision, recall, sum > 0.0 ? 2.0 * precision * recall / sum : 0.0};
}

PRF rouge2(const TokenSeq& candidate, const TokenSeq& reference) {
  if (candidate.size() < 2 || reference.size() < 2) return {};
  const auto cand = textproc::count_ngrams(candidate, 2);
  const auto ref = textproc::count_ngrams(reference, 2);
  const std::size_t m = clipped_overlap(cand, ref);
  return make_prf(ratio(m, candidate.size() - 1), ratio(m, reference.size() - 1));
}

PRF rougeL(const TokenSeq& candidate, const TokenSeq& reference) {
  if (candidate.empty() || reference.empty()) return {};
  const std::size_t l = textproc::lcs_len(candidate, reference);
  return make_prf(ratio(l, candidate.size()), ratio(l, reference.size()));
}

PRF rougeL_sentences(const std::vector<TokenSeq>& candidate, const std::vector<TokenSeq>& reference) {
  std::size_t cand_len = 0;
  std::size_t ref_len = 0;
  for (const auto& s : candidate) cand_len += s.size();
  for (const auto& s : reference) ref_len += s.size();
  if (cand_len == 0 || ref_len == 0) return {};

  std::size_t hits = 0;
  for (const auto& r : reference) {
    std::set<std::size_t> covered;
    for (const auto& c : candidate) {
      for (std::size_t pos : textproc::lcs_positions(r, c)) covered.insert(pos);
    }
    hits += covered.size();
  }
  const double p = std::min(1.0, ratio(hits, cand_len));
  const double r = std::min(1.0, ratio(hits, ref_len));
  return make_prf(p, r);
}

RougeLMode parse_rougeL_mode(std::string_view name) {
  if (name == "summary" || name == "whole") return RougeLMode::kWholeSummary;
  if (name == "sentence" || name == "sentence_union") return RougeLMode::kSentenceUnion;
  throw ValidationError("unknown rougeL mode '" + std::string(name) + "'");
}

double bleu(const TokenSeq& candidate, const TokenSeq& reference) {
  if (candidate.empty() || reference.empty()) return 0.0;
  constexpr std::size_t kMaxOrder = 4;
  double log_sum = 0.0;
  for (std::size_t n = 1; n <= kMaxOrder; ++n) {
    const std::size_t total = candidate.size() >= n ? candidate.size() - n + 1 : 0;
    std::size_t matches = 0;
    if (total > 0 && reference.size() >= n) {
      matches = clipped_overlap(textproc::count_ngrams(candidate, n), textproc::count_ngrams(reference, n));
    }
    double p = 0.0;
    if (matches > 0) {
      p = ratio(matches, total);
    } else if (n >= 2) {
      p = 1.0 / static_cast<double>(total + 1);
    } else {
      return 0.0;
    }
    log_sum += std::log(p);
  }
  const double c = static_cast<double>(candidate.size());
  const double r = static_cast<double>(reference.size());
  const double bp = c >= r ? 1.0 : std::exp(1.0 - r / c);
  return 100.0 * bp * std::exp(log_sum / kMaxOrder);
}

MeteorAlignment meteor_alignment(const TokenSeq& candidate, const TokenSeq& reference) {
  std::map<std::string_view, std::vector<std::size_t>> positions;
  for (std::size_t j = 0; j < reference.size(); ++j) positions[reference[j]].push_back(j);
  std::map<std::string_view, std::size_t> next_unused;

  MeteorAlignment out;
  bool prev_matched = false;
  std::size_t prev_ref = 0;
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    auto it = positions.find(candidate[i]);
    std::size_t& cursor = next_unused[candidate[i]];
    if (it == positions.end() || cursor >= it->second.size()) {
      prev_matched = false;
      continue;
    }
    const std::size_t ref_pos = it->second[cursor++];
    ++out.matches;
    if (!prev_matched || ref_pos != prev_ref + 1) ++out.chunks;
    prev_matched = true;
    prev_ref = ref_pos;
  }
  return out;
}

double meteor(const TokenSeq& candidate, const TokenSeq& reference) {
  const MeteorAlignment a = meteor_alignment(candidate, reference);
  if (a.matches == 0) return 0.0;
  const double m = static_cast<double>(a.matches);
  const double p = m / static_cast<double>(candidate.size());
  const double r = m / static_cast<double>(reference.size());
  const double fmean = 10.0 * p * r / (r + 9.0 * p);
  const double frag = static_cast<double>(a.chunks) / m;
  const double penalty = 0.5 * frag * frag * frag;
  return fmean * (1.0 - penalty);
}

}  // namespace legalsum::metrics
