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

#include "legalsum/chunker.hpp"

#include <algorithm>
#include <cmath>

#include "legalsum/error.hpp"

namespace legalsum::chunker {
namespace {

using textproc::RawWord;

// Cut points are indices into the raw-word list; each chunk is
// [cuts[k], cuts[k+1]).
std::vector<std::size_t> hard_cuts(const std::vector<RawWord>& words, std::size_t limit) {
  std::vector<std::size_t> cuts{0};
  std::size_t in_chunk = 0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (!words[i].counted) continue;
    if (in_chunk == limit) {
      cuts.push_back(i);
      in_chunk = 0;
    }
    ++in_chunk;
  }
  cuts.push_back(words.size());
  return cuts;
}

std::vector<std::size_t> sentence_cuts(std::string_view text, const std::vector<RawWord>& words,
                                       std::size_t limit,
                                       const textproc::AbbreviationList& abbreviations) {
  const textproc::SentenceList sentences = textproc::split_sentences(text, abbreviations);
  // First raw word of every sentence after the first.
  std::vector<std::size_t> sentence_starts;
  {
    std::size_t w = 0;
    for (std::size_t s = 1; s < sentences.offsets.size(); ++s) {
      while (w < words.size() && words[w].begin < sentences.offsets[s].begin) ++w;
      sentence_starts.push_back(w);
    }
  }
  sentence_starts.push_back(words.size());

  std::vector<std::size_t> cuts{0};
  std::size_t in_chunk = 0;
  std::size_t first = 0;
  for (std::size_t end : sentence_starts) {
    std::size_t len = 0;
    for (std::size_t i = first; i < end; ++i) len += words[i].counted ? 1 : 0;
    if (in_chunk > 0 && in_chunk + len > limit) {
      cuts.push_back(first);
      in_chunk = 0;
    }
    if (len > limit) {
      // Oversized sentence: hard cuts inside it; the remainder stays open.
      std::size_t run = in_chunk;
      for (std::size_t i = first; i < end; ++i) {
        if (!words[i].counted) continue;
        if (run == limit) {
          cuts.push_back(i);
          run = 0;
        }
        ++run;
      }
      in_chunk = run;
    } else {
      in_chunk += len;
    }
    first = end;
  }
  cuts.push_back(words.size());
  return cuts;
}

}  // namespace

void BudgetParams::validate() const {
  if (chunk_words < 1) throw ValidationError("chunk_words must be >= 1");
  if (doc_words < 1) throw ValidationError("doc_words (|D|) must be >= 1");
  if (fixed_ratio) {
    if (!(*fixed_ratio > 0.0 && *fixed_ratio <= 1.0)) {
      throw ValidationError("fixed_ratio must lie in (0, 1]");
    }
  } else if (gold_words < 1) {
    throw ValidationError("gold_words (|S|) must be >= 1");
  }
}

ChunkMode parse_chunk_mode(std::string_view name) {
  if (name == "hard") return ChunkMode::kHard;
  if (name == "sentence_aligned" || name == "sentence") return ChunkMode::kSentenceAligned;
  throw ValidationError("unknown chunk mode '" + std::string(name) +
                        "' (expected hard or sentence_aligned)");
}

std::string_view chunk_mode_name(ChunkMode mode) {
  return mode == ChunkMode::kHard ? "hard" : "sentence_aligned";
}

std::size_t ChunkPlan::total_budget() const {
  std::size_t total = 0;
  for (const auto& c : chunks) total += c.target_summary_words;
  return total;
}

std::size_t target_summary_length(const BudgetParams& params, std::size_t chunk_len) {
  params.validate();
  if (chunk_len < 1 || chunk_len > params.chunk_words) {
    throw ValidationError("chunk_len " + std::to_string(chunk_len) + " outside [1, " +
                          std::to_string(params.chunk_words) + "]");
  }
  std::size_t target = 0;
  if (params.fixed_ratio) {
    target = static_cast<std::size_t>(std::floor(*params.fixed_ratio * static_cast<double>(chunk_len) + 0.5));
  } else {
    // Integer form of floor(S * len / D + 1/2).
    const unsigned long long num = 2ULL * params.gold_words * chunk_len + params.doc_words;
    target = static_cast<std::size_t>(num / (2ULL * params.doc_words));
  }
  return std::max<std::size_t>(target, 1);
}

ChunkPlan chunk_document(const corpus::CaseDocument& doc, const BudgetParams& params,
                         ChunkMode mode, const textproc::AbbreviationList& abbreviations) {
  if (doc.text.empty()) throw ValidationError("chunk_document: document '" + doc.id + "' is empty");
  params.validate();
  const std::vector<RawWord> words = textproc::raw_words(doc.text);
  const std::vector<std::size_t> cuts =
      mode == ChunkMode::kHard ? hard_cuts(words, params.chunk_words)
                               : sentence_cuts(doc.text, words, params.chunk_words, abbreviations);

  ChunkPlan plan;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const std::size_t first = cuts[k];
    const std::size_t last = cuts[k + 1];
    if (first >= last) continue;
    Chunk chunk;
    chunk.span = {words[first].begin, words[last - 1].end};
    chunk.text = doc.text.substr(chunk.span.begin, chunk.span.size());
    for (std::size_t i = first; i < last; ++i) chunk.word_count += words[i].counted ? 1 : 0;
    if (chunk.word_count == 0) {
      // Punctuation-only tail; fold it into the previous chunk.
      if (!plan.chunks.empty()) {
        Chunk& prev = plan.chunks.back();
        prev.span.end = chunk.span.end;
        prev.text = doc.text.substr(prev.span.begin, prev.span.size());
      }
      continue;
    }
    plan.chunks.push_back(std::move(chunk));
  }
  if (plan.chunks.empty()) {
    throw ValidationError("chunk_document: document '" + doc.id + "' has no words");
  }
  for (auto& chunk : plan.chunks) {
    chunk.target_summary_words = target_summary_length(params, chunk.word_count);
  }
  return plan;
}

std::string assemble_summary(const std::vector<std::string>& chunk_summaries) {
  if (chunk_summaries.empty()) throw ValidationError("assemble_summary: no chunk summaries");
  std::string joined;
  for (std::size_t i = 0; i < chunk_summaries.size(); ++i) {
    if (i > 0) joined.push_back(' ');
    joined += chunk_summaries[i];
  }
  return textproc::collapse_whitespace(joined);
}

}  // namespace legalsum::chunker
