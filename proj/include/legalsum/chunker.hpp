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

#ifndef LEGALSUM_CHUNKER_HPP_
#define LEGALSUM_CHUNKER_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "legalsum/corpus.hpp"
#include "legalsum/textproc.hpp"

namespace legalsum::chunker {

inline constexpr std::size_t kDefaultChunkWords = 1024;
inline constexpr std::size_t kDefaultTokenLimit = 4096;

// Length budget for one document. Targets follow the gold compression ratio
// |S|/|D| unless fixed_ratio is set (used when no gold summary exists).
struct BudgetParams {
  std::size_t chunk_words = kDefaultChunkWords;
  // Informational: prompt plus generated text must fit the model window.
  std::size_t token_limit = kDefaultTokenLimit;
  std::size_t doc_words = 0;
  std::size_t gold_words = 0;
  std::optional<double> fixed_ratio;

  // Throws ValidationError naming the offending field.
  void validate() const;
};

enum class ChunkMode { kHard, kSentenceAligned };

ChunkMode parse_chunk_mode(std::string_view name);
std::string_view chunk_mode_name(ChunkMode mode);

struct Chunk {
  std::string text;
  std::size_t word_count = 0;
  std::size_t target_summary_words = 0;
  // Character range of the chunk in the source document.
  textproc::CharSpan span;
};

struct ChunkPlan {
  std::vector<Chunk> chunks;

  std::size_t size() const { return chunks.size(); }
  std::size_t total_budget() const;
};

// round-half-up((|S|/|D|) * chunk_len), at least 1. Requires
// 1 <= chunk_len <= chunk_words.
std::size_t target_summary_length(const BudgetParams& params, std::size_t chunk_len);

// Documents of at most chunk_words words come back as a single chunk.
// Hard mode cuts every chunk_words words. Sentence-aligned mode packs whole
// sentences greedily and only cuts a sentence that alone exceeds chunk_words.
// Chunk boundaries always fall on whitespace, so the chunk texts tokenize to
// the document's tokens in order.
ChunkPlan chunk_document(const corpus::CaseDocument& doc, const BudgetParams& params,
                         ChunkMode mode = ChunkMode::kHard,
                         const textproc::AbbreviationList& abbreviations =
                             textproc::AbbreviationList::builtin());

// Joins chunk summaries in order with single spaces, collapsing whitespace.
// Throws ValidationError on an empty list.
std::string assemble_summary(const std::vector<std::string>& chunk_summaries);

}  // namespace legalsum::chunker

#endif  // LEGALSUM_CHUNKER_HPP_
