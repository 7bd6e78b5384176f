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

#ifndef LEGALSUM_CORPUS_HPP_
#define LEGALSUM_CORPUS_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace legalsum::corpus {

// Source judgement. word_count is textproc::word_count(text), always >= 1.
struct CaseDocument {
  std::string id;
  std::string text;
  std::size_t word_count = 0;
};

// Expert-written reference summary of the document with id doc_id.
struct GoldSummary {
  std::string doc_id;
  std::string text;
  std::size_t word_count = 0;
};

struct CorpusPair {
  CaseDocument document;
  GoldSummary gold;
};

struct CorpusStats {
  std::size_t n_docs = 0;
  double avg_doc_words = 0.0;
  double avg_summary_words = 0.0;
};

enum class Split { kTrain, kTest };

Split parse_split(std::string_view name);
std::string_view split_name(Split split);

// Builds a validated pair, counting words with the shared tokenizer. Throws
// ValidationError naming the record when either text has no words.
CorpusPair make_pair(std::string id, std::string text, std::string summary);

// Loads a JSON-lines corpus. `path` is either a split file or a directory
// holding <split>.jsonl. Pairs keep file order.
//
// Throws InputError for a missing/unreadable file or a malformed line, and
// ValidationError for a duplicate id or a record missing id/text/summary.
std::vector<CorpusPair> load_corpus(const std::filesystem::path& path, Split split = Split::kTest);

// Writes pairs in the same format load_corpus reads.
void save_corpus(const std::filesystem::path& path, const std::vector<CorpusPair>& pairs);

// Throws ValidationError on an empty corpus.
CorpusStats corpus_stats(const std::vector<CorpusPair>& pairs);

// "n_docs: 100\navg_doc_words: 4782.71\navg_summary_words: 932.01\n"
std::string format_stats(const CorpusStats& stats);

}  // namespace legalsum::corpus

#endif  // LEGALSUM_CORPUS_HPP_
