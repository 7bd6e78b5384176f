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

#ifndef LEGALSUM_SUMMARY_HPP_
#define LEGALSUM_SUMMARY_HPP_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace legalsum {

// Prompt layouts for the four LLM variants.
//   tldr_suffix        davinci-tldr   "<text> Tl;Dr"
//   summ_suffix_words  davinci-summ   "<text> Summarize the document in <XX> words"
//   tldr_prefix        chatgpt-tldr   "Tl;Dr <text>"
//   summ_prefix_words  chatgpt-summ   "Summarize the document in <XX> words <text>"
enum class PromptStyle { kTldrSuffix, kSummPrefixWords, kTldrPrefix, kSummSuffixWords };

// Accepts the style identifiers above and the model-variant names.
PromptStyle parse_prompt_style(std::string_view name);
std::string_view prompt_style_name(PromptStyle style);
bool uses_word_target(PromptStyle style);

// A model's summary of one document, with the per-chunk outputs it was
// assembled from. text == chunker::assemble_summary(chunk_summaries).
struct GeneratedSummary {
  std::string doc_id;
  std::string model_name;
  std::string text;
  std::vector<std::string> chunk_summaries;
  std::optional<PromptStyle> prompt_style;
  // Chunk indices whose backend response was empty or truncated.
  std::vector<std::size_t> warnings;
  std::chrono::system_clock::time_point created_at{};
};

std::string format_timestamp(std::chrono::system_clock::time_point t);
std::chrono::system_clock::time_point parse_timestamp(std::string_view iso);

// JSON-lines persistence, one GeneratedSummary per line.
void save_summaries(const std::filesystem::path& path, const std::vector<GeneratedSummary>& summaries);
std::vector<GeneratedSummary> load_summaries(const std::filesystem::path& path);

// Keyed by doc_id; throws ValidationError on duplicates.
std::map<std::string, GeneratedSummary> index_by_doc(std::vector<GeneratedSummary> summaries);

}  // namespace legalsum

#endif  // LEGALSUM_SUMMARY_HPP_
