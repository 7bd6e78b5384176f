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

// Run configuration: one JSON file, every field overridable from the
// command line.
//
//   {
//     "corpus": "data/toy/test.jsonl", "split": "test",
//     "models": [{"name": "gpt", "kind": "http_chat", "prompt_style": "chatgpt-summ",
//                 "endpoint": "https://.../v1/chat/completions", "api_key_env": "OPENAI_API_KEY"}],
//     "chunk_words": 1024, "chunk_mode": "hard", "budget": "gold_ratio",
//     "scorer": {"url": "http://localhost:8008", "fallback_to_heuristic": true},
//     "nli_threshold": 0.5,
//     "extractive": {"weights": {"entity": 0.2, "date": 0.2, "heading": 0.2}},
//     "output_dir": "runs/demo", "workers": 4
//   }

#ifndef LEGALSUM_CONFIG_HPP_
#define LEGALSUM_CONFIG_HPP_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "legalsum/backends.hpp"
#include "legalsum/chunker.hpp"
#include "legalsum/corpus.hpp"
#include "legalsum/evalrunner.hpp"
#include "legalsum/extractive.hpp"
#include "legalsum/metrics.hpp"

namespace legalsum::config {

struct ModelSpec {
  backends::BackendConfig backend;
  PromptStyle style = PromptStyle::kSummPrefixWords;
  evalrunner::Family family = evalrunner::Family::kLlm;
};

struct RunConfig {
  std::filesystem::path corpus;
  corpus::Split split = corpus::Split::kTest;
  std::vector<ModelSpec> models;
  std::size_t chunk_words = chunker::kDefaultChunkWords;
  chunker::ChunkMode chunk_mode = chunker::ChunkMode::kHard;
  // Unset: gold ratio |S|/|D|.
  std::optional<double> fixed_ratio;
  std::string scorer_url;
  std::chrono::milliseconds scorer_timeout{30000};
  bool scorer_fallback = true;
  double nli_threshold = 0.5;
  extractive::Weights weights;
  std::vector<std::string> heading_patterns = extractive::Options::default_heading_patterns();
  std::filesystem::path abbreviations_file;
  std::filesystem::path gazetteer_file;
  std::filesystem::path output_dir;
  std::size_t workers = 1;
  metrics::RougeLMode rougeL_mode = metrics::RougeLMode::kWholeSummary;
  bool stem = false;
  double alpha = 0.05;
  bool paired_test = false;
  bool consistency_for_extractive = false;

  // Throws ValidationError naming the field.
  void validate() const;
};

// Throws InputError when unreadable, ValidationError naming the bad field.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir = {});

// "gold_ratio" or "fixed_ratio:<r>".
std::optional<double> parse_budget(std::string_view text);

// Models usable without a config file: "mock" and "extractive".
std::optional<ModelSpec> builtin_model(std::string_view name);

}  // namespace legalsum::config

#endif  // LEGALSUM_CONFIG_HPP_
