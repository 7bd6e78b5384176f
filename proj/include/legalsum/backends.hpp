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

// Summarization backends behind one contract, and chunked summarization of
// a whole document.

#ifndef LEGALSUM_BACKENDS_HPP_
#define LEGALSUM_BACKENDS_HPP_

#include <chrono>
#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "legalsum/chunker.hpp"
#include "legalsum/corpus.hpp"
#include "legalsum/extractive.hpp"
#include "legalsum/summary.hpp"

namespace legalsum::backends {

enum class BackendKind { kHttpCompletion, kHttpChat, kLocalCommand, kExtractiveBuiltin, kMock };

BackendKind parse_backend_kind(std::string_view name);
std::string_view backend_kind_name(BackendKind kind);

enum class MockBehavior { kEcho, kFail, kEmpty };

struct BackendConfig {
  std::string name;
  BackendKind kind = BackendKind::kMock;
  // Full request URL for the http kinds, e.g. http://host/v1/completions.
  std::string endpoint;
  // Model identifier sent to http backends; defaults to `name`.
  std::string model;
  // Name of the environment variable holding the API key. The key itself is
  // never stored in the config or in run artifacts.
  std::string api_key_env;
  // argv for local_command.
  std::vector<std::string> command;
  double temperature = 0.7;
  double presence_penalty = 1.0;
  double frequency_penalty = 0.0;
  int max_retries = 3;
  // 0 disables rate limiting.
  int requests_per_minute = 0;
  std::chrono::milliseconds timeout{120000};
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::milliseconds max_backoff{30000};
  MockBehavior mock_behavior = MockBehavior::kEcho;
  extractive::Options extractive;

  // Throws ValidationError naming the offending field.
  void validate() const;
};

std::string build_prompt(PromptStyle style, std::string_view chunk_text, std::size_t target_words);

struct SummaryRequest {
  std::string prompt;
  // The chunk itself, for backends that do not read prompts.
  std::string chunk_text;
  std::size_t max_words = 0;
  std::size_t chunk_index = 0;
};

struct SummaryResponse {
  std::string text;
  // Raw response body as received, for the audit trail.
  std::string raw;
  bool truncated = false;
};

class Backend {
 public:
  virtual ~Backend() = default;
  // Throws BackendError; retriable() marks transient failures.
  virtual SummaryResponse summarize(const SummaryRequest& request) = 0;
  // Backends that read the whole document at once return false.
  virtual bool needs_chunking() const { return true; }
};

// Echoes the first max_words words of the chunk (or fails / answers empty).
class MockBackend : public Backend {
 public:
  explicit MockBackend(MockBehavior behavior = MockBehavior::kEcho) : behavior_(behavior) {}
  SummaryResponse summarize(const SummaryRequest& request) override;

 private:
  MockBehavior behavior_;
};

class ExtractiveBackend : public Backend {
 public:
  explicit ExtractiveBackend(extractive::Options options) : options_(std::move(options)) {}
  SummaryResponse summarize(const SummaryRequest& request) override;
  bool needs_chunking() const override { return false; }

 private:
  extractive::Options options_;
};

// POST {model, prompt, max_tokens, temperature, presence_penalty,
// frequency_penalty}; reads choices[0].text.
class HttpCompletionBackend : public Backend {
 public:
  explicit HttpCompletionBackend(BackendConfig config);
  SummaryResponse summarize(const SummaryRequest& request) override;

 private:
  BackendConfig config_;
};

// POST {model, messages:[{role:"user", content}], max_tokens, temperature};
// reads choices[0].message.content.
class HttpChatBackend : public Backend {
 public:
  explicit HttpChatBackend(BackendConfig config);
  SummaryResponse summarize(const SummaryRequest& request) override;

 private:
  BackendConfig config_;
};

// Runs `command`, writes the prompt to stdin and reads the summary from
// stdout. LEGALSUM_MAX_WORDS carries the word budget. Nonzero exit is an
// error.
class LocalCommandBackend : public Backend {
 public:
  explicit LocalCommandBackend(BackendConfig config);
  SummaryResponse summarize(const SummaryRequest& request) override;

 private:
  BackendConfig config_;
};

std::unique_ptr<Backend> make_backend(const BackendConfig& config);

// Admits at most requests_per_minute calls per minute across all threads.
class RateLimiter {
 public:
  explicit RateLimiter(int requests_per_minute);
  void acquire();
  std::chrono::nanoseconds interval() const { return interval_; }

 private:
  std::mutex mu_;
  std::chrono::nanoseconds interval_;
  std::chrono::steady_clock::time_point next_{};
};

using Sleeper = std::function<void(std::chrono::milliseconds)>;

// Exponential backoff with equal jitter: the n-th retry waits between half
// and all of min(max_backoff, initial_backoff * 2^n).
struct RetryPolicy {
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::milliseconds max_backoff{30000};

  std::chrono::milliseconds delay(int retry, std::mt19937_64& rng) const;
};

// A backend plus the shared rate limiter and retry policy. Safe to use from
// several workers at once when the wrapped backend is.
class BackendClient {
 public:
  BackendClient(BackendConfig config, std::unique_ptr<Backend> backend, Sleeper sleeper = {});
  explicit BackendClient(const BackendConfig& config);

  struct Result {
    SummaryResponse response;
    int attempts = 0;
  };

  // Throws BackendError carrying request.chunk_index once retries run out
  // or on a non-retriable failure.
  Result call(const SummaryRequest& request);

  const BackendConfig& config() const { return config_; }
  Backend& backend() { return *backend_; }

 private:
  BackendConfig config_;
  std::unique_ptr<Backend> backend_;
  RateLimiter limiter_;
  RetryPolicy policy_;
  Sleeper sleeper_;
  std::mutex rng_mu_;
  std::mt19937_64 rng_;
};

// One backend exchange, persisted under raw_responses/.
struct ChunkRecord {
  std::string doc_id;
  std::string model_name;
  std::size_t chunk_index = 0;
  std::size_t chunk_words = 0;
  std::size_t max_words = 0;
  std::string prompt;
  std::string raw;
  std::string text;
  bool warning = false;
  int attempts = 0;
};

struct SummarizeOptions {
  chunker::ChunkMode mode = chunker::ChunkMode::kHard;
  textproc::AbbreviationList abbreviations = textproc::AbbreviationList::builtin();
  std::function<void(const ChunkRecord&)> on_chunk;
};

// Chunks the document, requests one summary per chunk in order with its
// word budget, and assembles the parts. `budget` supplies chunk_words and,
// when set, fixed_ratio; |D| and |S| come from doc and gold_words.
// Empty responses become empty chunk summaries listed in warnings.
GeneratedSummary summarize_document(const corpus::CaseDocument& doc, std::size_t gold_words,
                                    BackendClient& client, PromptStyle style,
                                    const chunker::BudgetParams& budget,
                                    const SummarizeOptions& options = {});

}  // namespace legalsum::backends

#endif  // LEGALSUM_BACKENDS_HPP_
