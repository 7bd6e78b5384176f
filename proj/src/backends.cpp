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

#include "legalsum/backends.hpp"

#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <nlohmann/json.hpp>
#include <thread>

#include "http_util.hpp"
#include "legalsum/error.hpp"

extern char** environ;

namespace legalsum::backends {
namespace {

using json = nlohmann::json;

constexpr std::string_view kTldr = "Tl;Dr";

std::string first_words(std::string_view text, std::size_t k) {
  std::string out;
  std::size_t taken = 0;
  for (const auto& w : textproc::raw_words(text)) {
    if (taken == k) break;
    if (!out.empty()) out.push_back(' ');
    out.append(text.substr(w.begin, w.end - w.begin));
    taken += w.counted ? 1 : 0;
  }
  return out;
}

std::string api_key(const BackendConfig& config) {
  if (config.api_key_env.empty()) return {};
  const char* value = std::getenv(config.api_key_env.c_str());
  if (value == nullptr || *value == '\0') {
    throw BackendError("environment variable " + config.api_key_env + " is not set");
  }
  return value;
}

json post_backend(const BackendConfig& config, const json& body) {
  const http::SplitUrl url = http::split_url(config.endpoint);
  auto client = http::make_client(url.origin, config.timeout);
  httplib::Headers headers;
  const std::string key = api_key(config);
  if (!key.empty()) headers.emplace("Authorization", "Bearer " + key);
  auto res = client->Post(url.path.empty() ? "/" : url.path, headers, body.dump(), "application/json");
  if (!res) {
    throw BackendError(config.name + ": request failed: " + httplib::to_string(res.error()), -1, true);
  }
  if (res->status != 200) {
    throw BackendError(config.name + ": HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 300),
                       -1, http::is_retriable_status(res->status));
  }
  try {
    json parsed = json::parse(res->body);
    parsed["__raw"] = res->body;
    return parsed;
  } catch (const json::parse_error& e) {
    throw BackendError(config.name + ": response is not JSON: " + e.what());
  }
}

const json& first_choice(const BackendConfig& config, const json& body) {
  if (!body.contains("choices") || !body["choices"].is_array() || body["choices"].empty()) {
    throw BackendError(config.name + ": response has no choices");
  }
  return body["choices"][0];
}

std::string string_or_empty(const json& j) { return j.is_string() ? j.get<std::string>() : std::string(); }

}  // namespace

// ---------------------------------------------------------------------------
// Configuration

BackendKind parse_backend_kind(std::string_view name) {
  if (name == "http_completion") return BackendKind::kHttpCompletion;
  if (name == "http_chat") return BackendKind::kHttpChat;
  if (name == "local_command") return BackendKind::kLocalCommand;
  if (name == "extractive_builtin" || name == "extractive") return BackendKind::kExtractiveBuiltin;
  if (name == "mock") return BackendKind::kMock;
  throw ValidationError("unknown backend kind '" + std::string(name) + "'");
}

std::string_view backend_kind_name(BackendKind kind) {
  switch (kind) {
    case BackendKind::kHttpCompletion: return "http_completion";
    case BackendKind::kHttpChat: return "http_chat";
    case BackendKind::kLocalCommand: return "local_command";
    case BackendKind::kExtractiveBuiltin: return "extractive_builtin";
    case BackendKind::kMock: return "mock";
  }
  return "unknown";
}

void BackendConfig::validate() const {
  if (name.empty()) throw ValidationError("models[].name must not be empty");
  if (!(temperature >= 0.0)) throw ValidationError(name + ": temperature must be >= 0");
  if (max_retries < 0) throw ValidationError(name + ": max_retries must be >= 0");
  if (requests_per_minute < 0) throw ValidationError(name + ": requests_per_minute must be >= 0");
  if ((kind == BackendKind::kHttpCompletion || kind == BackendKind::kHttpChat)) {
    if (endpoint.empty()) throw ValidationError(name + ": endpoint is required for " +
                                                std::string(backend_kind_name(kind)));
    http::split_url(endpoint);
  }
  if (kind == BackendKind::kLocalCommand && command.empty()) {
    throw ValidationError(name + ": command is required for local_command");
  }
  extractive.weights.validate();
}

std::string build_prompt(PromptStyle style, std::string_view chunk_text, std::size_t target_words) {
  if (chunk_text.empty()) throw ValidationError("build_prompt: empty chunk text");
  if (uses_word_target(style) && target_words < 1) {
    throw ValidationError("build_prompt: target_words must be >= 1 for word-budget prompts");
  }
  const std::string text(chunk_text);
  const std::string instruction = "Summarize the document in " + std::to_string(target_words) + " words";
  switch (style) {
    case PromptStyle::kTldrSuffix: return text + " " + std::string(kTldr);
    case PromptStyle::kTldrPrefix: return std::string(kTldr) + " " + text;
    case PromptStyle::kSummSuffixWords: return text + " " + instruction;
    case PromptStyle::kSummPrefixWords: return instruction + " " + text;
  }
  throw ValidationError("build_prompt: unknown style");
}

// ---------------------------------------------------------------------------
// Backends

SummaryResponse MockBackend::summarize(const SummaryRequest& request) {
  switch (behavior_) {
    case MockBehavior::kFail:
      throw BackendError("mock backend configured to fail", static_cast<long>(request.chunk_index), true);
    case MockBehavior::kEmpty:
      return {"", "", false};
    case MockBehavior::kEcho:
      break;
  }
  std::string text = first_words(request.chunk_text, request.max_words);
  return {text, text, false};
}

SummaryResponse ExtractiveBackend::summarize(const SummaryRequest& request) {
  corpus::CaseDocument doc;
  doc.id = "chunk-" + std::to_string(request.chunk_index);
  doc.text = request.chunk_text;
  doc.word_count = textproc::word_count(doc.text);
  GeneratedSummary s = extractive::extract_summary(doc, std::max<std::size_t>(request.max_words, 1), options_);
  return {s.text, s.text, false};
}

HttpCompletionBackend::HttpCompletionBackend(BackendConfig config) : config_(std::move(config)) {
  if (config_.model.empty()) config_.model = config_.name;
}

SummaryResponse HttpCompletionBackend::summarize(const SummaryRequest& request) {
  const json body = {{"model", config_.model},
                     {"prompt", request.prompt},
                     {"max_tokens", request.max_words},
                     {"temperature", config_.temperature},
                     {"presence_penalty", config_.presence_penalty},
                     {"frequency_penalty", config_.frequency_penalty}};
  const json res = post_backend(config_, body);
  const json& choice = first_choice(config_, res);
  SummaryResponse out;
  out.text = string_or_empty(choice.value("text", json()));
  out.truncated = choice.value("finish_reason", json()) == "length";
  out.raw = res["__raw"].get<std::string>();
  return out;
}

HttpChatBackend::HttpChatBackend(BackendConfig config) : config_(std::move(config)) {
  if (config_.model.empty()) config_.model = config_.name;
}

SummaryResponse HttpChatBackend::summarize(const SummaryRequest& request) {
  const json body = {{"model", config_.model},
                     {"messages", json::array({{{"role", "user"}, {"content", request.prompt}}})},
                     {"max_tokens", request.max_words},
                     {"temperature", config_.temperature}};
  const json res = post_backend(config_, body);
  const json& choice = first_choice(config_, res);
  SummaryResponse out;
  if (choice.contains("message") && choice["message"].is_object()) {
    out.text = string_or_empty(choice["message"].value("content", json()));
  }
  out.truncated = choice.value("finish_reason", json()) == "length";
  out.raw = res["__raw"].get<std::string>();
  return out;
}

LocalCommandBackend::LocalCommandBackend(BackendConfig config) : config_(std::move(config)) {}

SummaryResponse LocalCommandBackend::summarize(const SummaryRequest& request) {
  int in_pipe[2];
  int out_pipe[2];
  if (::pipe(in_pipe) != 0) throw BackendError(config_.name + ": pipe failed", -1, true);
  if (::pipe(out_pipe) != 0) {
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    throw BackendError(config_.name + ": pipe failed", -1, true);
  }

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, in_pipe[0], STDIN_FILENO);
  posix_spawn_file_actions_adddup2(&actions, out_pipe[1], STDOUT_FILENO);
  for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) posix_spawn_file_actions_addclose(&actions, fd);

  std::vector<std::string> env_storage;
  for (char** e = environ; e != nullptr && *e != nullptr; ++e) {
    if (std::strncmp(*e, "LEGALSUM_MAX_WORDS=", 19) != 0) env_storage.emplace_back(*e);
  }
  env_storage.push_back("LEGALSUM_MAX_WORDS=" + std::to_string(request.max_words));
  std::vector<char*> envp;
  for (auto& s : env_storage) envp.push_back(s.data());
  envp.push_back(nullptr);

  std::vector<std::string> args = config_.command;
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  argv.push_back(nullptr);

  pid_t pid = 0;
  const int rc = posix_spawnp(&pid, argv[0], &actions, nullptr, argv.data(), envp.data());
  posix_spawn_file_actions_destroy(&actions);
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  if (rc != 0) {
    ::close(in_pipe[1]);
    ::close(out_pipe[0]);
    throw BackendError(config_.name + ": cannot start '" + config_.command.front() + "': " + std::strerror(rc));
  }

  // Feed stdin and drain stdout together so a chatty child cannot block us.
  std::string output;
  std::string_view pending = request.prompt;
  int write_fd = in_pipe[1];
  if (pending.empty()) {
    ::close(write_fd);
    write_fd = -1;
  }
  struct sigaction ignore {};
  struct sigaction previous {};
  ignore.sa_handler = SIG_IGN;
  sigaction(SIGPIPE, &ignore, &previous);
  const auto deadline = std::chrono::steady_clock::now() + config_.timeout;
  bool timed_out = false;
  for (;;) {
    pollfd fds[2];
    nfds_t n = 0;
    fds[n++] = {out_pipe[0], POLLIN, 0};
    if (write_fd >= 0) fds[n++] = {write_fd, POLLOUT, 0};
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      timed_out = true;
      break;
    }
    const int ready = ::poll(fds, n, static_cast<int>(std::min<long long>(left.count(), 1000)));
    if (ready < 0 && errno != EINTR) break;
    if (ready <= 0) continue;
    if (n > 1 && (fds[1].revents & (POLLOUT | POLLERR | POLLHUP))) {
      const std::size_t chunk = std::min<std::size_t>(pending.size(), 65536);
      const ssize_t w = ::write(write_fd, pending.data(), chunk);
      if (w > 0) pending.remove_prefix(static_cast<std::size_t>(w));
      if (w < 0 && errno != EINTR && errno != EAGAIN) pending = {};
      if (pending.empty()) {
        ::close(write_fd);
        write_fd = -1;
      }
    }
    if (fds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
      char buf[65536];
      const ssize_t r = ::read(out_pipe[0], buf, sizeof(buf));
      if (r > 0) {
        output.append(buf, static_cast<std::size_t>(r));
      } else if (r == 0 || (errno != EINTR && errno != EAGAIN)) {
        break;
      }
    }
  }
  sigaction(SIGPIPE, &previous, nullptr);
  if (write_fd >= 0) ::close(write_fd);
  ::close(out_pipe[0]);
  if (timed_out) ::kill(pid, SIGKILL);
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (timed_out) throw BackendError(config_.name + ": command timed out", -1, true);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    throw BackendError(config_.name + ": command exited with status " + std::to_string(code));
  }
  return {output, output, false};
}

std::unique_ptr<Backend> make_backend(const BackendConfig& config) {
  config.validate();
  switch (config.kind) {
    case BackendKind::kHttpCompletion: return std::make_unique<HttpCompletionBackend>(config);
    case BackendKind::kHttpChat: return std::make_unique<HttpChatBackend>(config);
    case BackendKind::kLocalCommand: return std::make_unique<LocalCommandBackend>(config);
    case BackendKind::kExtractiveBuiltin: return std::make_unique<ExtractiveBackend>(config.extractive);
    case BackendKind::kMock: return std::make_unique<MockBackend>(config.mock_behavior);
  }
  throw ValidationError("unknown backend kind");
}

// ---------------------------------------------------------------------------
// Rate limiting and retries

RateLimiter::RateLimiter(int requests_per_minute)
    : interval_(requests_per_minute > 0 ? std::chrono::nanoseconds(std::chrono::minutes(1)) / requests_per_minute
                                        : std::chrono::nanoseconds(0)) {}

void RateLimiter::acquire() {
  if (interval_.count() == 0) return;
  std::chrono::steady_clock::time_point slot;
  {
    std::lock_guard<std::mutex> lock(mu_);
    const auto now = std::chrono::steady_clock::now();
    slot = std::max(now, next_);
    next_ = slot + interval_;
  }
  std::this_thread::sleep_until(slot);
}

std::chrono::milliseconds RetryPolicy::delay(int retry, std::mt19937_64& rng) const {
  double base = static_cast<double>(initial_backoff.count()) * std::pow(2.0, retry);
  base = std::min(base, static_cast<double>(max_backoff.count()));
  std::uniform_real_distribution<double> jitter(0.5, 1.0);
  return std::chrono::milliseconds(static_cast<long long>(base * jitter(rng)));
}

BackendClient::BackendClient(BackendConfig config, std::unique_ptr<Backend> backend, Sleeper sleeper)
    : config_(std::move(config)),
      backend_(std::move(backend)),
      limiter_(config_.requests_per_minute),
      policy_{config_.max_retries, config_.initial_backoff, config_.max_backoff},
      sleeper_(sleeper ? std::move(sleeper) : Sleeper([](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); })),
      rng_(std::hash<std::string>{}(config_.name)) {}

BackendClient::BackendClient(const BackendConfig& config) : BackendClient(config, make_backend(config)) {}

BackendClient::Result BackendClient::call(const SummaryRequest& request) {
  const long chunk = static_cast<long>(request.chunk_index);
  for (int attempt = 0;; ++attempt) {
    limiter_.acquire();
    try {
      return {backend_->summarize(request), attempt + 1};
    } catch (const BackendError& e) {
      if (!e.retriable() || attempt >= policy_.max_retries) {
        throw BackendError(config_.name + ": chunk " + std::to_string(chunk) + " failed after " +
                               std::to_string(attempt + 1) + " attempt(s): " + e.what(),
                           chunk, false);
      }
    } catch (const Error& e) {
      throw BackendError(config_.name + ": chunk " + std::to_string(chunk) + ": " + e.what(), chunk, false);
    }
    std::chrono::milliseconds wait;
    {
      std::lock_guard<std::mutex> lock(rng_mu_);
      wait = policy_.delay(attempt, rng_);
    }
    sleeper_(wait);
  }
}

// ---------------------------------------------------------------------------
// Orchestration

GeneratedSummary summarize_document(const corpus::CaseDocument& doc, std::size_t gold_words,
                                    BackendClient& client, PromptStyle style,
                                    const chunker::BudgetParams& budget, const SummarizeOptions& options) {
  chunker::BudgetParams params = budget;
  params.doc_words = doc.word_count > 0 ? doc.word_count : textproc::word_count(doc.text);
  params.gold_words = gold_words;
  if (!client.backend().needs_chunking()) params.chunk_words = std::max<std::size_t>(params.doc_words, 1);
  const chunker::ChunkPlan plan = chunker::chunk_document(doc, params, options.mode, options.abbreviations);

  GeneratedSummary out;
  out.doc_id = doc.id;
  out.model_name = client.config().name;
  out.prompt_style = style;
  for (std::size_t k = 0; k < plan.size(); ++k) {
    const chunker::Chunk& chunk = plan.chunks[k];
    SummaryRequest request;
    request.prompt = build_prompt(style, chunk.text, chunk.target_summary_words);
    request.chunk_text = chunk.text;
    request.max_words = chunk.target_summary_words;
    request.chunk_index = k;
    const BackendClient::Result result = client.call(request);

    std::string text = textproc::collapse_whitespace(result.response.text);
    const bool warning = text.empty() || result.response.truncated;
    if (warning) out.warnings.push_back(k);
    if (options.on_chunk) {
      ChunkRecord record;
      record.doc_id = doc.id;
      record.model_name = out.model_name;
      record.chunk_index = k;
      record.chunk_words = chunk.word_count;
      record.max_words = chunk.target_summary_words;
      record.prompt = request.prompt;
      record.raw = result.response.raw;
      record.text = text;
      record.warning = warning;
      record.attempts = result.attempts;
      options.on_chunk(record);
    }
    out.chunk_summaries.push_back(std::move(text));
  }
  out.text = chunker::assemble_summary(out.chunk_summaries);
  out.created_at = std::chrono::system_clock::now();
  return out;
}

}  // namespace legalsum::backends
