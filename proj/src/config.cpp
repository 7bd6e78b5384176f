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

#include "legalsum/config.hpp"

#include <charconv>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <nlohmann/json.hpp>

#include "legalsum/error.hpp"

namespace legalsum::config {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& field, const std::string& why) {
  throw ValidationError("config field '" + field + "': " + why);
}

void check_keys(const json& obj, const std::string& where, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) bad(where.empty() ? "<root>" : where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) bad(where.empty() ? key : where + "." + key, "unknown field");
  }
}

std::string field_name(const std::string& where, std::string_view key) {
  return where.empty() ? std::string(key) : where + "." + std::string(key);
}

std::string get_string(const json& obj, const std::string& where, std::string_view key) {
  const auto& v = obj.at(std::string(key));
  if (!v.is_string()) bad(field_name(where, key), "expected a string");
  return v.get<std::string>();
}

double get_number(const json& obj, const std::string& where, std::string_view key) {
  const auto& v = obj.at(std::string(key));
  if (!v.is_number()) bad(field_name(where, key), "expected a number");
  return v.get<double>();
}

long long get_int(const json& obj, const std::string& where, std::string_view key) {
  const auto& v = obj.at(std::string(key));
  if (!v.is_number_integer()) bad(field_name(where, key), "expected an integer");
  return v.get<long long>();
}

std::size_t get_positive(const json& obj, const std::string& where, std::string_view key) {
  long long v = get_int(obj, where, key);
  if (v < 1) bad(field_name(where, key), "must be >= 1");
  return static_cast<std::size_t>(v);
}

bool get_bool(const json& obj, const std::string& where, std::string_view key) {
  const auto& v = obj.at(std::string(key));
  if (!v.is_boolean()) bad(field_name(where, key), "expected true or false");
  return v.get<bool>();
}

std::vector<std::string> get_strings(const json& obj, const std::string& where, std::string_view key) {
  const auto& v = obj.at(std::string(key));
  if (!v.is_array()) bad(field_name(where, key), "expected an array of strings");
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string()) bad(field_name(where, key), "expected an array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  if (path.empty() || path.is_absolute() || base.empty()) return path;
  return base / path;
}

// Parses an enum-valued string, renaming the error after the field.
template <typename Fn>
auto parse_named(const json& obj, const std::string& where, std::string_view key, Fn fn) {
  std::string text = get_string(obj, where, key);
  try {
    return fn(text);
  } catch (const ValidationError& e) {
    bad(field_name(where, key), e.what());
  }
}

std::chrono::milliseconds get_ms(const json& obj, const std::string& where, std::string_view key) {
  long long v = get_int(obj, where, key);
  if (v < 1) bad(field_name(where, key), "must be >= 1");
  return std::chrono::milliseconds(v);
}

ModelSpec parse_model(const json& m, const std::string& where) {
  check_keys(m, where,
             {"name", "kind", "prompt_style", "family", "endpoint", "model", "api_key_env", "command",
              "temperature", "presence_penalty", "frequency_penalty", "max_retries", "requests_per_minute",
              "timeout_ms", "initial_backoff_ms", "max_backoff_ms", "mock_behavior"});
  if (!m.contains("name")) bad(where + ".name", "required");
  if (!m.contains("kind")) bad(where + ".kind", "required");
  std::string name = get_string(m, where, "name");
  ModelSpec spec;
  if (auto builtin = builtin_model(name)) spec = *builtin;
  auto& b = spec.backend;
  b.name = name;
  b.kind = parse_named(m, where, "kind", backends::parse_backend_kind);
  if (b.kind == backends::BackendKind::kExtractiveBuiltin) spec.family = evalrunner::Family::kExtractive;
  if (m.contains("prompt_style")) spec.style = parse_named(m, where, "prompt_style", parse_prompt_style);
  if (m.contains("family")) spec.family = parse_named(m, where, "family", evalrunner::parse_family);
  if (m.contains("endpoint")) b.endpoint = get_string(m, where, "endpoint");
  if (m.contains("model")) b.model = get_string(m, where, "model");
  if (m.contains("api_key_env")) b.api_key_env = get_string(m, where, "api_key_env");
  if (m.contains("command")) b.command = get_strings(m, where, "command");
  if (m.contains("temperature")) b.temperature = get_number(m, where, "temperature");
  if (m.contains("presence_penalty")) b.presence_penalty = get_number(m, where, "presence_penalty");
  if (m.contains("frequency_penalty")) b.frequency_penalty = get_number(m, where, "frequency_penalty");
  if (m.contains("max_retries")) b.max_retries = static_cast<int>(get_int(m, where, "max_retries"));
  if (m.contains("requests_per_minute")) {
    b.requests_per_minute = static_cast<int>(get_int(m, where, "requests_per_minute"));
  }
  if (m.contains("timeout_ms")) b.timeout = get_ms(m, where, "timeout_ms");
  if (m.contains("initial_backoff_ms")) b.initial_backoff = get_ms(m, where, "initial_backoff_ms");
  if (m.contains("max_backoff_ms")) b.max_backoff = get_ms(m, where, "max_backoff_ms");
  if (m.contains("mock_behavior")) {
    std::string mb = get_string(m, where, "mock_behavior");
    if (mb == "echo") b.mock_behavior = backends::MockBehavior::kEcho;
    else if (mb == "fail") b.mock_behavior = backends::MockBehavior::kFail;
    else if (mb == "empty") b.mock_behavior = backends::MockBehavior::kEmpty;
    else bad(where + ".mock_behavior", "expected echo, fail or empty");
  }
  try {
    b.validate();
  } catch (const ValidationError& e) {
    bad(where, e.what());
  }
  return spec;
}

}  // namespace

std::optional<double> parse_budget(std::string_view text) {
  if (text == "gold_ratio") return std::nullopt;
  constexpr std::string_view kFixed = "fixed_ratio:";
  if (text.substr(0, kFixed.size()) == kFixed) {
    std::string num(text.substr(kFixed.size()));
    std::istringstream in(num);
    double r = 0.0;
    in >> r;
    if (!in.fail() && in.eof() && r > 0.0 && r <= 1.0) return r;
    throw ValidationError("budget: fixed ratio must be a number in (0, 1], got '" + num + "'");
  }
  throw ValidationError("budget: expected 'gold_ratio' or 'fixed_ratio:<r>', got '" + std::string(text) + "'");
}

std::optional<ModelSpec> builtin_model(std::string_view name) {
  ModelSpec spec;
  spec.backend.name = std::string(name);
  if (name == "mock") {
    spec.backend.kind = backends::BackendKind::kMock;
    spec.style = PromptStyle::kSummPrefixWords;
    spec.family = evalrunner::Family::kLlm;
    return spec;
  }
  if (name == "extractive" || name == "casesummarizer") {
    spec.backend.kind = backends::BackendKind::kExtractiveBuiltin;
    spec.backend.extractive.model_name = std::string(name);
    spec.style = PromptStyle::kSummPrefixWords;
    spec.family = evalrunner::Family::kExtractive;
    return spec;
  }
  return std::nullopt;
}

void RunConfig::validate() const {
  if (chunk_words < 1) bad("chunk_words", "must be >= 1");
  if (fixed_ratio && !(*fixed_ratio > 0.0 && *fixed_ratio <= 1.0)) bad("budget", "fixed ratio must lie in (0, 1]");
  if (!(nli_threshold >= 0.0 && nli_threshold <= 1.0)) bad("nli_threshold", "must lie in [0, 1]");
  if (!(alpha > 0.0 && alpha < 1.0)) bad("alpha", "must lie in (0, 1)");
  if (workers < 1) bad("workers", "must be >= 1");
  try {
    weights.validate();
  } catch (const ValidationError& e) {
    bad("extractive.weights", e.what());
  }
  for (std::size_t i = 0; i < models.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (models[i].backend.name == models[j].backend.name) {
        bad("models[" + std::to_string(i) + "].name", "duplicate model '" + models[i].backend.name + "'");
      }
    }
  }
}

RunConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(root, "",
             {"corpus", "split", "models", "chunk_words", "chunk_mode", "budget", "scorer", "nli_threshold",
              "extractive", "abbreviations", "gazetteer", "output_dir", "workers", "rougeL", "stem", "alpha",
              "paired_test", "consistency_for_extractive"});
  RunConfig cfg;
  if (root.contains("corpus")) cfg.corpus = resolve(base_dir, get_string(root, "", "corpus"));
  if (root.contains("split")) cfg.split = parse_named(root, "", "split", corpus::parse_split);
  if (root.contains("models")) {
    const auto& models = root.at("models");
    if (!models.is_array()) bad("models", "expected an array");
    for (std::size_t i = 0; i < models.size(); ++i) {
      cfg.models.push_back(parse_model(models[i], "models[" + std::to_string(i) + "]"));
    }
  }
  if (root.contains("chunk_words")) cfg.chunk_words = get_positive(root, "", "chunk_words");
  if (root.contains("chunk_mode")) cfg.chunk_mode = parse_named(root, "", "chunk_mode", chunker::parse_chunk_mode);
  if (root.contains("budget")) cfg.fixed_ratio = parse_named(root, "", "budget", parse_budget);
  if (root.contains("scorer")) {
    const auto& s = root.at("scorer");
    check_keys(s, "scorer", {"url", "timeout_ms", "fallback_to_heuristic"});
    if (s.contains("url")) cfg.scorer_url = get_string(s, "scorer", "url");
    if (s.contains("timeout_ms")) cfg.scorer_timeout = get_ms(s, "scorer", "timeout_ms");
    if (s.contains("fallback_to_heuristic")) cfg.scorer_fallback = get_bool(s, "scorer", "fallback_to_heuristic");
  }
  if (root.contains("nli_threshold")) cfg.nli_threshold = get_number(root, "", "nli_threshold");
  if (root.contains("extractive")) {
    const auto& e = root.at("extractive");
    check_keys(e, "extractive", {"weights", "heading_patterns"});
    if (e.contains("weights")) {
      const auto& w = e.at("weights");
      check_keys(w, "extractive.weights", {"entity", "date", "heading"});
      if (w.contains("entity")) cfg.weights.entity = get_number(w, "extractive.weights", "entity");
      if (w.contains("date")) cfg.weights.date = get_number(w, "extractive.weights", "date");
      if (w.contains("heading")) cfg.weights.heading = get_number(w, "extractive.weights", "heading");
    }
    if (e.contains("heading_patterns")) cfg.heading_patterns = get_strings(e, "extractive", "heading_patterns");
  }
  if (root.contains("abbreviations")) cfg.abbreviations_file = resolve(base_dir, get_string(root, "", "abbreviations"));
  if (root.contains("gazetteer")) cfg.gazetteer_file = resolve(base_dir, get_string(root, "", "gazetteer"));
  if (root.contains("output_dir")) cfg.output_dir = resolve(base_dir, get_string(root, "", "output_dir"));
  if (root.contains("workers")) cfg.workers = get_positive(root, "", "workers");
  if (root.contains("rougeL")) cfg.rougeL_mode = parse_named(root, "", "rougeL", metrics::parse_rougeL_mode);
  if (root.contains("stem")) cfg.stem = get_bool(root, "", "stem");
  if (root.contains("alpha")) cfg.alpha = get_number(root, "", "alpha");
  if (root.contains("paired_test")) cfg.paired_test = get_bool(root, "", "paired_test");
  if (root.contains("consistency_for_extractive")) {
    cfg.consistency_for_extractive = get_bool(root, "", "consistency_for_extractive");
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read config file: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path());
}

}  // namespace legalsum::config
