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

#include "legalsum/summary.hpp"

#include <ctime>
#include <fstream>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <sstream>

#include "legalsum/error.hpp"

namespace legalsum {
namespace {

using json = nlohmann::ordered_json;

struct StyleName {
  PromptStyle style;
  std::string_view id;
  std::string_view variant;
};

constexpr StyleName kStyles[] = {
    {PromptStyle::kTldrSuffix, "tldr_suffix", "davinci-tldr"},
    {PromptStyle::kSummSuffixWords, "summ_suffix_words", "davinci-summ"},
    {PromptStyle::kTldrPrefix, "tldr_prefix", "chatgpt-tldr"},
    {PromptStyle::kSummPrefixWords, "summ_prefix_words", "chatgpt-summ"},
};

}  // namespace

PromptStyle parse_prompt_style(std::string_view name) {
  for (const auto& s : kStyles) {
    if (name == s.id || name == s.variant) return s.style;
  }
  throw ValidationError("unknown prompt style '" + std::string(name) + "'");
}

std::string_view prompt_style_name(PromptStyle style) {
  for (const auto& s : kStyles) {
    if (s.style == style) return s.id;
  }
  return "unknown";
}

bool uses_word_target(PromptStyle style) {
  return style == PromptStyle::kSummPrefixWords || style == PromptStyle::kSummSuffixWords;
}

std::string format_timestamp(std::chrono::system_clock::time_point t) {
  const std::time_t secs = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

std::chrono::system_clock::time_point parse_timestamp(std::string_view iso) {
  std::tm tm{};
  std::istringstream in{std::string(iso)};
  in >> std::get_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  if (in.fail()) throw ValidationError("bad timestamp '" + std::string(iso) + "'");
  return std::chrono::system_clock::from_time_t(timegm(&tm));
}

void save_summaries(const std::filesystem::path& path, const std::vector<GeneratedSummary>& summaries) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write summaries file: " + path.string());
  for (const auto& s : summaries) {
    json record;
    record["doc_id"] = s.doc_id;
    record["model_name"] = s.model_name;
    record["text"] = s.text;
    record["chunk_summaries"] = s.chunk_summaries;
    record["prompt_style"] = s.prompt_style ? json(prompt_style_name(*s.prompt_style)) : json(nullptr);
    record["warnings"] = s.warnings;
    record["created_at"] = format_timestamp(s.created_at);
    out << record.dump() << '\n';
  }
}

std::vector<GeneratedSummary> load_summaries(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read summaries file: " + path.string());
  std::vector<GeneratedSummary> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path.filename().string() + ":" + std::to_string(line_no);
    try {
      const json record = json::parse(line);
      GeneratedSummary s;
      s.doc_id = record.at("doc_id").get<std::string>();
      s.model_name = record.value("model_name", std::string());
      s.text = record.at("text").get<std::string>();
      s.chunk_summaries = record.value("chunk_summaries", std::vector<std::string>{s.text});
      if (record.contains("prompt_style") && record["prompt_style"].is_string()) {
        s.prompt_style = parse_prompt_style(record["prompt_style"].get<std::string>());
      }
      s.warnings = record.value("warnings", std::vector<std::size_t>{});
      if (record.contains("created_at")) {
        s.created_at = parse_timestamp(record["created_at"].get<std::string>());
      }
      out.push_back(std::move(s));
    } catch (const json::exception& e) {
      throw InputError(where + ": malformed summary record (" + e.what() + ")");
    }
  }
  return out;
}

std::map<std::string, GeneratedSummary> index_by_doc(std::vector<GeneratedSummary> summaries) {
  std::map<std::string, GeneratedSummary> out;
  for (auto& s : summaries) {
    const std::string id = s.doc_id;
    if (!out.emplace(id, std::move(s)).second) {
      throw ValidationError("duplicate summary for document '" + id + "'");
    }
  }
  return out;
}

}  // namespace legalsum
