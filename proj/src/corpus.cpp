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

#include "legalsum/corpus.hpp"

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <unordered_set>

#include "legalsum/error.hpp"
#include "legalsum/textproc.hpp"

namespace legalsum::corpus {
namespace {

using json = nlohmann::json;

std::string required_string(const json& record, const char* field, const std::string& where) {
  auto it = record.find(field);
  if (it == record.end() || it->is_null()) {
    throw ValidationError(where + ": missing field '" + field + "'");
  }
  if (!it->is_string()) throw ValidationError(where + ": field '" + field + "' must be a string");
  return it->get<std::string>();
}

}  // namespace

Split parse_split(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "test") return Split::kTest;
  throw ValidationError("unknown split '" + std::string(name) + "' (expected train or test)");
}

std::string_view split_name(Split split) { return split == Split::kTrain ? "train" : "test"; }

CorpusPair make_pair(std::string id, std::string text, std::string summary) {
  CorpusPair pair;
  pair.document.word_count = textproc::word_count(text);
  pair.gold.word_count = textproc::word_count(summary);
  if (pair.document.word_count == 0) throw ValidationError("record '" + id + "': text has no words");
  if (pair.gold.word_count == 0) throw ValidationError("record '" + id + "': summary has no words");
  pair.gold.doc_id = id;
  pair.document.id = std::move(id);
  pair.document.text = std::move(text);
  pair.gold.text = std::move(summary);
  return pair;
}

std::vector<CorpusPair> load_corpus(const std::filesystem::path& path, Split split) {
  std::filesystem::path file = path;
  if (std::filesystem::is_directory(path)) {
    file = path / (std::string(split_name(split)) + ".jsonl");
  }
  if (!std::filesystem::is_regular_file(file)) {
    throw InputError("corpus file not found: " + file.string());
  }
  std::ifstream in(file);
  if (!in) throw InputError("cannot read corpus file: " + file.string());

  std::vector<CorpusPair> pairs;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (textproc::collapse_whitespace(line).empty()) continue;
    const std::string where = file.filename().string() + ":" + std::to_string(line_no);
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw InputError(where + ": malformed JSON record (" + e.what() + ")");
    }
    if (!record.is_object()) throw InputError(where + ": record is not a JSON object");
    std::string id = required_string(record, "id", where);
    const std::string named = where + " (record '" + id + "')";
    std::string text = required_string(record, "text", named);
    std::string summary = required_string(record, "summary", named);
    if (!seen.insert(id).second) throw ValidationError(where + ": duplicate id '" + id + "'");
    pairs.push_back(make_pair(std::move(id), std::move(text), std::move(summary)));
  }
  return pairs;
}

void save_corpus(const std::filesystem::path& path, const std::vector<CorpusPair>& pairs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write corpus file: " + path.string());
  for (const auto& p : pairs) {
    json record = {{"id", p.document.id}, {"text", p.document.text}, {"summary", p.gold.text}};
    out << record.dump() << '\n';
  }
}

CorpusStats corpus_stats(const std::vector<CorpusPair>& pairs) {
  if (pairs.empty()) throw ValidationError("corpus_stats: empty corpus");
  // Integer sums keep the means exact up to the final division.
  unsigned long long doc_words = 0;
  unsigned long long summary_words = 0;
  for (const auto& p : pairs) {
    doc_words += p.document.word_count;
    summary_words += p.gold.word_count;
  }
  const double n = static_cast<double>(pairs.size());
  return {pairs.size(), static_cast<double>(doc_words) / n, static_cast<double>(summary_words) / n};
}

std::string format_stats(const CorpusStats& stats) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "n_docs: %zu\navg_doc_words: %.2f\navg_summary_words: %.2f\n",
                stats.n_docs, stats.avg_doc_words, stats.avg_summary_words);
  return buf;
}

}  // namespace legalsum::corpus
