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

#include "legalsum/extractive.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <regex>
#include <unordered_map>

#include "legalsum/chunker.hpp"
#include "legalsum/error.hpp"

namespace legalsum::extractive {
namespace {

bool all_caps_heading(std::string_view line) {
  std::size_t letters = 0;
  for (char c : line) {
    if (textproc::is_lower(c)) return false;
    if (textproc::is_upper(c)) ++letters;
  }
  return letters >= 2 && textproc::raw_words(line).size() <= 12;
}

}  // namespace

void Weights::validate() const {
  for (double w : {entity, date, heading}) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw ValidationError("extractive weights must be finite and >= 0");
  }
}

std::vector<std::string> Options::default_heading_patterns() {
  return {R"(^(?:\d+(?:\.\d+)*\.?|[IVXLC]+\.)\s+[A-Z][A-Za-z ,'&()-]{0,60}$)"};
}

std::vector<std::size_t> detect_headings(std::string_view text, const textproc::SentenceList& sentences,
                                         const std::vector<std::string>& patterns) {
  std::vector<std::regex> compiled;
  compiled.reserve(patterns.size());
  for (const auto& p : patterns) {
    try {
      compiled.emplace_back(p);
    } catch (const std::regex_error& e) {
      throw ValidationError("bad heading pattern '" + p + "': " + e.what());
    }
  }
  std::vector<std::size_t> out;
  std::size_t line_begin = 0;
  while (line_begin <= text.size()) {
    std::size_t line_end = text.find('\n', line_begin);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::size_t b = line_begin;
    std::size_t e = line_end;
    while (b < e && textproc::is_space(text[b])) ++b;
    while (e > b && textproc::is_space(text[e - 1])) --e;
    if (b < e) {
      const std::string line(text.substr(b, e - b));
      bool heading = all_caps_heading(line);
      for (std::size_t k = 0; !heading && k < compiled.size(); ++k) heading = std::regex_match(line, compiled[k]);
      if (heading) {
        // Sentence containing the line start, else the next one.
        std::size_t s = 0;
        while (s < sentences.size() && sentences.offsets[s].end <= b) ++s;
        if (s < sentences.size() && (out.empty() || out.back() != s)) out.push_back(s);
      }
    }
    if (line_end == text.size()) break;
    line_begin = line_end + 1;
  }
  return out;
}

std::vector<SentenceScore> score_sentences(const corpus::CaseDocument& doc, const Options& options) {
  options.weights.validate();
  const textproc::SentenceList sentences = textproc::split_sentences(doc.text, options.abbreviations);
  if (sentences.empty()) throw ValidationError("score_sentences: document '" + doc.id + "' has no sentences");

  std::vector<textproc::TokenSeq> tokens;
  tokens.reserve(sentences.size());
  std::unordered_map<std::string, std::size_t> doc_count;
  std::unordered_map<std::string, std::size_t> sentence_freq;
  std::size_t total_tokens = 0;
  for (const auto& s : sentences.sentences) {
    tokens.push_back(textproc::tokenize(s));
    for (const auto& t : tokens.back()) ++doc_count[t];
    total_tokens += tokens.back().size();
    std::vector<std::string> distinct(tokens.back().begin(), tokens.back().end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (const auto& t : distinct) ++sentence_freq[t];
  }

  const double n_sentences = static_cast<double>(sentences.size());
  std::vector<double> raw(sentences.size(), 0.0);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].empty()) continue;
    double sum = 0.0;
    for (const auto& t : tokens[i]) {
      const double tf = static_cast<double>(doc_count[t]) / static_cast<double>(total_tokens);
      const double idf = std::log(n_sentences / static_cast<double>(sentence_freq[t]));
      sum += tf * idf;
    }
    raw[i] = sum / static_cast<double>(tokens[i].size());
  }
  const double max_raw = *std::max_element(raw.begin(), raw.end());

  static const consistency::HeuristicEntityExtractor kHeuristic;
  const consistency::EntityExtractor& entities = options.entities ? *options.entities : kHeuristic;
  const std::vector<std::size_t> headings = detect_headings(doc.text, sentences, options.heading_patterns);

  std::vector<SentenceScore> scores(sentences.size());
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    SentenceScore& s = scores[i];
    s.index = i;
    s.tfidf_mean = max_raw > 0.0 ? raw[i] / max_raw : 0.0;
    s.entity_count = consistency::extract_entities(sentences.sentences[i], entities).size();
    s.date_count = consistency::count_dates(sentences.sentences[i]);
    if (!headings.empty()) {
      std::size_t best = sentences.size();
      for (std::size_t h : headings) best = std::min(best, h > i ? h - i : i - h);
      s.heading_proximity = 1.0 / (1.0 + static_cast<double>(best));
    }
    s.total = s.tfidf_mean + options.weights.entity * static_cast<double>(s.entity_count) +
              options.weights.date * static_cast<double>(s.date_count) +
              options.weights.heading * s.heading_proximity;
  }
  return scores;
}

std::vector<std::size_t> select_sentences(const std::vector<double>& totals,
                                          const std::vector<std::size_t>& word_counts,
                                          std::size_t budget_words) {
  if (totals.size() != word_counts.size()) throw ValidationError("select_sentences: size mismatch");
  if (budget_words < 1) throw ValidationError("budget_words must be >= 1");
  std::vector<std::size_t> order(totals.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return totals[a] > totals[b]; });

  std::vector<std::size_t> picked;
  std::size_t used = 0;
  for (std::size_t idx : order) {
    if (picked.empty() || used + word_counts[idx] <= budget_words) {
      picked.push_back(idx);
      used += word_counts[idx];
    }
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

GeneratedSummary extract_summary(const corpus::CaseDocument& doc, std::size_t budget_words, const Options& options) {
  if (budget_words < 1) throw ValidationError("budget_words must be >= 1");
  const textproc::SentenceList sentences = textproc::split_sentences(doc.text, options.abbreviations);
  const std::vector<SentenceScore> scores = score_sentences(doc, options);
  std::vector<double> totals;
  std::vector<std::size_t> word_counts;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    totals.push_back(scores[i].total);
    word_counts.push_back(textproc::word_count(sentences.sentences[i]));
  }

  std::string joined;
  for (std::size_t idx : select_sentences(totals, word_counts, budget_words)) {
    if (!joined.empty()) joined.push_back(' ');
    joined += sentences.sentences[idx];
  }

  GeneratedSummary out;
  out.doc_id = doc.id;
  out.model_name = options.model_name;
  out.chunk_summaries = {chunker::assemble_summary({joined})};
  out.text = out.chunk_summaries.front();
  out.created_at = std::chrono::system_clock::now();
  return out;
}

}  // namespace legalsum::extractive
