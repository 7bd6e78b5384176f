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

#include "legalsum/textproc.hpp"

#include <algorithm>
#include <fstream>

#include "legalsum/error.hpp"

namespace legalsum::textproc {
namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

// "M.K.", "U.S.", "A." -- single letters each followed by a period.
bool is_initials(std::string_view word) {
  if (word.size() < 2 || word.size() % 2 != 0) return false;
  for (std::size_t i = 0; i < word.size(); i += 2) {
    if (!is_alpha(word[i]) || word[i + 1] != '.') return false;
  }
  return true;
}

bool is_closing(char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }
bool is_opening(char c) { return c == '"' || c == '\'' || c == '(' || c == '['; }

const std::vector<std::string>& builtin_abbreviations() {
  static const std::vector<std::string> kEntries = {
      "ss",   "s",    "cl",   "cls",  "no",    "nos",  "rs",   "v",    "vs",   "hon",
      "art",  "arts", "sec",  "secs", "para",  "paras", "r",   "rr",   "o",    "mr",
      "mrs",  "ms",   "dr",   "j",    "jj",    "cj",   "sr",   "jr",   "st",   "co",
      "ltd",  "pvt",  "inc",  "viz",  "i.e",   "e.g",  "ibid", "p",    "pp",   "vol",
      "govt", "dept", "supp", "sch",  "exh",   "ex",   "ors",  "anr",  "dt",   "dtd",
      "cr",   "crl",  "civ",  "misc", "w.p",   "s.l.p", "a.i.r", "s.c.r", "u/s", "sub-s",
      "cf",   "approx", "hon'ble", "ld", "smt", "shri", "sri", "kum", "ch", "pt", "mohd", "md"};
  return kEntries;
}

}  // namespace

std::string to_lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = to_lower(c);
  return out;
}

std::string light_stem(std::string_view token) {
  std::string t(token);
  if (t.size() > 5 && ends_with(t, "ing")) return t.substr(0, t.size() - 3);
  if (t.size() > 4 && ends_with(t, "ies")) return t.substr(0, t.size() - 3) + "y";
  if (t.size() > 4 && ends_with(t, "sses")) return t.substr(0, t.size() - 2);
  if (t.size() > 4 && ends_with(t, "ed")) return t.substr(0, t.size() - 2);
  if (t.size() > 3 && ends_with(t, "s") && !ends_with(t, "ss") && !ends_with(t, "us")) {
    return t.substr(0, t.size() - 1);
  }
  return t;
}

std::string normalize_token(std::string_view raw, const TokenizeOptions& options) {
  std::size_t b = 0;
  std::size_t e = raw.size();
  while (b < e && is_punct(raw[b])) ++b;
  while (e > b && is_punct(raw[e - 1])) --e;
  if (b == e) return {};
  std::string token = to_lower(raw.substr(b, e - b));
  if (options.stem) token = light_stem(token);
  return token;
}

std::vector<RawWord> raw_words(std::string_view text) {
  std::vector<RawWord> words;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && is_space(text[i])) ++i;
    if (i >= n) break;
    std::size_t j = i;
    bool counted = false;
    while (j < n && !is_space(text[j])) {
      if (!is_punct(text[j])) counted = true;
      ++j;
    }
    words.push_back({i, j, counted});
    i = j;
  }
  return words;
}

TokenSeq tokenize(std::string_view text, const TokenizeOptions& options) {
  TokenSeq seq;
  for (const RawWord& w : raw_words(text)) {
    if (!w.counted) continue;
    seq.tokens.push_back(normalize_token(text.substr(w.begin, w.end - w.begin), options));
  }
  return seq;
}

std::size_t word_count(std::string_view text) {
  std::size_t count = 0;
  for (const RawWord& w : raw_words(text)) count += w.counted ? 1 : 0;
  return count;
}

std::string collapse_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Abbreviations

const AbbreviationList& AbbreviationList::builtin() {
  static const AbbreviationList kList(builtin_abbreviations());
  return kList;
}

AbbreviationList::AbbreviationList(const std::vector<std::string>& entries) {
  for (const auto& e : entries) add(e);
}

AbbreviationList AbbreviationList::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read abbreviation list: " + path.string());
  AbbreviationList list;
  std::string line;
  while (std::getline(in, line)) {
    const std::string entry = collapse_whitespace(line);
    if (entry.empty() || entry.front() == '#') continue;
    list.add(entry);
  }
  return list;
}

void AbbreviationList::add(std::string_view entry) {
  std::string e = to_lower(entry);
  while (!e.empty() && e.back() == '.') e.pop_back();
  if (!e.empty()) entries_.insert(std::move(e));
}

void AbbreviationList::merge(const AbbreviationList& other) {
  entries_.insert(other.entries_.begin(), other.entries_.end());
}

bool AbbreviationList::contains(std::string_view word) const {
  std::size_t b = 0;
  while (b < word.size() && is_opening(word[b])) ++b;
  word.remove_prefix(b);
  if (is_initials(word)) return true;
  std::string key = to_lower(word);
  while (!key.empty() && key.back() == '.') key.pop_back();
  return !key.empty() && entries_.find(key) != entries_.end();
}

// ---------------------------------------------------------------------------
// Sentences

SentenceList split_sentences(std::string_view text, const AbbreviationList& abbreviations) {
  SentenceList out;
  const std::size_t n = text.size();
  std::size_t start = 0;
  while (start < n && is_space(text[start])) ++start;

  auto emit = [&](std::size_t b, std::size_t e) {
    while (e > b && is_space(text[e - 1])) --e;
    if (e <= b) return;
    out.sentences.emplace_back(text.substr(b, e - b));
    out.offsets.push_back({b, e});
  };

  for (std::size_t i = start; i < n; ++i) {
    const char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;
    std::size_t j = i + 1;
    while (j < n && is_closing(text[j])) ++j;
    if (j >= n || !is_space(text[j])) continue;
    std::size_t k = j;
    while (k < n && is_space(text[k])) ++k;
    std::size_t first = k;
    while (first < n && is_opening(text[first])) ++first;
    if (first >= n || !(is_upper(text[first]) || is_digit(text[first]))) continue;
    if (c == '.') {
      std::size_t w = i;
      while (w > start && !is_space(text[w - 1])) --w;
      if (abbreviations.contains(text.substr(w, i + 1 - w))) continue;
    }
    emit(start, j);
    start = k;
    i = k - 1;
  }
  if (start < n) emit(start, n);
  return out;
}

// ---------------------------------------------------------------------------
// N-grams and LCS

std::vector<Ngram> ngrams(const TokenSeq& seq, std::size_t n) {
  if (n < 1) throw ValidationError("ngrams: n must be >= 1");
  std::vector<Ngram> out;
  if (seq.size() < n) return out;
  out.reserve(seq.size() - n + 1);
  for (std::size_t i = 0; i + n <= seq.size(); ++i) {
    out.emplace_back(seq.tokens.begin() + static_cast<std::ptrdiff_t>(i),
                     seq.tokens.begin() + static_cast<std::ptrdiff_t>(i + n));
  }
  return out;
}

NgramCounts count_ngrams(const TokenSeq& seq, std::size_t n) {
  NgramCounts counts;
  for (auto& g : ngrams(seq, n)) ++counts[std::move(g)];
  return counts;
}

std::size_t lcs_len(const TokenSeq& a, const TokenSeq& b) {
  if (a.empty() || b.empty()) return 0;
  const TokenSeq& outer = a.size() >= b.size() ? a : b;
  const TokenSeq& inner = a.size() >= b.size() ? b : a;
  std::vector<std::size_t> prev(inner.size() + 1, 0);
  std::vector<std::size_t> cur(inner.size() + 1, 0);
  for (std::size_t i = 1; i <= outer.size(); ++i) {
    for (std::size_t j = 1; j <= inner.size(); ++j) {
      cur[j] = outer[i - 1] == inner[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[inner.size()];
}

std::vector<std::size_t> lcs_positions(const TokenSeq& a, const TokenSeq& b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  std::vector<std::vector<std::size_t>> dp(n + 1, std::vector<std::size_t>(m + 1, 0));
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      dp[i][j] = a[i - 1] == b[j - 1] ? dp[i - 1][j - 1] + 1 : std::max(dp[i - 1][j], dp[i][j - 1]);
    }
  }
  std::vector<std::size_t> positions;
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 && j > 0) {
    if (a[i - 1] == b[j - 1]) {
      positions.push_back(i - 1);
      --i;
      --j;
    } else if (dp[i - 1][j] >= dp[i][j - 1]) {
      --i;
    } else {
      --j;
    }
  }
  std::reverse(positions.begin(), positions.end());
  return positions;
}

}  // namespace legalsum::textproc
