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

// Tokenization, sentence segmentation, n-grams and LCS shared by every
// metric. All functions are pure and thread-safe.

#ifndef LEGALSUM_TEXTPROC_HPP_
#define LEGALSUM_TEXTPROC_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace legalsum::textproc {

// Ordered lowercase word tokens. No token is empty or contains whitespace.
struct TokenSeq {
  std::vector<std::string> tokens;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
  const std::string& operator[](std::size_t i) const { return tokens[i]; }
  auto begin() const { return tokens.begin(); }
  auto end() const { return tokens.end(); }

  friend bool operator==(const TokenSeq&, const TokenSeq&) = default;
};

struct TokenizeOptions {
  // Light suffix stripping (plural, -ed, -ing). Off by default so scores are
  // exact-match.
  bool stem = false;
};

TokenSeq tokenize(std::string_view text, const TokenizeOptions& options = {});

// Number of tokens tokenize() would produce. This is the word count used for
// |D|, |S| and every chunk budget.
std::size_t word_count(std::string_view text);

// A whitespace-delimited span of the source text. `counted` is false for
// spans that tokenize to nothing (standalone punctuation).
struct RawWord {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool counted = false;
};

std::vector<RawWord> raw_words(std::string_view text);

// Strips leading/trailing ASCII punctuation and lowercases. Returns an empty
// string for pure punctuation.
std::string normalize_token(std::string_view raw, const TokenizeOptions& options = {});

std::string light_stem(std::string_view token);

struct CharSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  friend bool operator==(const CharSpan&, const CharSpan&) = default;
};

struct SentenceList {
  std::vector<std::string> sentences;
  std::vector<CharSpan> offsets;

  std::size_t size() const { return sentences.size(); }
  bool empty() const { return sentences.empty(); }
};

// Abbreviations after which a period never ends a sentence. Entries are
// stored lowercased without the trailing period.
class AbbreviationList {
 public:
  // The built-in legal list (ss., cl., No., Rs., v., Hon., ...).
  static const AbbreviationList& builtin();

  AbbreviationList() = default;
  explicit AbbreviationList(const std::vector<std::string>& entries);

  // One abbreviation per line; blank lines and lines starting with '#' are
  // ignored. Throws InputError when the file cannot be read.
  static AbbreviationList from_file(const std::filesystem::path& path);

  void add(std::string_view entry);
  void merge(const AbbreviationList& other);
  // `word` is the whitespace-delimited word ending in the period.
  bool contains(std::string_view word) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::set<std::string, std::less<>> entries_;
};

// Splits on . ! ? followed by whitespace and an uppercase letter or digit,
// except after abbreviations and initials ("M.K.", "U.S.").
SentenceList split_sentences(std::string_view text,
                             const AbbreviationList& abbreviations = AbbreviationList::builtin());

using Ngram = std::vector<std::string>;
using NgramCounts = std::map<Ngram, std::size_t>;

// All n-grams in order (a multiset as a sequence). Throws ValidationError
// when n < 1.
std::vector<Ngram> ngrams(const TokenSeq& seq, std::size_t n);
NgramCounts count_ngrams(const TokenSeq& seq, std::size_t n);

std::size_t lcs_len(const TokenSeq& a, const TokenSeq& b);

// Indices into `a` of one longest common subsequence (ascending).
std::vector<std::size_t> lcs_positions(const TokenSeq& a, const TokenSeq& b);

// Collapses every whitespace run into one space and trims both ends.
std::string collapse_whitespace(std::string_view text);

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}
inline bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
inline bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
inline bool is_digit(char c) { return c >= '0' && c <= '9'; }
inline bool is_alpha(char c) { return is_upper(c) || is_lower(c); }
inline bool is_punct(char c) {
  return (c >= '!' && c <= '/') || (c >= ':' && c <= '@') || (c >= '[' && c <= '`') ||
         (c >= '{' && c <= '~');
}
inline char to_lower(char c) { return is_upper(c) ? static_cast<char>(c - 'A' + 'a') : c; }
std::string to_lower(std::string_view text);

}  // namespace legalsum::textproc

#endif  // LEGALSUM_TEXTPROC_HPP_
