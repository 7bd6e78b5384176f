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

// Seeded generator of judgment-like documents: headings, party names,
// courts, dates, amounts and statute references mixed with filler prose.

#ifndef LEGALSUM_TESTS_SYNTH_HPP_
#define LEGALSUM_TESTS_SYNTH_HPP_

#include <cctype>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

namespace testsupport {

class SynthDocs {
 public:
  explicit SynthDocs(unsigned long long seed) : rng_(seed) {}

  // A document of at least min_words words (shared tokenizer count).
  std::string document(std::size_t min_words) {
    std::string text = pick(kOpenings) + "\n\n";
    std::size_t words = count(text);
    std::size_t para = 0;
    while (words < min_words) {
      if (para > 0 && uniform(0, 4) == 0) text += pick(kHeadings) + "\n\n";
      const int sentences = uniform(2, 6);
      std::string p;
      for (int s = 0; s < sentences; ++s) p += (s ? " " : "") + sentence();
      text += p + "\n\n";
      words = count(text);
      ++para;
    }
    return text;
  }

  std::string sentence() {
    switch (uniform(0, 9)) {
      case 0: return "The appellant " + person() + " was appointed on " + date() + ".";
      case 1: return person() + " paid Rs. " + amount() + " to the " + pick(kOrgs) + " under Section " + section() +
                     " of the " + pick(kActs) + ".";
      case 2: return "The " + pick(kCourts) + " held that the " + word() + " was " + word() + " on " + date() + ".";
      case 3: return "In " + person() + " v. State of " + pick(kStates) + ", the " + pick(kCourts) +
                     " considered clause " + std::to_string(uniform(1, 20)) + " of the agreement.";
      case 4: return "The respondent -- a " + word() + " of " + std::to_string(uniform(18, 80)) +
                     " years -- relied on para. " + std::to_string(uniform(1, 60)) + " of the judgment.";
      case 5: return "It was argued (in the alternative) that \"" + filler(uniform(3, 8)) + "\".";
      default: {
        std::string s = filler(uniform(6, 22));
        s[0] = static_cast<char>(s[0] - 'a' + 'A');
        return s + (uniform(0, 5) == 0 ? "; " + filler(uniform(2, 6)) : "") + ".";
      }
    }
  }

  std::string filler(int n) {
    std::string s;
    for (int i = 0; i < n; ++i) s += (i ? " " : "") + word() + (uniform(0, 11) == 0 ? "," : "");
    if (!s.empty() && s.back() == ',') s.pop_back();
    return s;
  }

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::mt19937_64& rng() { return rng_; }

 private:
  static std::size_t count(const std::string& text) {
    std::size_t n = 0;
    bool in_word = false, has_alnum = false;
    for (char c : text) {
      const bool space = c == ' ' || c == '\n' || c == '\t' || c == '\r';
      if (!space) {
        in_word = true;
        has_alnum = has_alnum || std::isalnum(static_cast<unsigned char>(c));
      } else if (in_word) {
        n += has_alnum ? 1 : 0;
        in_word = has_alnum = false;
      }
    }
    return n + (in_word && has_alnum ? 1 : 0);
  }

  std::string pick(const std::vector<std::string>& v) { return v[uniform(0, static_cast<int>(v.size()) - 1)]; }
  std::string word() { return pick(kWords); }
  std::string person() { return pick(kFirst) + " " + pick(kLast); }
  std::string date() {
    return std::to_string(uniform(1, 28)) + " " + pick(kMonths) + " " + std::to_string(uniform(1950, 2020));
  }
  std::string amount() {
    const int v = uniform(1, 999);
    return uniform(0, 1) ? std::to_string(v) + ",000" : std::to_string(v);
  }
  std::string section() { return std::to_string(uniform(1, 400)) + (uniform(0, 3) == 0 ? "A" : ""); }

  std::mt19937_64 rng_;

  inline static const std::vector<std::string> kOpenings = {"JUDGMENT", "ORDER", "IN THE SUPREME COURT OF INDIA"};
  inline static const std::vector<std::string> kHeadings = {"FACTS", "ISSUES", "ANALYSIS", "CONCLUSION",
                                                            "1. Background", "2. Submissions"};
  inline static const std::vector<std::string> kFirst = {"Ram", "Sita", "Mohan", "Lakshmi", "Arjun", "Meera",
                                                         "Vikram", "Kavita", "Suresh", "Anita"};
  inline static const std::vector<std::string> kLast = {"Sharma", "Iyer", "Singh", "Reddy", "Nair", "Gupta",
                                                        "Das", "Menon", "Rao", "Patel"};
  inline static const std::vector<std::string> kCourts = {"High Court", "Supreme Court", "Tribunal",
                                                          "District Court", "Appellate Authority"};
  inline static const std::vector<std::string> kStates = {"Kerala", "Punjab", "Gujarat", "Bihar", "Assam"};
  inline static const std::vector<std::string> kOrgs = {"Delhi Development Authority", "Life Insurance Corporation",
                                                        "State Bank of India", "Municipal Corporation"};
  inline static const std::vector<std::string> kActs = {"Limitation Act", "Income Tax Act", "Land Acquisition Act",
                                                        "Indian Penal Code", "Companies Act"};
  inline static const std::vector<std::string> kMonths = {"January", "March", "June", "August", "October",
                                                          "December"};
  inline static const std::vector<std::string> kWords = {
      "appeal",   "court",    "order",     "petition",  "evidence", "witness",  "contract", "property",
      "tenant",   "decree",   "liability", "statute",   "notice",   "hearing",  "finding",  "claim",
      "damages",  "interest", "payment",   "agreement", "dispute",  "question", "law",      "fact",
      "record",   "counsel",  "argument",  "relief",    "injury",   "service",  "employer", "duty",
      "valid",    "void",     "binding",   "material",  "relevant", "settled",  "proper",   "lawful",
      "the",      "of",       "and",       "that",      "was",      "in",       "to",       "by"};
};

}  // namespace testsupport

#endif  // LEGALSUM_TESTS_SYNTH_HPP_
