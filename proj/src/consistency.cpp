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

#include "legalsum/consistency.hpp"

#include <algorithm>
#include <cstdio>
#include <regex>
#include <unordered_set>

#include "legalsum/error.hpp"

namespace legalsum::consistency {
namespace {

using textproc::is_alpha;
using textproc::is_digit;
using textproc::is_lower;
using textproc::is_punct;
using textproc::is_space;
using textproc::is_upper;

bool is_alnum(char c) { return is_alpha(c) || is_digit(c); }

const std::unordered_set<std::string>& stopwords() {
  static const std::unordered_set<std::string> kWords = {
      "a",        "an",      "the",     "this",    "that",   "these",  "those",  "in",
      "on",       "at",      "by",      "for",     "from",   "of",     "to",     "with",
      "and",      "or",      "but",     "if",      "as",     "it",     "its",    "he",
      "she",      "they",    "we",      "i",       "you",    "his",    "her",    "their",
      "our",      "there",   "here",    "then",    "thus",   "hence",  "however", "therefore",
      "further",  "furthermore", "moreover", "accordingly", "also", "after", "before", "when",
      "while",    "where",   "which",   "who",     "what",   "since",  "upon",   "under",
      "although", "though",  "both",    "all",     "any",    "no",     "not",    "such",
      "so",       "is",      "was",     "are",     "were",   "be",     "has",    "had",
      "have",     "in the",  "one",     "another", "each",   "every",  "some",   "only",
      "finally",  "firstly", "secondly", "lastly", "similarly", "consequently", "again"};
  return kWords;
}

const std::unordered_set<std::string>& connectors() {
  static const std::unordered_set<std::string> kWords = {"of", "for", "the", "and", "de", "da",
                                                          "van", "von", "v.", "vs.", "vs", "&"};
  return kWords;
}

bool is_initials(std::string_view word) {
  if (word.size() < 2 || word.size() % 2 != 0) return false;
  for (std::size_t i = 0; i < word.size(); i += 2) {
    if (!is_alpha(word[i]) || word[i + 1] != '.') return false;
  }
  return true;
}

struct WordInfo {
  CharSpan core;  // without surrounding punctuation (initials keep their dots)
  bool capitalized = false;
  bool breaks_after = false;
  bool ends_sentence = false;
  std::string lower;  // lowercased core
  std::string lower_raw;
};

std::vector<WordInfo> analyze_words(std::string_view text, const textproc::AbbreviationList& abbreviations) {
  std::vector<WordInfo> out;
  for (const auto& w : textproc::raw_words(text)) {
    const std::string_view raw = text.substr(w.begin, w.end - w.begin);
    std::size_t b = 0;
    std::size_t e = raw.size();
    while (b < e && is_punct(raw[b])) ++b;
    while (e > b && is_punct(raw[e - 1])) --e;
    WordInfo info;
    const std::string_view trimmed_lead = raw.substr(b);
    const bool initials = is_initials(trimmed_lead);
    if (initials) e = raw.size();
    info.core = {w.begin + b, w.begin + e};
    info.lower = textproc::to_lower(raw.substr(b, e - b));
    info.lower_raw = textproc::to_lower(raw);
    info.capitalized = b < e && is_upper(raw[b]);
    const bool trailing_punct = e < raw.size();
    const bool abbreviation = abbreviations.contains(raw);
    info.breaks_after = trailing_punct && !initials && !abbreviation;
    if (!raw.empty()) {
      std::size_t k = raw.size();
      while (k > 0 && (raw[k - 1] == '"' || raw[k - 1] == '\'' || raw[k - 1] == ')')) --k;
      const char last = k > 0 ? raw[k - 1] : '\0';
      info.ends_sentence = (last == '!' || last == '?') || (last == '.' && !initials && !abbreviation);
    }
    out.push_back(std::move(info));
  }
  return out;
}

std::vector<std::size_t> boundary_find_all(std::string_view haystack, std::string_view needle) {
  std::vector<std::size_t> hits;
  if (needle.empty()) return hits;
  std::size_t pos = haystack.find(needle);
  while (pos != std::string_view::npos) {
    const std::size_t end = pos + needle.size();
    const bool left_ok = pos == 0 || !is_alnum(haystack[pos - 1]) || !is_alnum(needle.front());
    const bool right_ok = end >= haystack.size() || !is_alnum(haystack[end]) || !is_alnum(needle.back());
    if (left_ok && right_ok) hits.push_back(pos);
    pos = haystack.find(needle, pos + 1);
  }
  return hits;
}

bool boundary_find(std::string_view haystack, std::string_view needle) {
  return !boundary_find_all(haystack, needle).empty();
}

std::string excerpt(std::string_view text, CharSpan span) {
  return std::string(text.substr(span.begin, span.size()));
}

}  // namespace

// ---------------------------------------------------------------------------
// Numbers and dates

std::vector<NumberMention> extract_number_mentions(std::string_view text) {
  std::vector<NumberMention> out;
  const std::size_t n = text.size();
  std::size_t i = 0;
  while (i < n) {
    if (!is_digit(text[i])) {
      ++i;
      continue;
    }
    const std::size_t begin = i;
    std::string value;
    while (i < n && is_digit(text[i])) value.push_back(text[i++]);
    // Thousands / lakh groups: ",dd" or ",ddd" not followed by another digit.
    while (i < n && text[i] == ',') {
      std::size_t j = i + 1;
      while (j < n && is_digit(text[j])) ++j;
      const std::size_t len = j - (i + 1);
      if (len < 2 || len > 3) break;
      value.append(text.substr(i + 1, len));
      i = j;
    }
    if (i + 1 < n && text[i] == '.' && is_digit(text[i + 1])) {
      value.push_back('.');
      ++i;
      while (i < n && is_digit(text[i])) value.push_back(text[i++]);
    }
    out.push_back({std::move(value), {begin, i}});
  }
  return out;
}

NumberSet extract_numbers(std::string_view text) {
  NumberSet out;
  for (auto& m : extract_number_mentions(text)) out.insert(std::move(m.value));
  return out;
}

std::size_t count_dates(std::string_view text) {
  static const std::string kMonth =
      "(?:jan(?:uary)?|feb(?:ruary)?|mar(?:ch)?|apr(?:il)?|may|june?|july?|aug(?:ust)?|"
      "sep(?:t(?:ember)?)?|oct(?:ober)?|nov(?:ember)?|dec(?:ember)?)";
  static const std::regex kDate(
      "\\b(?:" + kMonth + "\\.?\\s+\\d{1,2}(?:st|nd|rd|th)?,?\\s+\\d{4}"
      "|\\d{1,2}(?:st|nd|rd|th)?\\s+(?:day\\s+of\\s+|of\\s+)?" + kMonth + "\\.?,?\\s+\\d{4}"
      "|\\d{1,2}[/.-]\\d{1,2}[/.-]\\d{2,4}"
      "|(?:18|19|20)\\d{2})\\b",
      std::regex::icase | std::regex::optimize);
  const std::string s(text);
  return static_cast<std::size_t>(
      std::distance(std::sregex_iterator(s.begin(), s.end(), kDate), std::sregex_iterator()));
}

// ---------------------------------------------------------------------------
// Entities

std::string normalize_entity(std::string_view text) {
  return textproc::collapse_whitespace(textproc::to_lower(text));
}

HeuristicEntityExtractor::HeuristicEntityExtractor(std::vector<std::string> gazetteer,
                                                   textproc::AbbreviationList abbreviations)
    : gazetteer_(std::move(gazetteer)), abbreviations_(std::move(abbreviations)) {}

std::vector<EntityMention> HeuristicEntityExtractor::extract(std::string_view text) const {
  const std::vector<WordInfo> words = analyze_words(text, abbreviations_);
  std::vector<EntityMention> out;

  auto emit = [&](std::size_t first, std::size_t last, bool sentence_initial) {
    // [first, last] inclusive word range.
    while (first <= last && sentence_initial && stopwords().count(words[first].lower) > 0) {
      ++first;
      sentence_initial = false;
    }
    while (first <= last && connectors().count(words[last].lower_raw) > 0) {
      if (last == 0) return;
      --last;
    }
    if (first > last) return;
    EntityMention m;
    m.span = {words[first].core.begin, words[last].core.end};
    m.text = excerpt(text, m.span);
    m.normalized = normalize_entity(m.text);
    m.label = "ENTITY";
    if (!m.normalized.empty()) out.push_back(std::move(m));
  };

  std::size_t i = 0;
  while (i < words.size()) {
    if (!words[i].capitalized) {
      ++i;
      continue;
    }
    const bool sentence_initial = i == 0 || words[i - 1].ends_sentence;
    const std::size_t first = i;
    std::size_t last = i;
    while (!words[last].breaks_after && last + 1 < words.size()) {
      const std::size_t next = last + 1;
      if (words[next].capitalized) {
        last = next;
        continue;
      }
      // Lowercase connector(s) bridging to another capitalized word.
      std::size_t k = next;
      while (k < words.size() && !words[k].capitalized && connectors().count(words[k].lower_raw) > 0 &&
             !words[k].breaks_after) {
        ++k;
      }
      if (k > next && k < words.size() && words[k].capitalized) {
        last = k;
        continue;
      }
      break;
    }
    emit(first, last, sentence_initial);
    i = last + 1;
  }

  if (!gazetteer_.empty()) {
    const std::string lowered = textproc::to_lower(text);
    for (const auto& entry : gazetteer_) {
      const std::string needle = textproc::to_lower(entry);
      for (std::size_t pos : boundary_find_all(lowered, needle)) {
        const CharSpan span{pos, pos + needle.size()};
        const bool duplicate = std::any_of(out.begin(), out.end(), [&](const EntityMention& m) {
          return m.span == span;
        });
        if (duplicate) continue;
        EntityMention m;
        m.span = span;
        m.text = excerpt(text, span);
        m.normalized = normalize_entity(m.text);
        m.label = "GAZETTEER";
        out.push_back(std::move(m));
      }
    }
    std::sort(out.begin(), out.end(), [](const EntityMention& a, const EntityMention& b) {
      return a.span.begin != b.span.begin ? a.span.begin < b.span.begin : a.span.end < b.span.end;
    });
  }
  return out;
}

EntitySet to_entity_set(const std::vector<EntityMention>& mentions) {
  EntitySet out;
  for (const auto& m : mentions) {
    if (!m.normalized.empty()) out.insert(m.normalized);
  }
  return out;
}

EntitySet extract_entities(std::string_view text, const EntityExtractor& extractor) {
  return to_entity_set(extractor.extract(text));
}

EntitySet extract_entities(std::string_view text) {
  static const HeuristicEntityExtractor kDefault;
  return extract_entities(text, kDefault);
}

std::vector<EntityMention> FallbackEntityExtractor::extract(std::string_view text) const {
  try {
    return primary_.extract(text);
  } catch (const ExternalServiceError&) {
    return fallback_.extract(text);
  }
}

// ---------------------------------------------------------------------------
// NLI aggregation

NliMatrix::NliMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
  if (fill < 0.0 || fill > 1.0) throw ValidationError("NLI score outside [0, 1]");
}

NliMatrix NliMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  NliMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw ValidationError("NLI matrix rows have different lengths");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

void NliMatrix::set(std::size_t r, std::size_t c, double value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw ValidationError("NLI score " + std::to_string(value) + " outside [0, 1]");
  }
  data_[r * cols_ + c] = value;
}

NliMatrix LexicalOverlapNliScorer::score(const std::vector<std::string>& premises,
                                         const std::vector<std::string>& hypotheses) const {
  std::vector<std::set<std::string>> premise_sets;
  premise_sets.reserve(premises.size());
  for (const auto& p : premises) {
    const auto seq = textproc::tokenize(p);
    premise_sets.emplace_back(seq.begin(), seq.end());
  }
  NliMatrix m(premises.size(), hypotheses.size());
  for (std::size_t c = 0; c < hypotheses.size(); ++c) {
    const auto seq = textproc::tokenize(hypotheses[c]);
    const std::set<std::string> hyp(seq.begin(), seq.end());
    for (std::size_t r = 0; r < premises.size(); ++r) {
      if (hyp.empty()) {
        m.set(r, c, 1.0);
        continue;
      }
      std::size_t shared = 0;
      for (const auto& t : hyp) shared += premise_sets[r].count(t);
      m.set(r, c, static_cast<double>(shared) / static_cast<double>(hyp.size()));
    }
  }
  return m;
}

std::vector<double> sentence_support(const NliMatrix& matrix) {
  std::vector<double> support(matrix.cols(), 0.0);
  for (std::size_t c = 0; c < matrix.cols(); ++c) {
    double best = 0.0;
    for (std::size_t r = 0; r < matrix.rows(); ++r) best = std::max(best, matrix.at(r, c));
    support[c] = best;
  }
  return support;
}

double summac_score(const NliMatrix& matrix) {
  if (matrix.empty()) throw ValidationError("summac_score: empty NLI matrix");
  const std::vector<double> support = sentence_support(matrix);
  double sum = 0.0;
  for (double s : support) sum += s;
  return sum / static_cast<double>(support.size());
}

double summac_for(std::string_view summary, std::string_view document, const NliScorer& scorer,
                  const textproc::AbbreviationList& abbreviations) {
  const auto hyps = textproc::split_sentences(summary, abbreviations);
  const auto prems = textproc::split_sentences(document, abbreviations);
  if (hyps.empty() || prems.empty()) return 0.0;
  return summac_score(scorer.score(prems.sentences, hyps.sentences));
}

// ---------------------------------------------------------------------------
// Precision metrics

double num_prec(std::string_view summary, std::string_view document) {
  const NumberSet in_summary = extract_numbers(summary);
  if (in_summary.empty()) return 1.0;
  const NumberSet in_document = extract_numbers(document);
  std::size_t supported = 0;
  for (const auto& v : in_summary) supported += in_document.count(v);
  return static_cast<double>(supported) / static_cast<double>(in_summary.size());
}

bool entity_supported(std::string_view normalized_entity, std::string_view normalized_document,
                      const EntitySet& document_entities) {
  if (document_entities.count(std::string(normalized_entity)) > 0) return true;
  return boundary_find(normalized_document, normalized_entity);
}

double ne_prec(std::string_view summary, std::string_view document, const EntityExtractor& extractor) {
  const EntitySet in_summary = extract_entities(summary, extractor);
  if (in_summary.empty()) return 1.0;
  const EntitySet in_document = extract_entities(document, extractor);
  const std::string normalized_document = normalize_entity(document);
  std::size_t supported = 0;
  for (const auto& e : in_summary) supported += entity_supported(e, normalized_document, in_document) ? 1 : 0;
  return static_cast<double>(supported) / static_cast<double>(in_summary.size());
}

double ne_prec(std::string_view summary, std::string_view document) {
  static const HeuristicEntityExtractor kDefault;
  return ne_prec(summary, document, kDefault);
}

// ---------------------------------------------------------------------------
// Audit

std::string_view flag_kind_name(FlagKind kind) {
  switch (kind) {
    case FlagKind::kUnsupportedNumber: return "unsupported_number";
    case FlagKind::kUnsupportedEntity: return "unsupported_entity";
    case FlagKind::kLowNliSentence: return "low_nli_sentence";
    case FlagKind::kMergeArtifact: return "merge_artifact";
  }
  return "unknown";
}

FlagKind parse_flag_kind(std::string_view name) {
  for (FlagKind k : {FlagKind::kUnsupportedNumber, FlagKind::kUnsupportedEntity,
                     FlagKind::kLowNliSentence, FlagKind::kMergeArtifact}) {
    if (flag_kind_name(k) == name) return k;
  }
  throw ValidationError("unknown flag kind '" + std::string(name) + "'");
}

const MergeArtifactOptions& MergeArtifactOptions::defaults() {
  static const MergeArtifactOptions kDefaults = [] {
    MergeArtifactOptions o;
    o.prefixes = {"Mc", "Mac", "De", "Di", "Da", "Du", "La", "Le", "Van", "Von", "Fitz", "O'", "D'"};
    o.exceptions = {"iPhone", "iPad", "eBay", "PhD", "LLd", "YouTube", "LinkedIn", "PowerPoint",
                    "JavaScript", "WhatsApp", "PayPal", "FedEx", "GlaxoSmithKline", "PepsiCo",
                    "HarperCollins", "McGraw-Hill", "BlackBerry", "MasterCard", "DuPont",
                    "MySQL", "GitHub", "SmithKline", "AstraZeneca", "ExxonMobil"};
    return o;
  }();
  return kDefaults;
}

std::vector<AuditFlag> detect_merge_artifacts(std::string_view summary, const MergeArtifactOptions& options) {
  std::vector<AuditFlag> flags;
  for (const auto& w : textproc::raw_words(summary)) {
    std::size_t b = w.begin;
    std::size_t e = w.end;
    while (b < e && is_punct(summary[b])) ++b;
    while (e > b && is_punct(summary[e - 1])) --e;
    if (b >= e) continue;
    const std::string_view token = summary.substr(b, e - b);
    if (options.exceptions.count(token) > 0) continue;
    std::size_t transition = std::string_view::npos;
    for (std::size_t i = 0; i + 1 < token.size(); ++i) {
      if (!is_lower(token[i]) || !is_upper(token[i + 1])) continue;
      const std::string_view head = token.substr(0, i + 1);
      const bool known_prefix = std::any_of(options.prefixes.begin(), options.prefixes.end(),
                                            [&](const std::string& p) { return head == p; });
      if (known_prefix) continue;
      transition = i;
      break;
    }
    if (transition == std::string_view::npos) continue;
    AuditFlag flag;
    flag.kind = FlagKind::kMergeArtifact;
    flag.span = {b, e};
    flag.detail = "token '" + std::string(token) + "' fuses two words at '" +
                  std::string(token.substr(transition, 2)) + "'";
    flag.severity = 1.0;
    flags.push_back(std::move(flag));
  }
  return flags;
}

std::vector<AuditFlag> audit_summary(std::string_view summary, std::string_view document,
                                     const AuditOptions& options) {
  if (!(options.nli_threshold >= 0.0 && options.nli_threshold <= 1.0)) {
    throw ValidationError("nli_threshold must lie in [0, 1]");
  }
  static const HeuristicEntityExtractor kHeuristic;
  static const LexicalOverlapNliScorer kLexical;
  const EntityExtractor& entities = options.entities ? *options.entities : kHeuristic;
  const NliScorer& nli = options.nli ? *options.nli : kLexical;

  std::vector<AuditFlag> flags;

  const NumberSet document_numbers = extract_numbers(document);
  for (const auto& m : extract_number_mentions(summary)) {
    if (document_numbers.count(m.value) > 0) continue;
    flags.push_back({FlagKind::kUnsupportedNumber, m.span,
                     "number " + m.value + " does not occur in the source", 1.0});
  }

  const EntitySet document_entities = extract_entities(document, entities);
  const std::string normalized_document = normalize_entity(document);
  for (const auto& m : entities.extract(summary)) {
    if (m.span.end > summary.size() || m.span.begin >= m.span.end) continue;
    if (entity_supported(m.normalized, normalized_document, document_entities)) continue;
    flags.push_back({FlagKind::kUnsupportedEntity, m.span,
                     "entity '" + m.text + "' does not occur in the source", 1.0});
  }

  const auto hyps = textproc::split_sentences(summary, options.abbreviations);
  const auto prems = textproc::split_sentences(document, options.abbreviations);
  if (!hyps.empty() && !prems.empty()) {
    const std::vector<double> support = sentence_support(nli.score(prems.sentences, hyps.sentences));
    for (std::size_t j = 0; j < support.size(); ++j) {
      if (support[j] >= options.nli_threshold) continue;
      char buf[96];
      std::snprintf(buf, sizeof(buf), "best entailment %.4f below threshold %.4f", support[j],
                    options.nli_threshold);
      flags.push_back({FlagKind::kLowNliSentence, hyps.offsets[j], buf, 1.0 - support[j]});
    }
  }

  std::unordered_set<std::string> document_tokens;
  for (const auto& w : textproc::raw_words(document)) {
    std::size_t b = w.begin;
    std::size_t e = w.end;
    while (b < e && is_punct(document[b])) ++b;
    while (e > b && is_punct(document[e - 1])) --e;
    if (b < e) document_tokens.emplace(document.substr(b, e - b));
  }
  for (auto& f : detect_merge_artifacts(summary, options.merge)) {
    if (document_tokens.count(excerpt(summary, f.span)) > 0) continue;
    flags.push_back(std::move(f));
  }

  std::stable_sort(flags.begin(), flags.end(), [](const AuditFlag& a, const AuditFlag& b) {
    if (a.span.begin != b.span.begin) return a.span.begin < b.span.begin;
    if (a.span.end != b.span.end) return a.span.end < b.span.end;
    return a.kind < b.kind;
  });
  return flags;
}

}  // namespace legalsum::consistency
