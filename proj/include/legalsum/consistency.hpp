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

// Faithfulness of a summary to its source: number and named-entity
// precision, NLI-based SummaC aggregation, and span-level audit flags.

#ifndef LEGALSUM_CONSISTENCY_HPP_
#define LEGALSUM_CONSISTENCY_HPP_

#include <chrono>
#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "legalsum/textproc.hpp"

namespace legalsum::consistency {

using textproc::CharSpan;

// Normalized number strings: digit runs with commas removed, optional
// decimal part. Compared as strings, so "25" != "25.0".
using NumberSet = std::set<std::string>;
// Case-folded entity names with internal whitespace collapsed.
using EntitySet = std::set<std::string>;

struct NumberMention {
  std::string value;
  CharSpan span;
};

std::vector<NumberMention> extract_number_mentions(std::string_view text);
NumberSet extract_numbers(std::string_view text);

// Dates such as "December 20, 1963", "20th March 1990", "20/12/1963" and bare
// years 1800-2099 outside those forms.
std::size_t count_dates(std::string_view text);

struct EntityMention {
  std::string text;
  std::string normalized;
  CharSpan span;
  std::string label;
};

std::string normalize_entity(std::string_view text);

class EntityExtractor {
 public:
  virtual ~EntityExtractor() = default;
  virtual std::vector<EntityMention> extract(std::string_view text) const = 0;
};

// Maximal runs of capitalized words, joined across lowercase connectors
// ("of", "for", "the", "and", ...) when another capitalized word follows.
// A run ends after a word carrying closing punctuation, except initials and
// known abbreviations. Leading stopwords are dropped at sentence starts.
// Gazetteer entries are matched case-insensitively at word boundaries.
class HeuristicEntityExtractor : public EntityExtractor {
 public:
  HeuristicEntityExtractor() = default;
  explicit HeuristicEntityExtractor(std::vector<std::string> gazetteer,
                                    textproc::AbbreviationList abbreviations =
                                        textproc::AbbreviationList::builtin());

  std::vector<EntityMention> extract(std::string_view text) const override;

 private:
  std::vector<std::string> gazetteer_;
  textproc::AbbreviationList abbreviations_ = textproc::AbbreviationList::builtin();
};

EntitySet to_entity_set(const std::vector<EntityMention>& mentions);
EntitySet extract_entities(std::string_view text, const EntityExtractor& extractor);
EntitySet extract_entities(std::string_view text);

// Entailment probabilities: rows are document sentences (premises), columns
// are summary sentences (hypotheses). Entries lie in [0, 1].
class NliMatrix {
 public:
  NliMatrix() = default;
  NliMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  // Throws ValidationError for ragged rows or entries outside [0, 1].
  static NliMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, double value);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

class NliScorer {
 public:
  virtual ~NliScorer() = default;
  virtual NliMatrix score(const std::vector<std::string>& premises,
                          const std::vector<std::string>& hypotheses) const = 0;
};

// Offline proxy: |shared distinct tokens| / |distinct hypothesis tokens|,
// 1.0 for a hypothesis without tokens.
class LexicalOverlapNliScorer : public NliScorer {
 public:
  NliMatrix score(const std::vector<std::string>& premises,
                  const std::vector<std::string>& hypotheses) const override;
};

// Max over premises per hypothesis.
std::vector<double> sentence_support(const NliMatrix& matrix);

// Mean over hypotheses of the best premise score. Throws ValidationError on
// an empty matrix.
double summac_score(const NliMatrix& matrix);

// Vacuous precision is 1.0: a summary without numbers/entities scores 1.
double num_prec(std::string_view summary, std::string_view document);
double ne_prec(std::string_view summary, std::string_view document, const EntityExtractor& extractor);
double ne_prec(std::string_view summary, std::string_view document);

// True when the normalized entity occurs in the normalized document at word
// boundaries or equals one of the document's entities.
bool entity_supported(std::string_view normalized_entity, std::string_view normalized_document,
                      const EntitySet& document_entities);

// Sentence-split both texts, score with the NLI scorer, aggregate.
// An empty summary scores 0.
double summac_for(std::string_view summary, std::string_view document, const NliScorer& scorer,
                  const textproc::AbbreviationList& abbreviations = textproc::AbbreviationList::builtin());

enum class FlagKind { kUnsupportedNumber, kUnsupportedEntity, kLowNliSentence, kMergeArtifact };
std::string_view flag_kind_name(FlagKind kind);
FlagKind parse_flag_kind(std::string_view name);

struct AuditFlag {
  FlagKind kind = FlagKind::kMergeArtifact;
  CharSpan span;
  std::string detail;
  double severity = 1.0;
};

struct MergeArtifactOptions {
  // Tokens never flagged (exact, case-sensitive), e.g. "McDonald".
  std::set<std::string, std::less<>> exceptions;
  // A lower->upper transition directly after one of these prefixes is
  // ignored ("Mc", "Mac", "De", ...).
  std::vector<std::string> prefixes;

  static const MergeArtifactOptions& defaults();
};

// Flags tokens containing a lowercase letter immediately followed by an
// uppercase letter ("theThe", "OrderThere"). The span covers the token with
// surrounding punctuation stripped.
std::vector<AuditFlag> detect_merge_artifacts(std::string_view summary,
                                              const MergeArtifactOptions& options =
                                                  MergeArtifactOptions::defaults());

struct AuditOptions {
  const EntityExtractor* entities = nullptr;  // heuristic when null
  const NliScorer* nli = nullptr;             // lexical overlap when null
  double nli_threshold = 0.5;
  MergeArtifactOptions merge = MergeArtifactOptions::defaults();
  textproc::AbbreviationList abbreviations = textproc::AbbreviationList::builtin();
};

// Union of unsupported-number, unsupported-entity, low-NLI sentence and
// merge-artifact flags, ordered by span start. Merge artifacts whose token
// also appears in the source are not flagged.
std::vector<AuditFlag> audit_summary(std::string_view summary, std::string_view document,
                                     const AuditOptions& options = {});

// --- Remote scorer protocol ------------------------------------------------
//   POST <base>/nli {premises:[..], hypotheses:[..]} -> {scores: [[..]..]}
//   POST <base>/ner {text}                           -> {entities:[{text,start,end,label}]}

struct ScorerConfig {
  std::string base_url;
  std::chrono::milliseconds timeout{30000};
  // Upper bound on premises x hypotheses per /nli request.
  std::size_t max_pairs_per_request = 256;
  std::size_t max_in_flight = 4;
};

class RemoteScorer : public NliScorer, public EntityExtractor {
 public:
  explicit RemoteScorer(ScorerConfig config);

  NliMatrix score(const std::vector<std::string>& premises,
                  const std::vector<std::string>& hypotheses) const override;
  std::vector<EntityMention> extract(std::string_view text) const override;

  const ScorerConfig& config() const { return config_; }

 private:
  ScorerConfig config_;
};

// Uses the remote extractor and falls back to the heuristic one when the
// service fails, if fallback is enabled.
class FallbackEntityExtractor : public EntityExtractor {
 public:
  FallbackEntityExtractor(const EntityExtractor& primary, const EntityExtractor& fallback)
      : primary_(primary), fallback_(fallback) {}
  std::vector<EntityMention> extract(std::string_view text) const override;

 private:
  const EntityExtractor& primary_;
  const EntityExtractor& fallback_;
};

}  // namespace legalsum::consistency

#endif  // LEGALSUM_CONSISTENCY_HPP_
