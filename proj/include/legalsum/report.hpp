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

#ifndef LEGALSUM_REPORT_HPP_
#define LEGALSUM_REPORT_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "legalsum/consistency.hpp"
#include "legalsum/evalrunner.hpp"

namespace legalsum::report {

using evalrunner::Family;
using evalrunner::Metric;
using evalrunner::RunResult;

enum class TableFormat { kCsv, kJson, kMarkdown };
enum class AuditFormat { kJson, kHtml };
TableFormat parse_table_format(std::string_view name);
AuditFormat parse_audit_format(std::string_view name);

struct TableColumn {
  std::string label;
  Metric metric;
  int decimals;
};

// Match metrics: R2-P, R2-R, R2-F1, RL-P, RL-R, RL-F1, ME, BLEU(%).
const std::vector<TableColumn>& match_columns();
// Consistency metrics: SummaC, NEPrec, NumPrec.
const std::vector<TableColumn>& consistency_columns();

struct TableRow {
  std::string model;
  Family family = Family::kLlm;
  std::vector<double> values;
  std::vector<bool> best;         // best in family for the column
  std::vector<bool> significant;  // asterisk
};

// Rows grouped llm, abstractive, extractive; input order within a family.
struct MetricTable {
  std::vector<TableColumn> columns;
  std::vector<TableRow> rows;
};

MetricTable build_table(const std::vector<RunResult>& results, const std::vector<TableColumn>& columns,
                        bool include_extractive = true);

enum class TableSelection { kBoth, kMatch, kConsistency };

struct TableOptions {
  TableSelection selection = TableSelection::kBoth;
  // Consistency rows for extractive models are 1.0 by construction and
  // left out unless asked for.
  bool consistency_for_extractive = false;
  // Significance level quoted in the markdown footnote.
  double alpha = 0.05;
};

// Deterministic: same results give byte-identical output. Values carry 4
// decimals (BLEU 2); significant cells get a trailing '*'.
std::string render_table(const std::vector<RunResult>& results, TableFormat format, const TableOptions& options = {});

// json: the flags with spans and kinds. html: a standalone page with the
// flagged spans highlighted (overlapping flags share one highlight) and a
// flag index. Throws ValidationError for a span outside the summary.
std::string render_audit(std::string_view summary, const std::vector<consistency::AuditFlag>& flags,
                         AuditFormat format, std::string_view title = "Audit report");

std::string html_escape(std::string_view text);

}  // namespace legalsum::report

#endif  // LEGALSUM_REPORT_HPP_
