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

#include "legalsum/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>

#include "legalsum/error.hpp"

namespace legalsum::report {
namespace {

using json = nlohmann::ordered_json;
using consistency::AuditFlag;
using consistency::FlagKind;

constexpr Family kFamilyOrder[] = {Family::kLlm, Family::kAbstractive, Family::kExtractive};

std::string format_value(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::string format_alpha(double alpha) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", alpha);
  return buf;
}

std::string cell(const TableRow& row, const TableColumn& col, std::size_t k) {
  std::string s = format_value(row.values[k], col.decimals);
  if (row.significant[k]) s.push_back('*');
  return s;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string md_field(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += "\\|";
    else out.push_back(c);
  }
  return out;
}

void render_csv(std::ostringstream& out, const MetricTable& table) {
  out << "model,family";
  for (const auto& c : table.columns) out << ',' << csv_field(c.label);
  out << ",best\n";
  for (const auto& row : table.rows) {
    out << csv_field(row.model) << ',' << evalrunner::family_name(row.family);
    std::string best;
    for (std::size_t k = 0; k < table.columns.size(); ++k) {
      out << ',' << cell(row, table.columns[k], k);
      if (row.best[k]) best += (best.empty() ? "" : ";") + table.columns[k].label;
    }
    out << ',' << csv_field(best) << '\n';
  }
}

void render_markdown(std::ostringstream& out, const MetricTable& table, std::string_view heading, double alpha) {
  out << "## " << heading << "\n\n";
  if (table.rows.empty()) {
    out << "_No models to show._\n";
    return;
  }
  out << "| Model | Family |";
  for (const auto& c : table.columns) out << ' ' << c.label << " |";
  out << "\n|---|---|";
  for (std::size_t k = 0; k < table.columns.size(); ++k) out << "---:|";
  out << '\n';
  for (const auto& row : table.rows) {
    out << "| " << md_field(row.model) << " | " << evalrunner::family_name(row.family) << " |";
    for (std::size_t k = 0; k < table.columns.size(); ++k) {
      const std::string v = cell(row, table.columns[k], k);
      out << ' ' << (row.best[k] ? "**" + v + "**" : v) << " |";
    }
    out << '\n';
  }
  out << "\nBold: best in family. *: significantly higher than the best extractive model "
         "(two-sided Student t-test, alpha "
      << format_alpha(alpha) << ").\n";
}

json table_json(const MetricTable& table) {
  json cols = json::array();
  for (const auto& c : table.columns) cols.push_back(c.label);
  json rows = json::array();
  for (const auto& row : table.rows) {
    json r;
    r["model"] = row.model;
    r["family"] = evalrunner::family_name(row.family);
    json values;
    json display;
    json best = json::array();
    json sig = json::array();
    for (std::size_t k = 0; k < table.columns.size(); ++k) {
      const auto& c = table.columns[k];
      values[c.label] = row.values[k];
      display[c.label] = cell(row, c, k);
      if (row.best[k]) best.push_back(c.label);
      if (row.significant[k]) sig.push_back(c.label);
    }
    r["values"] = std::move(values);
    r["display"] = std::move(display);
    r["best_in_family"] = std::move(best);
    r["significant"] = std::move(sig);
    rows.push_back(std::move(r));
  }
  return json{{"columns", cols}, {"rows", rows}};
}

const char* kind_color(FlagKind kind) {
  switch (kind) {
    case FlagKind::kUnsupportedNumber: return "#ffd6a5";
    case FlagKind::kUnsupportedEntity: return "#ffadad";
    case FlagKind::kLowNliSentence: return "#fdffb6";
    case FlagKind::kMergeArtifact: return "#a0c4ff";
  }
  return "#dddddd";
}

void validate_flags(std::string_view summary, const std::vector<AuditFlag>& flags) {
  for (const auto& f : flags) {
    if (f.span.begin >= f.span.end || f.span.end > summary.size()) {
      throw ValidationError("audit flag span [" + std::to_string(f.span.begin) + ", " +
                            std::to_string(f.span.end) + ") is outside the summary (length " +
                            std::to_string(summary.size()) + ")");
    }
  }
}

}  // namespace

TableFormat parse_table_format(std::string_view name) {
  if (name == "csv") return TableFormat::kCsv;
  if (name == "json") return TableFormat::kJson;
  if (name == "markdown" || name == "md") return TableFormat::kMarkdown;
  throw ValidationError("unknown table format '" + std::string(name) + "'");
}

AuditFormat parse_audit_format(std::string_view name) {
  if (name == "json") return AuditFormat::kJson;
  if (name == "html") return AuditFormat::kHtml;
  throw ValidationError("unknown audit format '" + std::string(name) + "'");
}

const std::vector<TableColumn>& match_columns() {
  static const std::vector<TableColumn> kColumns = {
      {"R2-P", Metric::kR2P, 4},   {"R2-R", Metric::kR2R, 4},   {"R2-F1", Metric::kR2F1, 4},
      {"RL-P", Metric::kRLP, 4},   {"RL-R", Metric::kRLR, 4},   {"RL-F1", Metric::kRLF1, 4},
      {"ME", Metric::kMeteor, 4},  {"BLEU(%)", Metric::kBleu, 2}};
  return kColumns;
}

const std::vector<TableColumn>& consistency_columns() {
  static const std::vector<TableColumn> kColumns = {
      {"SummaC", Metric::kSummaC, 4}, {"NEPrec", Metric::kNEPrec, 4}, {"NumPrec", Metric::kNumPrec, 4}};
  return kColumns;
}

MetricTable build_table(const std::vector<RunResult>& results, const std::vector<TableColumn>& columns,
                        bool include_extractive) {
  MetricTable table;
  table.columns = columns;
  for (Family family : kFamilyOrder) {
    if (family == Family::kExtractive && !include_extractive) continue;
    const std::size_t first_row = table.rows.size();
    for (const auto& r : results) {
      if (r.family != family) continue;
      TableRow row;
      row.model = r.model_name;
      row.family = family;
      for (const auto& c : columns) {
        row.values.push_back(r.aggregate(c.metric));
        row.significant.push_back(r.is_significant(c.metric));
        row.best.push_back(false);
      }
      table.rows.push_back(std::move(row));
    }
    // One marker per column per family; the first row wins ties.
    for (std::size_t k = 0; k < columns.size(); ++k) {
      std::size_t best = first_row;
      for (std::size_t i = first_row; i < table.rows.size(); ++i) {
        if (table.rows[i].values[k] > table.rows[best].values[k]) best = i;
      }
      if (best < table.rows.size()) table.rows[best].best[k] = true;
    }
  }
  return table;
}

std::string render_table(const std::vector<RunResult>& results, TableFormat format, const TableOptions& options) {
  const bool match = options.selection != TableSelection::kConsistency;
  const bool consist = options.selection != TableSelection::kMatch;
  const MetricTable match_table = build_table(results, match_columns(), true);
  const MetricTable consistency_table =
      build_table(results, consistency_columns(), options.consistency_for_extractive);

  std::ostringstream out;
  switch (format) {
    case TableFormat::kCsv:
      if (match) render_csv(out, match_table);
      if (match && consist) out << '\n';
      if (consist) render_csv(out, consistency_table);
      break;
    case TableFormat::kMarkdown:
      if (match) render_markdown(out, match_table, "Match metrics", options.alpha);
      if (match && consist) out << '\n';
      if (consist) render_markdown(out, consistency_table, "Consistency metrics", options.alpha);
      break;
    case TableFormat::kJson: {
      json doc;
      if (match) doc["match"] = table_json(match_table);
      if (consist) doc["consistency"] = table_json(consistency_table);
      out << doc.dump(2) << '\n';
      break;
    }
  }
  return out.str();
}

std::string html_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string render_audit(std::string_view summary, const std::vector<AuditFlag>& flags, AuditFormat format,
                         std::string_view title) {
  validate_flags(summary, flags);
  std::vector<std::size_t> order(flags.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return flags[a].span.begin != flags[b].span.begin ? flags[a].span.begin < flags[b].span.begin
                                                      : flags[a].span.end < flags[b].span.end;
  });

  if (format == AuditFormat::kJson) {
    json list = json::array();
    for (std::size_t i : order) {
      const AuditFlag& f = flags[i];
      list.push_back({{"kind", consistency::flag_kind_name(f.kind)},
                      {"start", f.span.begin},
                      {"end", f.span.end},
                      {"text", std::string(summary.substr(f.span.begin, f.span.size()))},
                      {"detail", f.detail},
                      {"severity", f.severity}});
    }
    json doc;
    doc["title"] = std::string(title);
    doc["summary"] = std::string(summary);
    doc["flags"] = std::move(list);
    return doc.dump(2) + "\n";
  }

  // Overlapping spans are merged into one highlight listing every kind.
  struct Highlight {
    std::size_t begin, end;
    std::vector<std::size_t> members;
  };
  std::vector<Highlight> highlights;
  for (std::size_t i : order) {
    const AuditFlag& f = flags[i];
    if (!highlights.empty() && f.span.begin < highlights.back().end) {
      highlights.back().end = std::max(highlights.back().end, f.span.end);
      highlights.back().members.push_back(i);
    } else {
      highlights.push_back({f.span.begin, f.span.end, {i}});
    }
  }

  std::ostringstream out;
  out << "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n<title>" << html_escape(title)
      << "</title>\n<style>\n"
      << "body{font-family:Georgia,serif;max-width:60em;margin:2em auto;line-height:1.5}\n"
      << ".summary{white-space:pre-wrap;border:1px solid #ccc;padding:1em}\n"
      << "mark{padding:0 .1em;border-radius:2px}\n"
      << ".legend span{padding:0 .4em;margin-right:.5em}\n"
      << "</style>\n</head>\n<body>\n<h1>" << html_escape(title) << "</h1>\n<p class=\"legend\">";
  for (FlagKind k : {FlagKind::kUnsupportedNumber, FlagKind::kUnsupportedEntity, FlagKind::kLowNliSentence,
                     FlagKind::kMergeArtifact}) {
    out << "<span style=\"background:" << kind_color(k) << "\">" << consistency::flag_kind_name(k) << "</span>";
  }
  out << "</p>\n<div class=\"summary\">";
  std::size_t pos = 0;
  for (std::size_t h = 0; h < highlights.size(); ++h) {
    const Highlight& hl = highlights[h];
    out << html_escape(summary.substr(pos, hl.begin - pos));
    std::vector<std::string> kinds;
    std::string tooltip;
    for (std::size_t i : hl.members) {
      const std::string name(consistency::flag_kind_name(flags[i].kind));
      if (std::find(kinds.begin(), kinds.end(), name) == kinds.end()) kinds.push_back(name);
      if (!tooltip.empty()) tooltip += "\n";
      tooltip += name + ": " + flags[i].detail;
    }
    std::string kind_list;
    for (const auto& k : kinds) kind_list += (kind_list.empty() ? "" : " ") + k;
    const char* color = kinds.size() == 1 ? kind_color(flags[hl.members.front()].kind) : "#d0a9f5";
    out << "<mark id=\"flag-" << h << "\" data-kinds=\"" << kind_list << "\" style=\"background:" << color
        << "\" title=\"" << html_escape(tooltip) << "\">" << html_escape(summary.substr(hl.begin, hl.end - hl.begin))
        << "</mark>";
    pos = hl.end;
  }
  out << html_escape(summary.substr(pos)) << "</div>\n";

  out << "<h2>Flags (" << flags.size() << ")</h2>\n";
  if (flags.empty()) {
    out << "<p>No flags.</p>\n";
  } else {
    out << "<ol class=\"flag-index\">\n";
    for (std::size_t h = 0; h < highlights.size(); ++h) {
      for (std::size_t i : highlights[h].members) {
        const AuditFlag& f = flags[i];
        out << "<li><a href=\"#flag-" << h << "\">" << consistency::flag_kind_name(f.kind) << "</a> ["
            << f.span.begin << ", " << f.span.end << ") &ldquo;"
            << html_escape(summary.substr(f.span.begin, f.span.size())) << "&rdquo; &mdash; "
            << html_escape(f.detail) << " (severity " << format_value(f.severity, 2) << ")</li>\n";
      }
    }
    out << "</ol>\n";
  }
  out << "</body>\n</html>\n";
  return out.str();
}

}  // namespace legalsum::report
