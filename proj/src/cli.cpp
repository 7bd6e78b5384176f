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

#include "legalsum/cli.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <optional>
#include <ostream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "legalsum/backends.hpp"
#include "legalsum/config.hpp"
#include "legalsum/consistency.hpp"
#include "legalsum/corpus.hpp"
#include "legalsum/error.hpp"
#include "legalsum/evalrunner.hpp"
#include "legalsum/report.hpp"
#include "legalsum/summary.hpp"

namespace legalsum::cli {
namespace {

namespace fs = std::filesystem;

struct Args {
  std::string config;
  std::string corpus;
  std::string split;
  std::vector<std::string> models;
  std::string out;
  std::optional<std::size_t> workers;
  std::optional<std::size_t> chunk_words;
  std::string chunk_mode;
  std::string budget;
  std::string scorer_url;
  std::optional<double> nli_threshold;
  std::string abbreviations;
  std::string audit_format = "both";
  bool force = false;
  bool quiet = false;
};

void add_common(CLI::App* cmd, Args& a) {
  cmd->add_option("--config", a.config, "Run configuration (JSON)");
  cmd->add_option("--corpus", a.corpus, "Corpus JSONL file or directory");
  cmd->add_option("--split", a.split, "Corpus split: train or test");
  cmd->add_option("--out", a.out, "Run directory");
  cmd->add_option("--workers", a.workers, "Parallel workers")->check(CLI::PositiveNumber);
  cmd->add_option("--abbreviations", a.abbreviations, "Extra abbreviation list, one per line");
  cmd->add_flag("--quiet", a.quiet, "No progress output");
}

void add_models(CLI::App* cmd, Args& a) {
  cmd->add_option("--model", a.models, "Model name (repeatable); defaults to all configured models");
}

void add_scorer(CLI::App* cmd, Args& a) {
  cmd->add_option("--scorer-url", a.scorer_url, "Base URL of the NLI/NER scorer service");
}

// Config file first, then command-line overrides.
config::RunConfig resolve_config(const Args& a) {
  config::RunConfig cfg;
  if (!a.config.empty()) cfg = config::load_config(a.config);
  if (!a.corpus.empty()) cfg.corpus = a.corpus;
  if (!a.split.empty()) cfg.split = corpus::parse_split(a.split);
  if (!a.out.empty()) cfg.output_dir = a.out;
  if (a.workers) cfg.workers = *a.workers;
  if (a.chunk_words) cfg.chunk_words = *a.chunk_words;
  if (!a.chunk_mode.empty()) cfg.chunk_mode = chunker::parse_chunk_mode(a.chunk_mode);
  if (!a.budget.empty()) cfg.fixed_ratio = config::parse_budget(a.budget);
  if (!a.scorer_url.empty()) cfg.scorer_url = a.scorer_url;
  if (a.nli_threshold) cfg.nli_threshold = *a.nli_threshold;
  if (!a.abbreviations.empty()) cfg.abbreviations_file = a.abbreviations;
  cfg.validate();
  return cfg;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

std::vector<corpus::CorpusPair> load_pairs(const config::RunConfig& cfg) {
  require(!cfg.corpus.empty(), "--corpus is required (or 'corpus' in the config)");
  return corpus::load_corpus(cfg.corpus, cfg.split);
}

fs::path run_dir(const config::RunConfig& cfg) {
  require(!cfg.output_dir.empty(), "--out is required (or 'output_dir' in the config)");
  return cfg.output_dir;
}

textproc::AbbreviationList abbreviations_for(const config::RunConfig& cfg) {
  textproc::AbbreviationList list = textproc::AbbreviationList::builtin();
  if (!cfg.abbreviations_file.empty()) list.merge(textproc::AbbreviationList::from_file(cfg.abbreviations_file));
  return list;
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line.front() != '#') lines.push_back(line);
  }
  return lines;
}

// File-name-safe rendering of document ids and model names.
std::string safe_name(std::string_view name) {
  std::string out;
  for (char c : name) {
    const bool ok = textproc::is_alpha(c) || textproc::is_digit(c) || c == '.' || c == '-' || c == '_';
    out.push_back(ok ? c : '_');
  }
  if (out.empty() || out == "." || out == "..") out = "_" + out;
  return out;
}

config::ModelSpec find_model(const config::RunConfig& cfg, const std::string& name) {
  for (const auto& m : cfg.models) {
    if (m.backend.name == name) return m;
  }
  if (auto b = config::builtin_model(name)) return *b;
  throw ValidationError("unknown model '" + name + "' (not in the config and not built in)");
}

// Models named on the command line, else the configured ones.
std::vector<config::ModelSpec> selected_models(const config::RunConfig& cfg, const Args& a) {
  std::vector<config::ModelSpec> out;
  if (!a.models.empty()) {
    for (const auto& name : a.models) out.push_back(find_model(cfg, name));
  } else {
    out = cfg.models;
  }
  require(!out.empty(), "no models selected: pass --model or list models in the config");
  return out;
}

// Models with a summary file: the selected ones, or every file present.
std::vector<config::ModelSpec> summarized_models(const config::RunConfig& cfg, const Args& a,
                                                 const fs::path& summaries_dir) {
  if (!fs::is_directory(summaries_dir)) {
    throw InputError("summaries directory not found: " + summaries_dir.string() + " (run 'summarize' first)");
  }
  if (!a.models.empty() || !cfg.models.empty()) return selected_models(cfg, a);
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(summaries_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") names.push_back(entry.path().stem().string());
  }
  std::sort(names.begin(), names.end());
  require(!names.empty(), "no summary files in " + summaries_dir.string());
  std::vector<config::ModelSpec> out;
  for (const auto& name : names) {
    auto spec = config::builtin_model(name).value_or(config::ModelSpec{});
    spec.backend.name = name;
    out.push_back(spec);
  }
  return out;
}

evalrunner::Family find_family(const config::RunConfig& cfg, const std::string& name) {
  for (const auto& m : cfg.models) {
    if (m.backend.name == name) return m.family;
  }
  if (auto b = config::builtin_model(name)) return b->family;
  return evalrunner::Family::kLlm;
}

fs::path summary_path(const fs::path& dir, const std::string& model) {
  return dir / "summaries" / (safe_name(model) + ".jsonl");
}

// Runs fn(i) for i in [0, n) on up to `workers` threads; rethrows the first
// failure after all workers stop.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn fn) {
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex mu;
  auto work = [&] {
    for (std::size_t i; !failed && (i = next++) < n;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  const std::size_t count = std::max<std::size_t>(1, std::min(workers, n));
  std::vector<std::thread> threads;
  for (std::size_t t = 1; t < count; ++t) threads.emplace_back(work);
  work();
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << content;
  if (!out) throw InputError("cannot write " + path.string());
}

// Scorer wiring shared by evaluate and audit.
struct Scorers {
  consistency::HeuristicEntityExtractor heuristic;
  std::optional<consistency::RemoteScorer> remote;
  std::optional<consistency::FallbackEntityExtractor> fallback;

  explicit Scorers(const config::RunConfig& cfg) {
    std::vector<std::string> gazetteer;
    if (!cfg.gazetteer_file.empty()) gazetteer = read_lines(cfg.gazetteer_file);
    heuristic = consistency::HeuristicEntityExtractor(std::move(gazetteer), abbreviations_for(cfg));
    if (!cfg.scorer_url.empty()) {
      consistency::ScorerConfig sc;
      sc.base_url = cfg.scorer_url;
      sc.timeout = cfg.scorer_timeout;
      remote.emplace(sc);
      if (cfg.scorer_fallback) fallback.emplace(*remote, heuristic);
    }
  }
  Scorers(const Scorers&) = delete;
  Scorers& operator=(const Scorers&) = delete;

  const consistency::NliScorer* nli() const { return remote ? &*remote : nullptr; }
  const consistency::EntityExtractor* entities() const {
    if (fallback) return &*fallback;
    if (remote) return &*remote;
    return &heuristic;
  }
};

// ---------------------------------------------------------------------------

int cmd_stats(const Args& a, std::ostream& out) {
  const auto cfg = resolve_config(a);
  out << corpus::format_stats(corpus::corpus_stats(load_pairs(cfg)));
  return kExitOk;
}

int cmd_summarize(const Args& a, std::ostream& out, std::ostream& err) {
  const auto cfg = resolve_config(a);
  const auto pairs = load_pairs(cfg);
  const fs::path dir = run_dir(cfg);
  auto models = selected_models(cfg, a);

  for (const auto& spec : models) {
    const fs::path path = summary_path(dir, spec.backend.name);
    if (fs::exists(path) && !a.force) {
      throw ValidationError("summary file exists: " + path.string() + " (pass --force to overwrite)");
    }
  }

  const auto abbreviations = abbreviations_for(cfg);
  consistency::HeuristicEntityExtractor entities(
      cfg.gazetteer_file.empty() ? std::vector<std::string>{} : read_lines(cfg.gazetteer_file), abbreviations);
  std::mutex log_mu;

  for (auto spec : models) {
    auto& ex = spec.backend.extractive;
    ex.weights = cfg.weights;
    ex.heading_patterns = cfg.heading_patterns;
    ex.abbreviations = abbreviations;
    ex.entities = &entities;
    ex.model_name = spec.backend.name;
    spec.backend.validate();
    backends::BackendClient client(spec.backend);

    const fs::path raw_dir = dir / "raw_responses" / safe_name(spec.backend.name);
    fs::create_directories(raw_dir);
    fs::create_directories(dir / "summaries");

    std::vector<GeneratedSummary> results(pairs.size());
    std::atomic<std::size_t> done{0};
    parallel_for(pairs.size(), cfg.workers, [&](std::size_t i) {
      const auto& pair = pairs[i];
      chunker::BudgetParams budget;
      budget.chunk_words = cfg.chunk_words;
      budget.fixed_ratio = cfg.fixed_ratio;
      backends::SummarizeOptions options;
      options.mode = cfg.chunk_mode;
      options.abbreviations = abbreviations;
      nlohmann::ordered_json records = nlohmann::ordered_json::array();
      options.on_chunk = [&](const backends::ChunkRecord& r) {
        records.push_back({{"doc_id", r.doc_id},
                           {"model_name", r.model_name},
                           {"chunk_index", r.chunk_index},
                           {"chunk_words", r.chunk_words},
                           {"max_words", r.max_words},
                           {"attempts", r.attempts},
                           {"warning", r.warning},
                           {"prompt", r.prompt},
                           {"raw", r.raw},
                           {"text", r.text}});
      };
      results[i] = backends::summarize_document(pair.document, pair.gold.word_count, client, spec.style, budget,
                                                options);
      std::string lines;
      for (const auto& rec : records) lines += rec.dump() + "\n";
      write_file(raw_dir / (safe_name(pair.document.id) + ".jsonl"), lines);
      const std::size_t n = ++done;
      if (!a.quiet) {
        std::lock_guard lock(log_mu);
        err << "[" << spec.backend.name << "] " << n << "/" << pairs.size() << " " << pair.document.id << "\n";
      }
    });

    const fs::path path = summary_path(dir, spec.backend.name);
    const fs::path tmp = fs::path(path.string() + ".tmp");
    save_summaries(tmp, results);
    fs::rename(tmp, path);
    std::size_t warned = 0;
    for (const auto& s : results) warned += s.warnings.empty() ? 0 : 1;
    out << spec.backend.name << ": " << results.size() << " summaries, " << warned
        << " with warnings -> " << path.string() << "\n";
  }
  return kExitOk;
}

int cmd_evaluate(const Args& a, std::ostream& out, std::ostream& err) {
  const auto cfg = resolve_config(a);
  const auto pairs = load_pairs(cfg);
  const fs::path dir = run_dir(cfg);
  const auto models = summarized_models(cfg, a, dir / "summaries");
  const Scorers scorers(cfg);

  evalrunner::EvalOptions options;
  options.nli = scorers.nli();
  options.entities = scorers.entities();
  options.rougeL_mode = cfg.rougeL_mode;
  options.tokenize.stem = cfg.stem;
  options.abbreviations = abbreviations_for(cfg);
  options.workers = cfg.workers;

  std::vector<evalrunner::RunResult> results;
  for (const auto& spec : models) {
    const fs::path path = summary_path(dir, spec.backend.name);
    if (!fs::exists(path)) throw InputError("no summaries for model '" + spec.backend.name + "': " + path.string());
    const auto summaries = index_by_doc(load_summaries(path));
    if (!a.quiet) {
      options.progress = [&err, name = spec.backend.name](std::size_t done, std::size_t total) {
        if (done == total) err << "[" << name << "] scored " << total << " documents\n";
      };
    }
    results.push_back(evalrunner::evaluate_corpus(pairs, summaries, spec.backend.name, spec.family, options));
  }
  evalrunner::mark_significance(results, cfg.alpha,
                                cfg.paired_test ? evalrunner::TestKind::kPaired : evalrunner::TestKind::kPooled);
  evalrunner::save_cards(dir / "cards.jsonl", results);
  evalrunner::save_aggregates(dir / "aggregates.json", results);

  report::TableOptions table;
  table.consistency_for_extractive = cfg.consistency_for_extractive;
  table.alpha = cfg.alpha;
  out << report::render_table(results, report::TableFormat::kMarkdown, table);
  return kExitOk;
}

int cmd_audit(const Args& a, std::ostream& out, std::ostream& err) {
  const auto cfg = resolve_config(a);
  const auto pairs = load_pairs(cfg);
  const fs::path dir = run_dir(cfg);
  const auto models = summarized_models(cfg, a, dir / "summaries");
  require(a.audit_format == "html" || a.audit_format == "json" || a.audit_format == "both",
          "--format must be html, json or both");
  const bool html = a.audit_format != "json";
  const bool json = a.audit_format != "html";
  const Scorers scorers(cfg);

  consistency::AuditOptions options;
  options.entities = scorers.entities();
  options.nli = scorers.nli();
  options.nli_threshold = cfg.nli_threshold;
  options.abbreviations = abbreviations_for(cfg);

  const fs::path audit_dir = dir / "audit";
  fs::create_directories(audit_dir);
  std::mutex log_mu;
  for (const auto& spec : models) {
    const auto summaries = index_by_doc(load_summaries(summary_path(dir, spec.backend.name)));
    std::atomic<std::size_t> flagged{0};
    parallel_for(pairs.size(), cfg.workers, [&](std::size_t i) {
      const auto& doc = pairs[i].document;
      const auto it = summaries.find(doc.id);
      if (it == summaries.end()) {
        throw ValidationError("model '" + spec.backend.name + "' has no summary for document '" + doc.id + "'");
      }
      const auto& text = it->second.text;
      const auto flags = consistency::audit_summary(text, doc.text, options);
      flagged += flags.size();
      const std::string title = doc.id + " / " + spec.backend.name;
      const std::string stem = safe_name(doc.id) + "." + safe_name(spec.backend.name);
      if (html) write_file(audit_dir / (stem + ".html"), report::render_audit(text, flags, report::AuditFormat::kHtml, title));
      if (json) write_file(audit_dir / (stem + ".json"), report::render_audit(text, flags, report::AuditFormat::kJson, title));
    });
    {
      std::lock_guard lock(log_mu);
      out << spec.backend.name << ": " << flagged.load() << " flags over " << pairs.size() << " documents\n";
    }
  }
  if (!a.quiet) err << "audit reports in " << audit_dir.string() << "\n";
  return kExitOk;
}

int cmd_report(const Args& a, std::ostream& out) {
  const auto cfg = resolve_config(a);
  const fs::path dir = run_dir(cfg);
  const fs::path cards = dir / "cards.jsonl";
  if (!fs::exists(cards)) throw InputError("no score cards at " + cards.string() + " (run 'evaluate' first)");
  auto results = evalrunner::load_cards(cards);
  std::map<std::string, evalrunner::Family> families;
  if (fs::exists(dir / "aggregates.json")) families = evalrunner::load_families(dir / "aggregates.json");
  for (auto& r : results) {
    if (auto it = families.find(r.model_name); it != families.end()) {
      r.family = it->second;
    } else {
      r.family = find_family(cfg, r.model_name);
    }
  }
  evalrunner::mark_significance(results, cfg.alpha,
                                cfg.paired_test ? evalrunner::TestKind::kPaired : evalrunner::TestKind::kPooled);

  report::TableOptions opts;
  opts.consistency_for_extractive = cfg.consistency_for_extractive;
  opts.alpha = cfg.alpha;
  auto render = [&](report::TableFormat f, report::TableSelection s) {
    report::TableOptions o = opts;
    o.selection = s;
    return report::render_table(results, f, o);
  };
  write_file(dir / "report.csv", render(report::TableFormat::kCsv, report::TableSelection::kMatch));
  write_file(dir / "consistency.csv", render(report::TableFormat::kCsv, report::TableSelection::kConsistency));
  write_file(dir / "report.json", render(report::TableFormat::kJson, report::TableSelection::kBoth));
  const std::string md = render(report::TableFormat::kMarkdown, report::TableSelection::kBoth);
  write_file(dir / "report.md", md);
  out << md;
  return kExitOk;
}

}  // namespace

int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Legal case summarization evaluation harness", "legalsum"};
  app.require_subcommand(1);
  Args a;

  auto* stats = app.add_subcommand("stats", "Corpus statistics");
  add_common(stats, a);

  auto* summarize = app.add_subcommand("summarize", "Generate summaries for every document");
  add_common(summarize, a);
  add_models(summarize, a);
  summarize->add_option("--chunk-words", a.chunk_words, "Words per chunk")->check(CLI::PositiveNumber);
  summarize->add_option("--chunk-mode", a.chunk_mode, "hard or sentence");
  summarize->add_option("--budget", a.budget, "gold_ratio or fixed_ratio:<r>");
  summarize->add_flag("--force", a.force, "Overwrite existing summary files");

  auto* evaluate = app.add_subcommand("evaluate", "Score summaries against the gold summaries");
  add_common(evaluate, a);
  add_models(evaluate, a);
  add_scorer(evaluate, a);

  auto* audit = app.add_subcommand("audit", "Flag unsupported content in summaries");
  add_common(audit, a);
  add_models(audit, a);
  add_scorer(audit, a);
  audit->add_option("--nli-threshold", a.nli_threshold, "Flag sentences with support below this")
      ->check(CLI::Range(0.0, 1.0));
  audit->add_option("--format", a.audit_format, "html, json or both");

  auto* report_cmd = app.add_subcommand("report", "Render result tables from score cards");
  add_common(report_cmd, a);

  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (stats->parsed()) return cmd_stats(a, out);
    if (summarize->parsed()) return cmd_summarize(a, out, err);
    if (evaluate->parsed()) return cmd_evaluate(a, out, err);
    if (audit->parsed()) return cmd_audit(a, out, err);
    if (report_cmd->parsed()) return cmd_report(a, out);
  } catch (const BackendError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace legalsum::cli
