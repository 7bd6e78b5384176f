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

// Acceptance suite: one PASS/FAIL line per criterion. Tolerances and sizes
// are fixed here; the process exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "legalsum/backends.hpp"
#include "legalsum/chunker.hpp"
#include "legalsum/consistency.hpp"
#include "legalsum/corpus.hpp"
#include "legalsum/evalrunner.hpp"
#include "legalsum/extractive.hpp"
#include "legalsum/metrics.hpp"
#include "legalsum/textproc.hpp"
#include "oracles.hpp"
#include "synth.hpp"
#include "test_support.hpp"

namespace {

namespace fs = std::filesystem;
using namespace legalsum;
using Clock = std::chrono::steady_clock;

// Pinned sizes and tolerances.
constexpr int kOraclePairs = 200;
constexpr std::size_t kOracleMaxLen = 10;
constexpr double kOracleSeconds = 10.0;
constexpr int kIdentityTexts = 50;
constexpr double kIdentityMeteorMin = 0.999;
constexpr std::size_t kIdentityMeteorMinTokens = 20;
constexpr double kDisjointBleuMax = 1.0;
constexpr int kExtractiveDocs = 20;
constexpr int kChunkDocs = 100;
constexpr std::size_t kChunkMinWords = 500;
constexpr std::size_t kChunkMaxWords = 6000;
constexpr int kSummacMatrices = 500;
constexpr std::size_t kSummacMaxDim = 6;
constexpr double kSummacTolerance = 1e-12;
constexpr int kSummacIncreases = 100;
constexpr int kMergeControls = 20;
constexpr double kSmokeSeconds = 60.0;
constexpr double kTTestTolerance = 1e-6;
constexpr std::size_t kTable1Docs = 100;
constexpr std::size_t kTable1DocWords = 478271;
constexpr std::size_t kTable1SummaryWords = 93201;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Check {
 public:
  void fail(const std::string& why) {
    if (out_.pass) out_.detail = why;
    out_.pass = false;
  }
  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
  void note(const std::string& detail) {
    if (out_.pass) out_.detail = detail;
  }
  Outcome outcome() const { return out_; }

 private:
  Outcome out_;
};

std::string fmt(double v, int decimals = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

int run_cli(const std::string& args, const fs::path& stdout_file) {
  const std::string cmd = shell_quote(LEGALSUM_CLI_PATH) + " " + args + " > " + shell_quote(stdout_file.string()) +
                          " 2> " + shell_quote(stdout_file.string() + ".err");
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// ---------------------------------------------------------------------------

Outcome metric_oracle() {
  Check c;
  std::mt19937_64 rng(20240101);
  std::uniform_int_distribution<std::size_t> len(0, kOracleMaxLen);
  std::uniform_int_distribution<int> vocab(0, 5);
  const auto t0 = Clock::now();
  for (int i = 0; i < kOraclePairs; ++i) {
    textproc::TokenSeq a, b;
    for (std::size_t n = len(rng); n > 0; --n) a.tokens.push_back("t" + std::to_string(vocab(rng)));
    for (std::size_t n = len(rng); n > 0; --n) b.tokens.push_back("t" + std::to_string(vocab(rng)));
    const auto r2 = metrics::rouge2(a, b);
    const bool has_bigrams = a.size() >= 2 && b.size() >= 2;
    const double m2 = static_cast<double>(oracle::bigram_matches(a.tokens, b.tokens));
    const double p2 = has_bigrams ? m2 / static_cast<double>(a.size() - 1) : 0.0;
    const double q2 = has_bigrams ? m2 / static_cast<double>(b.size() - 1) : 0.0;
    c.expect(r2.precision == p2 && r2.recall == q2 && r2.f1 == oracle::f1(p2, q2),
             "rouge2 mismatch on pair " + std::to_string(i));
    const auto rl = metrics::rougeL(a, b);
    const double l = static_cast<double>(oracle::exhaustive_lcs(a.tokens, b.tokens));
    const double pl = a.empty() ? 0.0 : l / static_cast<double>(a.size());
    const double ql = b.empty() ? 0.0 : l / static_cast<double>(b.size());
    c.expect(rl.precision == pl && rl.recall == ql && rl.f1 == oracle::f1(pl, ql),
             "rougeL mismatch on pair " + std::to_string(i));
  }
  const double secs = seconds_since(t0);
  c.expect(secs < kOracleSeconds, "runtime " + fmt(secs, 3) + " s");
  c.note(std::to_string(kOraclePairs) + " pairs exact, " + fmt(secs, 3) + " s");
  return c.outcome();
}

Outcome identity_suite() {
  Check c;
  testsupport::SynthDocs synth(7);
  int meteor_checked = 0;
  for (int i = 0; i < kIdentityTexts; ++i) {
    std::string text;
    const int sentences = synth.uniform(1, 8);
    for (int s = 0; s < sentences; ++s) text += (s ? " " : "") + synth.sentence();
    const auto toks = textproc::tokenize(text);
    const auto r2 = metrics::rouge2(toks, toks);
    const auto rl = metrics::rougeL(toks, toks);
    const std::string id = "text " + std::to_string(i);
    c.expect(r2.precision == 1.0 && r2.recall == 1.0 && r2.f1 == 1.0, id + ": rouge2 != 1");
    c.expect(rl.precision == 1.0 && rl.recall == 1.0 && rl.f1 == 1.0, id + ": rougeL != 1");
    const double b = metrics::bleu(toks, toks);
    c.expect(std::fabs(b - 100.0) < 1e-9, id + ": BLEU " + fmt(b));
    if (toks.size() >= kIdentityMeteorMinTokens) {
      ++meteor_checked;
      const double m = metrics::meteor(toks, toks);
      c.expect(m >= kIdentityMeteorMin, id + ": METEOR " + fmt(m));
    }
    // Disjoint vocabulary: same shape, every token renamed.
    textproc::TokenSeq other;
    for (const auto& t : toks.tokens) other.tokens.push_back("zz" + t + "zz");
    const auto d2 = metrics::rouge2(toks, other);
    const auto dl = metrics::rougeL(toks, other);
    const double db = metrics::bleu(toks, other);
    c.expect(d2.f1 == 0.0 && dl.f1 == 0.0 && metrics::meteor(toks, other) == 0.0, id + ": disjoint overlap > 0");
    c.expect(db < kDisjointBleuMax, id + ": disjoint BLEU " + fmt(db));
  }
  c.expect(meteor_checked > 0, "no text reached the METEOR length");
  c.note(std::to_string(kIdentityTexts) + " texts, METEOR checked on " + std::to_string(meteor_checked));
  return c.outcome();
}

Outcome extractive_faithfulness() {
  Check c;
  testsupport::SynthDocs synth(99);
  backends::BackendConfig cfg;
  cfg.name = "casesummarizer";
  cfg.kind = backends::BackendKind::kExtractiveBuiltin;
  backends::BackendClient client(cfg);
  std::size_t flags_total = 0;
  for (int i = 0; i < kExtractiveDocs; ++i) {
    const std::string text = synth.document(static_cast<std::size_t>(synth.uniform(300, 3000)));
    const corpus::CaseDocument doc{"syn-" + std::to_string(i), text, textproc::word_count(text)};
    const std::size_t gold = std::max<std::size_t>(20, doc.word_count / static_cast<std::size_t>(synth.uniform(4, 8)));
    chunker::BudgetParams budget;
    const auto summary = backends::summarize_document(doc, gold, client, PromptStyle::kSummPrefixWords, budget);
    const double np = consistency::num_prec(summary.text, doc.text);
    const double ne = consistency::ne_prec(summary.text, doc.text);
    const auto flags = consistency::audit_summary(summary.text, doc.text);
    flags_total += flags.size();
    c.expect(np == 1.0, doc.id + ": NumPrec " + fmt(np));
    c.expect(ne == 1.0, doc.id + ": NEPrec " + fmt(ne));
    if (!flags.empty()) {
      const auto& f = flags.front();
      c.fail(doc.id + ": " + std::to_string(flags.size()) + " audit flag(s), first " +
             std::string(consistency::flag_kind_name(f.kind)) + " '" +
             summary.text.substr(f.span.begin, f.span.size()) + "'");
    }
  }
  c.note(std::to_string(kExtractiveDocs) + " documents, NumPrec = NEPrec = 1, " + std::to_string(flags_total) +
         " flags");
  return c.outcome();
}

Outcome chunk_invariants() {
  Check c;
  testsupport::SynthDocs synth(4242);
  std::size_t total_chunks = 0;
  for (int i = 0; i < kChunkDocs; ++i) {
    const auto target = static_cast<std::size_t>(synth.uniform(static_cast<int>(kChunkMinWords),
                                                               static_cast<int>(kChunkMaxWords) - 60));
    const std::string text = synth.document(target);
    const corpus::CaseDocument doc{"c" + std::to_string(i), text, textproc::word_count(text)};
    const std::string id = doc.id + " (" + std::to_string(doc.word_count) + " words)";
    c.expect(doc.word_count >= kChunkMinWords && doc.word_count <= kChunkMaxWords, id + ": outside size range");
    chunker::BudgetParams p;
    p.doc_words = doc.word_count;
    p.gold_words = std::max<std::size_t>(1, doc.word_count * static_cast<std::size_t>(synth.uniform(5, 35)) / 100);
    const auto plan = chunker::chunk_document(doc, p, chunker::ChunkMode::kHard);
    total_chunks += plan.size();
    std::vector<std::string> joined;
    std::size_t budget_sum = 0;
    for (const auto& ch : plan.chunks) {
      c.expect(ch.word_count <= chunker::kDefaultChunkWords, id + ": chunk over 1024 words");
      c.expect(ch.word_count == textproc::word_count(ch.text), id + ": chunk word count");
      const std::size_t want = oracle::round_half_up_budget(p.gold_words, p.doc_words, ch.word_count);
      c.expect(ch.target_summary_words == want, id + ": budget " + std::to_string(ch.target_summary_words) +
                                                     " != " + std::to_string(want));
      budget_sum += ch.target_summary_words;
      for (auto& t : textproc::tokenize(ch.text).tokens) joined.push_back(std::move(t));
    }
    c.expect(joined == textproc::tokenize(doc.text).tokens, id + ": tokens do not reassemble");
    const double diff = std::fabs(static_cast<double>(budget_sum) - static_cast<double>(p.gold_words));
    c.expect(diff <= static_cast<double>(plan.size()),
             id + ": budget sum " + std::to_string(budget_sum) + " vs |S| " + std::to_string(p.gold_words));
  }
  c.note(std::to_string(kChunkDocs) + " documents, " + std::to_string(total_chunks) + " chunks");
  return c.outcome();
}

Outcome summac_aggregation() {
  Check c;
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<std::size_t> dim(1, kSummacMaxDim);
  std::uniform_real_distribution<double> val(0.0, 1.0);
  double worst = 0.0;
  std::vector<std::vector<std::vector<double>>> kept;
  for (int i = 0; i < kSummacMatrices; ++i) {
    std::vector<std::vector<double>> rows(dim(rng), std::vector<double>(dim(rng)));
    for (auto& r : rows)
      for (auto& v : r) v = val(rng);
    const double err = std::fabs(consistency::summac_score(consistency::NliMatrix::from_rows(rows)) -
                                 oracle::max_then_mean(rows));
    worst = std::max(worst, err);
    if (i < kSummacIncreases) kept.push_back(std::move(rows));
  }
  c.expect(worst <= kSummacTolerance, "max error " + std::to_string(worst));
  int monotone = 0;
  for (auto& rows : kept) {
    const double before = consistency::summac_score(consistency::NliMatrix::from_rows(rows));
    std::uniform_int_distribution<std::size_t> r(0, rows.size() - 1), col(0, rows[0].size() - 1);
    auto& cell = rows[r(rng)][col(rng)];
    cell = std::uniform_real_distribution<double>(cell, 1.0)(rng);
    const double after = consistency::summac_score(consistency::NliMatrix::from_rows(rows));
    if (after >= before) ++monotone;
  }
  c.expect(monotone == kSummacIncreases, std::to_string(kSummacIncreases - monotone) + " monotonicity violations");
  c.note(std::to_string(kSummacMatrices) + " matrices, max error " + std::to_string(worst) + "; " +
         std::to_string(monotone) + "/" + std::to_string(kSummacIncreases) + " increases monotone");
  return c.outcome();
}

Outcome merge_artifacts() {
  Check c;
  struct Case {
    std::string sentence, token;
  };
  const std::vector<Case> reported{
      {"Mahabir filed an application under sections 4 and 5 of theThe case involves allegations of contempt of "
       "court",
       "theThe"},
      {"The intention of the parties that in compliance with the requirements of cl.5(2) of the Exports (Control) "
       "OrderThere is no circumstance which would justify a conclusion that ...",
       "OrderThere"}};
  for (const auto& rc : reported) {
    const auto flags = consistency::detect_merge_artifacts(rc.sentence);
    bool found = false;
    for (const auto& f : flags) found = found || rc.sentence.substr(f.span.begin, f.span.size()) == rc.token;
    c.expect(found, "missed '" + rc.token + "'");
    c.expect(flags.size() == 1, std::to_string(flags.size()) + " flags in the '" + rc.token + "' sentence");
  }
  const std::vector<std::string> controls{"McDonald", "MacArthur", "DeSouza",  "O'Brien",  "iPhone",
                                          "PhD",      "YouTube",   "LaSalle",  "DiCaprio", "VanDyke",
                                          "FitzGerald", "McMillan", "MacLeod", "DuPont",   "LeBlanc",
                                          "DeMello",  "D'Souza",   "O'Connor", "McKinley", "MacGregor"};
  c.expect(static_cast<int>(controls.size()) == kMergeControls, "control set size");
  for (const auto& name : controls) {
    const std::string sentence = "The witness " + name + " deposed before the court.";
    const auto flags = consistency::detect_merge_artifacts(sentence);
    c.expect(flags.empty(), "false positive on '" + name + "'");
  }
  c.note("2/2 reported instances flagged, 0 flags on " + std::to_string(controls.size()) + " proper nouns");
  return c.outcome();
}

Outcome end_to_end_smoke() {
  Check c;
  testsupport::TempDir dir;
  const auto t0 = Clock::now();
  const std::string corpus = shell_quote((testsupport::data_dir() / "toy_corpus.jsonl").string());
  std::vector<std::string> reports;
  for (int run = 0; run < 2; ++run) {
    const fs::path out = dir / ("run" + std::to_string(run));
    const std::string common = "--corpus " + corpus + " --out " + shell_quote(out.string()) + " --quiet";
    const std::string workers = run == 0 ? " --workers 1" : " --workers 3";
    int rc = run_cli("summarize --model mock --model extractive " + common + workers, dir / "s.txt");
    c.expect(rc == 0, "summarize exit " + std::to_string(rc) + ": " + testsupport::read_text(dir / "s.txt.err"));
    rc = run_cli("evaluate " + common + workers, dir / "e.txt");
    c.expect(rc == 0, "evaluate exit " + std::to_string(rc) + ": " + testsupport::read_text(dir / "e.txt.err"));
    rc = run_cli("report --out " + shell_quote(out.string()), dir / "r.txt");
    c.expect(rc == 0, "report exit " + std::to_string(rc) + ": " + testsupport::read_text(dir / "r.txt.err"));
    reports.push_back(testsupport::read_text(out / "report.csv") + testsupport::read_text(out / "consistency.csv") +
                      testsupport::read_text(out / "report.json") + testsupport::read_text(out / "report.md"));
  }
  const double secs = seconds_since(t0);
  c.expect(!reports[0].empty() && reports[0] == reports[1], "reports differ between identical runs");

  const fs::path out = dir / "run0";
  const std::string csv = testsupport::read_text(out / "report.csv");
  c.expect(csv.substr(0, csv.find('\n')) == "model,family,R2-P,R2-R,R2-F1,RL-P,RL-R,RL-F1,ME,BLEU(%),best",
           "match table header: " + csv.substr(0, csv.find('\n')));
  const std::string cons = testsupport::read_text(out / "consistency.csv");
  c.expect(cons.substr(0, cons.find('\n')) == "model,family,SummaC,NEPrec,NumPrec,best",
           "consistency table header: " + cons.substr(0, cons.find('\n')));
  try {
    const auto doc = nlohmann::json::parse(testsupport::read_text(out / "report.json"));
    const std::vector<std::string> want{"R2-P", "R2-R", "R2-F1", "RL-P", "RL-R", "RL-F1", "ME", "BLEU(%)"};
    c.expect(doc["match"]["columns"].get<std::vector<std::string>>() == want, "report.json match columns");
    c.expect(doc["consistency"]["columns"].get<std::vector<std::string>>() ==
                 std::vector<std::string>{"SummaC", "NEPrec", "NumPrec"},
             "report.json consistency columns");
    c.expect(doc["match"]["rows"].size() == 2, "expected 2 model rows");
  } catch (const std::exception& e) {
    c.fail(std::string("report.json: ") + e.what());
  }
  c.expect(secs < kSmokeSeconds, "runtime " + fmt(secs, 2) + " s");
  c.note("2 identical runs, 8 match + 3 consistency columns, " + fmt(secs, 2) + " s");
  return c.outcome();
}

Outcome statistics() {
  Check c;
  const std::vector<double> a{2.1, 2.5, 2.3, 2.2}, b{1.1, 1.4, 1.2, 1.3};
  const auto r = evalrunner::t_test(a, b);
  const auto [t, df] = oracle::pooled_t(a, b);
  c.expect(std::fabs(r.t - t) <= kTTestTolerance, "t " + fmt(r.t) + " vs " + fmt(t));
  c.expect(r.df == df, "df");
  c.expect(std::fabs(r.p_value - oracle::two_sided_p(r.t, df)) <= kTTestTolerance, "p-value " + fmt(r.p_value, 9));
  const auto same = evalrunner::t_test(a, a);
  c.expect(same.t == 0.0 && !same.significant, "identical samples");

  auto result = [](std::string name, evalrunner::Family family, std::vector<double> xs) {
    evalrunner::RunResult rr;
    rr.model_name = std::move(name);
    rr.family = family;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      metrics::ScoreCard card;
      card.doc_id = "d" + std::to_string(i);
      card.r2.f1 = xs[i];
      rr.cards.push_back(card);
    }
    evalrunner::compute_aggregates(rr);
    return rr;
  };
  using evalrunner::Family;
  std::vector<evalrunner::RunResult> results{
      result("above-significant", Family::kAbstractive, a),
      result("above-not-significant", Family::kAbstractive, {1.2, 1.5, 1.1, 1.4}),
      result("below-significant", Family::kAbstractive, {1.0, 1.05, 0.95, 1.0}),
      result("other-extractive", Family::kExtractive, {0.5, 0.6, 0.5, 0.6}),
      result("best-extractive", Family::kExtractive, b)};
  evalrunner::mark_significance(results, 0.05);
  const auto m = evalrunner::Metric::kR2F1;
  c.expect(results[0].is_significant(m), "above+significant not marked");
  c.expect(!results[1].is_significant(m), "above+not-significant marked");
  c.expect(evalrunner::t_test(results[2].column(m), b).significant, "fixture: below case should test significant");
  c.expect(!results[2].is_significant(m), "below-baseline model marked");
  c.expect(!results[3].is_significant(m) && !results[4].is_significant(m), "extractive model marked");
  c.note("t = " + fmt(r.t) + " (oracle " + fmt(t) + "), df = " + fmt(df, 0) + ", p = " + fmt(r.p_value, 7) +
         "; asterisk rule holds");
  return c.outcome();
}

Outcome table1_stats() {
  Check c;
  testsupport::TempDir dir;
  // Spread the totals so no two records are alike; the remainders keep the
  // sums exact.
  std::vector<corpus::CorpusPair> pairs;
  std::mt19937_64 rng(1);
  std::vector<std::size_t> doc_words(kTable1Docs), sum_words(kTable1Docs);
  std::size_t doc_left = kTable1DocWords, sum_left = kTable1SummaryWords;
  for (std::size_t i = 0; i < kTable1Docs; ++i) {
    const std::size_t remaining = kTable1Docs - i;
    if (remaining == 1) {
      doc_words[i] = doc_left;
      sum_words[i] = sum_left;
    } else {
      const std::size_t d_avg = doc_left / remaining, s_avg = sum_left / remaining;
      doc_words[i] = d_avg - 500 + std::uniform_int_distribution<std::size_t>(0, 1000)(rng);
      sum_words[i] = s_avg - 100 + std::uniform_int_distribution<std::size_t>(0, 200)(rng);
    }
    doc_left -= doc_words[i];
    sum_left -= sum_words[i];
  }
  auto padded = [](std::size_t n, const std::string& word) {
    std::string s;
    s.reserve(n * (word.size() + 1));
    for (std::size_t k = 0; k < n; ++k) s += (k ? (k % 17 == 0 ? "\n" : " ") : "") + word;
    return s;
  };
  for (std::size_t i = 0; i < kTable1Docs; ++i) {
    pairs.push_back(corpus::make_pair("t1-" + std::to_string(i), padded(doc_words[i], "judgment"),
                                      padded(sum_words[i], "summary")));
  }
  corpus::save_corpus(dir / "test.jsonl", pairs);
  const int rc = run_cli("stats --corpus " + shell_quote(dir.path().string()) + " --split test", dir / "out.txt");
  const std::string out = testsupport::read_text(dir / "out.txt");
  c.expect(rc == 0, "stats exit " + std::to_string(rc));
  const std::string want = "n_docs: 100\navg_doc_words: 4782.71\navg_summary_words: 932.01\n";
  c.expect(out == want, "printed: " + out);
  c.note("n_docs: 100, avg_doc_words: 4782.71, avg_summary_words: 932.01");
  return c.outcome();
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"metric-oracle-equivalence", metric_oracle},
      {"identity-suite", identity_suite},
      {"extractive-faithfulness", extractive_faithfulness},
      {"chunk-invariants", chunk_invariants},
      {"summac-aggregation", summac_aggregation},
      {"merge-artifact-detector", merge_artifacts},
      {"end-to-end-smoke", end_to_end_smoke},
      {"statistics", statistics},
      {"corpus-stats-fixture", table1_stats},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS " : "FAIL ") << cr.name << " -- " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
