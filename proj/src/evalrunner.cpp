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

#include "legalsum/evalrunner.hpp"

#include <algorithm>
#include <atomic>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <nlohmann/json.hpp>
#include <thread>

#include "legalsum/error.hpp"

namespace legalsum::evalrunner {
namespace {

using json = nlohmann::ordered_json;

double mean(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

// Sum of squared deviations from the mean.
double sum_sq_dev(const std::vector<double>& v, double m) {
  double sum = 0.0;
  for (double x : v) sum += (x - m) * (x - m);
  return sum;
}

TTestResult decide(double t, double df, double alpha) {
  TTestResult out;
  out.t = t;
  out.df = df;
  if (std::isinf(t)) {
    out.p_value = 0.0;
  } else {
    boost::math::students_t dist(df);
    out.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
  }
  out.significant = out.p_value < alpha;
  return out;
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must lie in (0, 1)");
}

std::vector<metrics::TokenSeq> sentence_tokens(std::string_view text, const EvalOptions& options) {
  std::vector<metrics::TokenSeq> out;
  for (const auto& s : textproc::split_sentences(text, options.abbreviations).sentences) {
    out.push_back(textproc::tokenize(s, options.tokenize));
  }
  return out;
}

json card_to_json(const ScoreCard& c) {
  json j;
  j["doc_id"] = c.doc_id;
  j["model_name"] = c.model_name;
  for (Metric m : kAllMetrics) j[std::string(metric_key(m))] = metric_value(c, m);
  return j;
}

ScoreCard card_from_json(const json& j) {
  ScoreCard c;
  c.doc_id = j.at("doc_id").get<std::string>();
  c.model_name = j.at("model_name").get<std::string>();
  c.r2 = {j.at("r2_p").get<double>(), j.at("r2_r").get<double>(), j.at("r2_f1").get<double>()};
  c.rl = {j.at("rl_p").get<double>(), j.at("rl_r").get<double>(), j.at("rl_f1").get<double>()};
  c.meteor = j.at("meteor").get<double>();
  c.bleu_percent = j.at("bleu").get<double>();
  c.summac = j.at("summac").get<double>();
  c.ne_prec = j.at("ne_prec").get<double>();
  c.num_prec = j.at("num_prec").get<double>();
  return c;
}

}  // namespace

Family parse_family(std::string_view name) {
  if (name == "llm") return Family::kLlm;
  if (name == "abstractive") return Family::kAbstractive;
  if (name == "extractive") return Family::kExtractive;
  throw ValidationError("unknown model family '" + std::string(name) + "'");
}

std::string_view family_name(Family family) {
  switch (family) {
    case Family::kLlm: return "llm";
    case Family::kAbstractive: return "abstractive";
    case Family::kExtractive: return "extractive";
  }
  return "unknown";
}

std::string_view metric_key(Metric metric) {
  switch (metric) {
    case Metric::kR2P: return "r2_p";
    case Metric::kR2R: return "r2_r";
    case Metric::kR2F1: return "r2_f1";
    case Metric::kRLP: return "rl_p";
    case Metric::kRLR: return "rl_r";
    case Metric::kRLF1: return "rl_f1";
    case Metric::kMeteor: return "meteor";
    case Metric::kBleu: return "bleu";
    case Metric::kSummaC: return "summac";
    case Metric::kNEPrec: return "ne_prec";
    case Metric::kNumPrec: return "num_prec";
  }
  return "unknown";
}

double metric_value(const ScoreCard& card, Metric metric) {
  switch (metric) {
    case Metric::kR2P: return card.r2.precision;
    case Metric::kR2R: return card.r2.recall;
    case Metric::kR2F1: return card.r2.f1;
    case Metric::kRLP: return card.rl.precision;
    case Metric::kRLR: return card.rl.recall;
    case Metric::kRLF1: return card.rl.f1;
    case Metric::kMeteor: return card.meteor;
    case Metric::kBleu: return card.bleu_percent;
    case Metric::kSummaC: return card.summac;
    case Metric::kNEPrec: return card.ne_prec;
    case Metric::kNumPrec: return card.num_prec;
  }
  return 0.0;
}

std::vector<double> RunResult::column(Metric m) const {
  std::vector<double> out;
  out.reserve(cards.size());
  for (const auto& c : cards) out.push_back(metric_value(c, m));
  return out;
}

// ---------------------------------------------------------------------------
// Significance

TTestResult t_test(const std::vector<double>& a, const std::vector<double>& b, double alpha) {
  if (a.size() < 2 || b.size() < 2) throw ValidationError("t_test needs at least two values per sample");
  check_alpha(alpha);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double ma = mean(a);
  const double mb = mean(b);
  const double df = na + nb - 2.0;
  const double pooled = (sum_sq_dev(a, ma) + sum_sq_dev(b, mb)) / df;
  const double se = std::sqrt(pooled * (1.0 / na + 1.0 / nb));
  double t = 0.0;
  if (se > 0.0) {
    t = (ma - mb) / se;
  } else if (ma != mb) {
    t = ma > mb ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
  }
  return decide(t, df, alpha);
}

TTestResult paired_t_test(const std::vector<double>& a, const std::vector<double>& b, double alpha) {
  if (a.size() != b.size()) throw ValidationError("paired_t_test needs samples of equal size");
  if (a.size() < 2) throw ValidationError("paired_t_test needs at least two pairs");
  check_alpha(alpha);
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  const double n = static_cast<double>(d.size());
  const double md = mean(d);
  const double se = std::sqrt(sum_sq_dev(d, md) / (n - 1.0) / n);
  double t = 0.0;
  if (se > 0.0) {
    t = md / se;
  } else if (md != 0.0) {
    t = md > 0.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
  }
  return decide(t, n - 1.0, alpha);
}

long best_extractive(const std::vector<RunResult>& results, Metric metric) {
  long best = -1;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].family != Family::kExtractive) continue;
    if (best < 0) {
      best = static_cast<long>(i);
      continue;
    }
    const RunResult& cur = results[static_cast<std::size_t>(best)];
    const double a = results[i].aggregate(metric);
    const double b = cur.aggregate(metric);
    if (a > b || (a == b && results[i].model_name < cur.model_name)) best = static_cast<long>(i);
  }
  return best;
}

void mark_significance(std::vector<RunResult>& results, double alpha, TestKind kind) {
  for (auto& r : results) r.significant.fill(false);
  for (Metric m : kAllMetrics) {
    const long best = best_extractive(results, m);
    if (best < 0) continue;
    const RunResult& baseline = results[static_cast<std::size_t>(best)];
    const std::vector<double> base_column = baseline.column(m);
    for (auto& r : results) {
      if (r.family == Family::kExtractive) continue;
      if (!(r.aggregate(m) > baseline.aggregate(m))) continue;
      if (r.cards.size() < 2 || base_column.size() < 2) continue;
      const TTestResult test = kind == TestKind::kPaired ? paired_t_test(r.column(m), base_column, alpha)
                                                         : t_test(r.column(m), base_column, alpha);
      r.significant[static_cast<std::size_t>(m)] = test.significant;
    }
  }
}

// ---------------------------------------------------------------------------
// Scoring

ScoreCard score_summary(const corpus::CorpusPair& pair, std::string_view summary, std::string_view model_name,
                        const EvalOptions& options) {
  static const consistency::LexicalOverlapNliScorer kLexical;
  static const consistency::HeuristicEntityExtractor kHeuristic;
  const consistency::NliScorer& nli = options.nli ? *options.nli : kLexical;
  const consistency::EntityExtractor& entities = options.entities ? *options.entities : kHeuristic;

  ScoreCard card;
  card.doc_id = pair.document.id;
  card.model_name = std::string(model_name);
  const auto cand = textproc::tokenize(summary, options.tokenize);
  const auto ref = textproc::tokenize(pair.gold.text, options.tokenize);
  card.r2 = metrics::rouge2(cand, ref);
  card.rl = options.rougeL_mode == metrics::RougeLMode::kWholeSummary
                ? metrics::rougeL(cand, ref)
                : metrics::rougeL_sentences(sentence_tokens(summary, options),
                                            sentence_tokens(pair.gold.text, options));
  card.meteor = metrics::meteor(cand, ref);
  card.bleu_percent = metrics::bleu(cand, ref);
  card.summac = consistency::summac_for(summary, pair.document.text, nli, options.abbreviations);
  card.num_prec = consistency::num_prec(summary, pair.document.text);
  card.ne_prec = consistency::ne_prec(summary, pair.document.text, entities);
  return card;
}

RunResult evaluate_corpus(const std::vector<corpus::CorpusPair>& pairs,
                          const std::map<std::string, GeneratedSummary>& summaries, std::string_view model_name,
                          Family family, const EvalOptions& options) {
  for (const auto& p : pairs) {
    if (summaries.find(p.document.id) == summaries.end()) {
      throw ValidationError("model '" + std::string(model_name) + "' has no summary for document '" +
                            p.document.id + "'");
    }
  }
  RunResult result;
  result.model_name = std::string(model_name);
  result.family = family;
  result.cards.resize(pairs.size());

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex error_mu;
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t i = next++; i < pairs.size(); i = next++) {
      try {
        const auto& summary = summaries.at(pairs[i].document.id);
        result.cards[i] = score_summary(pairs[i], summary.text, model_name, options);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
      const std::size_t finished = ++done;
      if (options.progress) {
        std::lock_guard<std::mutex> lock(error_mu);
        options.progress(finished, pairs.size());
      }
    }
  };
  const std::size_t n_workers = std::clamp<std::size_t>(options.workers, 1, std::max<std::size_t>(pairs.size(), 1));
  std::vector<std::thread> threads;
  for (std::size_t k = 1; k < n_workers; ++k) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);

  compute_aggregates(result);
  return result;
}

void compute_aggregates(RunResult& result) {
  result.aggregates.fill(0.0);
  if (result.cards.empty()) return;
  for (Metric m : kAllMetrics) {
    double sum = 0.0;
    for (const auto& c : result.cards) sum += metric_value(c, m);
    result.aggregates[static_cast<std::size_t>(m)] = sum / static_cast<double>(result.cards.size());
  }
}

// ---------------------------------------------------------------------------
// Persistence

void save_cards(const std::filesystem::path& path, const std::vector<RunResult>& results) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  for (const auto& r : results) {
    for (const auto& c : r.cards) out << card_to_json(c).dump() << '\n';
  }
}

std::vector<RunResult> load_cards(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read score cards: " + path.string());
  std::vector<RunResult> results;
  std::map<std::string, std::size_t> index;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ScoreCard card;
    try {
      card = card_from_json(json::parse(line));
    } catch (const json::exception& e) {
      throw InputError(path.filename().string() + ":" + std::to_string(line_no) + ": bad score card (" + e.what() + ")");
    }
    auto [it, inserted] = index.emplace(card.model_name, results.size());
    if (inserted) {
      results.emplace_back();
      results.back().model_name = card.model_name;
    }
    results[it->second].cards.push_back(std::move(card));
  }
  for (auto& r : results) compute_aggregates(r);
  return results;
}

void save_aggregates(const std::filesystem::path& path, const std::vector<RunResult>& results) {
  json models = json::array();
  for (const auto& r : results) {
    json entry;
    entry["model_name"] = r.model_name;
    entry["family"] = family_name(r.family);
    entry["n_docs"] = r.cards.size();
    json agg;
    json sig;
    for (Metric m : kAllMetrics) {
      agg[std::string(metric_key(m))] = r.aggregate(m);
      sig[std::string(metric_key(m))] = r.is_significant(m);
    }
    entry["aggregates"] = std::move(agg);
    entry["significant"] = std::move(sig);
    models.push_back(std::move(entry));
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << json{{"models", models}}.dump(2) << '\n';
}

std::map<std::string, Family> load_families(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  std::map<std::string, Family> out;
  try {
    const json doc = json::parse(in);
    for (const auto& m : doc.at("models")) {
      out[m.at("model_name").get<std::string>()] = parse_family(m.at("family").get<std::string>());
    }
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": malformed aggregates (" + e.what() + ")");
  }
  return out;
}

}  // namespace legalsum::evalrunner
