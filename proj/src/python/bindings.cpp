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

// Python bindings for the scoring and text-processing core.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "legalsum/chunker.hpp"
#include "legalsum/cli.hpp"
#include "legalsum/consistency.hpp"
#include "legalsum/corpus.hpp"
#include "legalsum/error.hpp"
#include "legalsum/evalrunner.hpp"
#include "legalsum/extractive.hpp"
#include "legalsum/metrics.hpp"
#include "legalsum/textproc.hpp"

namespace py = pybind11;
using namespace legalsum;

namespace {

textproc::TokenSeq toks(const std::string& text, bool stem) {
  textproc::TokenizeOptions opts;
  opts.stem = stem;
  return textproc::tokenize(text, opts);
}

py::tuple prf(const metrics::PRF& p) { return py::make_tuple(p.precision, p.recall, p.f1); }

py::dict flag_dict(const consistency::AuditFlag& f, const std::string& summary) {
  py::dict d;
  d["kind"] = std::string(consistency::flag_kind_name(f.kind));
  d["start"] = f.span.begin;
  d["end"] = f.span.end;
  d["text"] = summary.substr(f.span.begin, f.span.size());
  d["detail"] = f.detail;
  d["severity"] = f.severity;
  return d;
}

}  // namespace

PYBIND11_MODULE(_legalsum, m) {
  m.doc() = "Legal case summarization evaluation core";

  static py::exception<Error> base(m, "LegalsumError", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<BackendError>(m, "BackendError", base.ptr());
  py::register_exception<ExternalServiceError>(m, "ExternalServiceError", base.ptr());

  m.def("tokenize", [](const std::string& text, bool stem) { return toks(text, stem).tokens; }, py::arg("text"),
        py::arg("stem") = false);
  m.def("word_count", [](const std::string& text) { return textproc::word_count(text); });
  m.def("split_sentences", [](const std::string& text) { return textproc::split_sentences(text).sentences; });

  m.def("rouge2", [](const std::string& c, const std::string& r, bool stem) {
    return prf(metrics::rouge2(toks(c, stem), toks(r, stem)));
  }, py::arg("candidate"), py::arg("reference"), py::arg("stem") = false, "(precision, recall, f1)");
  m.def("rougeL", [](const std::string& c, const std::string& r, bool stem) {
    return prf(metrics::rougeL(toks(c, stem), toks(r, stem)));
  }, py::arg("candidate"), py::arg("reference"), py::arg("stem") = false, "(precision, recall, f1)");
  m.def("bleu", [](const std::string& c, const std::string& r) { return metrics::bleu(toks(c, false), toks(r, false)); },
        py::arg("candidate"), py::arg("reference"), "BLEU in percent");
  m.def("meteor", [](const std::string& c, const std::string& r) { return metrics::meteor(toks(c, false), toks(r, false)); },
        py::arg("candidate"), py::arg("reference"));

  m.def("summac_score", [](const std::vector<std::vector<double>>& rows) {
    return consistency::summac_score(consistency::NliMatrix::from_rows(rows));
  }, py::arg("matrix"), "Mean over columns (summary sentences) of the best row (document sentence) score");
  m.def("summac", [](const std::string& summary, const std::string& document) {
    return consistency::summac_for(summary, document, consistency::LexicalOverlapNliScorer());
  }, py::arg("summary"), py::arg("document"), "SummaC with the offline lexical-overlap scorer");
  m.def("extract_numbers", [](const std::string& text) { return consistency::extract_numbers(text); });
  m.def("extract_entities", [](const std::string& text) { return consistency::extract_entities(text); });
  m.def("num_prec", [](const std::string& s, const std::string& d) { return consistency::num_prec(s, d); },
        py::arg("summary"), py::arg("document"));
  m.def("ne_prec", [](const std::string& s, const std::string& d) { return consistency::ne_prec(s, d); },
        py::arg("summary"), py::arg("document"));
  m.def("detect_merge_artifacts", [](const std::string& summary) {
    py::list out;
    for (const auto& f : consistency::detect_merge_artifacts(summary)) out.append(flag_dict(f, summary));
    return out;
  });
  m.def("audit_summary", [](const std::string& summary, const std::string& document, double threshold) {
    consistency::AuditOptions opts;
    opts.nli_threshold = threshold;
    py::list out;
    for (const auto& f : consistency::audit_summary(summary, document, opts)) out.append(flag_dict(f, summary));
    return out;
  }, py::arg("summary"), py::arg("document"), py::arg("nli_threshold") = 0.5);

  m.def("target_summary_length", [](std::size_t doc_words, std::size_t gold_words, std::size_t chunk_len,
                                    std::size_t chunk_words) {
    chunker::BudgetParams p;
    p.doc_words = doc_words;
    p.gold_words = gold_words;
    p.chunk_words = chunk_words;
    return chunker::target_summary_length(p, chunk_len);
  }, py::arg("doc_words"), py::arg("gold_words"), py::arg("chunk_len"), py::arg("chunk_words") = 1024);
  m.def("chunk_document", [](const std::string& text, std::size_t gold_words, std::size_t chunk_words,
                             const std::string& mode) {
    const corpus::CaseDocument doc{"doc", text, textproc::word_count(text)};
    chunker::BudgetParams p;
    p.doc_words = doc.word_count;
    p.gold_words = gold_words;
    p.chunk_words = chunk_words;
    py::list out;
    for (const auto& c : chunker::chunk_document(doc, p, chunker::parse_chunk_mode(mode)).chunks) {
      py::dict d;
      d["text"] = c.text;
      d["word_count"] = c.word_count;
      d["target_summary_words"] = c.target_summary_words;
      d["start"] = c.span.begin;
      d["end"] = c.span.end;
      out.append(d);
    }
    return out;
  }, py::arg("text"), py::arg("gold_words"), py::arg("chunk_words") = 1024, py::arg("mode") = "hard");

  m.def("extract_summary", [](const std::string& text, std::size_t budget_words) {
    const corpus::CaseDocument doc{"doc", text, textproc::word_count(text)};
    return extractive::extract_summary(doc, budget_words).text;
  }, py::arg("text"), py::arg("budget_words"));

  m.def("t_test", [](const std::vector<double>& a, const std::vector<double>& b, double alpha, bool paired) {
    const auto r = paired ? evalrunner::paired_t_test(a, b, alpha) : evalrunner::t_test(a, b, alpha);
    py::dict d;
    d["t"] = r.t;
    d["df"] = r.df;
    d["p_value"] = r.p_value;
    d["significant"] = r.significant;
    return d;
  }, py::arg("a"), py::arg("b"), py::arg("alpha") = 0.05, py::arg("paired") = false);

  m.def("corpus_stats", [](const std::filesystem::path& path, const std::string& split) {
    const auto stats = corpus::corpus_stats(corpus::load_corpus(path, corpus::parse_split(split)));
    py::dict d;
    d["n_docs"] = stats.n_docs;
    d["avg_doc_words"] = stats.avg_doc_words;
    d["avg_summary_words"] = stats.avg_summary_words;
    return d;
  }, py::arg("path"), py::arg("split") = "test");

  m.def("run_cli", [](std::vector<std::string> args) {
    args.insert(args.begin(), "legalsum");
    std::ostringstream out, err;
    int code;
    {
      py::gil_scoped_release release;
      code = cli::run_command(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Run a CLI subcommand in-process; returns (exit_code, stdout, stderr)");
}
