# Copyright 2026 The Legalsum Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


import json
import math
import os
import pathlib

import pytest

import legalsum

DATA_DIR = pathlib.Path(os.environ.get("LEGALSUM_DATA_DIR", pathlib.Path(__file__).resolve().parents[2] / "data"))


def test_tokenize_and_count():
    assert legalsum.tokenize("The Appellant, Mr. Rao!") == ["the", "appellant", "mr", "rao"]
    assert legalsum.word_count("one two  three") == 3


def test_identity_scores():
    text = "The appeal is dismissed with costs of Rs. 5,000."
    for fn in (legalsum.rouge2, legalsum.rougeL):
        p, r, f = fn(text, text)
        assert f == pytest.approx(1.0)
    assert legalsum.bleu(text, text) == pytest.approx(100.0)
    assert legalsum.meteor(text, text) > 0.99


def test_rouge2_hand_computed():
    # Bigrams: cand {a b, b c}, ref {a b, b d}; one overlap.
    p, r, f = legalsum.rouge2("a b c", "a b d")
    assert (p, r, f) == pytest.approx((0.5, 0.5, 0.5))


def test_summac_aggregation():
    assert legalsum.summac_score([[0.2, 0.9], [0.6, 0.1]]) == pytest.approx((0.6 + 0.9) / 2)
    with pytest.raises(legalsum.ValidationError):
        legalsum.summac_score([[1.5]])


def test_precision_metrics():
    doc = "On 12 March 2001 the High Court of Delhi awarded Rs. 25,000."
    assert legalsum.num_prec("The court awarded 25000.", doc) == pytest.approx(1.0)
    assert legalsum.num_prec("The court awarded 30000.", doc) == pytest.approx(0.0)
    assert legalsum.num_prec("No figures here.", doc) == pytest.approx(1.0)


def test_merge_artifacts():
    flags = legalsum.detect_merge_artifacts("The appeal failed.theThe court agreed.")
    assert flags and flags[0]["kind"] == "merge_artifact"
    assert "theThe" in flags[0]["text"]
    assert legalsum.detect_merge_artifacts("Mr. McDonald appeared.") == []


def test_budget_and_chunks():
    assert legalsum.target_summary_length(2000, 200, 1024) == 102
    text = " ".join(f"w{i}" for i in range(2500))
    chunks = legalsum.chunk_document(text, 250, 1024)
    assert [c["word_count"] for c in chunks] == [1024, 1024, 452]
    assert " ".join(c["text"] for c in chunks).split() == text.split()


def test_t_test_matches_closed_form():
    a = [0.5, 0.6, 0.55, 0.65]
    b = [0.3, 0.35, 0.4, 0.33]
    res = legalsum.t_test(a, b)
    ma, mb = sum(a) / 4, sum(b) / 4
    va = sum((x - ma) ** 2 for x in a) / 3
    vb = sum((x - mb) ** 2 for x in b) / 3
    t = (ma - mb) / math.sqrt(((va + vb) / 2) * (0.5))
    assert res["t"] == pytest.approx(t)
    assert res["df"] == pytest.approx(6)
    assert res["significant"]


def test_corpus_stats_fixture():
    stats = legalsum.corpus_stats(DATA_DIR / "toy_corpus.jsonl")
    assert stats["n_docs"] == 3
    assert stats["avg_doc_words"] == pytest.approx(211.67, abs=0.01)
    assert stats["avg_summary_words"] == pytest.approx(59.67, abs=0.01)


def test_extractive_within_budget():
    record = json.loads((DATA_DIR / "toy_corpus.jsonl").read_text().splitlines()[0])
    summary = legalsum.extract_summary(record["text"], 40)
    assert 0 < legalsum.word_count(summary) <= 40
    # Sentences are copied verbatim up to whitespace normalization.
    source = " ".join(record["text"].split())
    assert all(s in source for s in legalsum.split_sentences(summary))


def test_cli_usage_and_stats():
    code, _, _ = legalsum.run_cli(["no-such-command"])
    assert code == 2
    code, out, _ = legalsum.run_cli(["stats", "--corpus", str(DATA_DIR / "toy_corpus.jsonl")])
    assert code == 0
    assert "3" in out


def test_missing_corpus_raises():
    with pytest.raises(legalsum.InputError):
        legalsum.corpus_stats(DATA_DIR / "does_not_exist.jsonl")
