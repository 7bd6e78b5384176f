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

"""Evaluation harness for legal case judgement summarization."""

from legalsum._legalsum import (
    BackendError,
    ExternalServiceError,
    InputError,
    LegalsumError,
    ValidationError,
    audit_summary,
    bleu,
    chunk_document,
    corpus_stats,
    detect_merge_artifacts,
    extract_entities,
    extract_numbers,
    extract_summary,
    meteor,
    ne_prec,
    num_prec,
    rouge2,
    rougeL,
    run_cli,
    split_sentences,
    summac,
    summac_score,
    t_test,
    target_summary_length,
    tokenize,
    word_count,
)

__all__ = [
    "BackendError",
    "ExternalServiceError",
    "InputError",
    "LegalsumError",
    "ValidationError",
    "audit_summary",
    "bleu",
    "chunk_document",
    "corpus_stats",
    "detect_merge_artifacts",
    "extract_entities",
    "extract_numbers",
    "extract_summary",
    "meteor",
    "ne_prec",
    "num_prec",
    "rouge2",
    "rougeL",
    "run_cli",
    "split_sentences",
    "summac",
    "summac_score",
    "t_test",
    "target_summary_length",
    "tokenize",
    "word_count",
]

__version__ = "0.1.0"
