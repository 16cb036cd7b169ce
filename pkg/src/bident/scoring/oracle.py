"""Deterministic oracle backend for tests and synthetic corpora.

Two modes: an explicit lookup table keyed by (s1, s2), and a token
subsequence heuristic. The instance counts every scored pair so tests can
assert how often a pipeline actually called the model.
"""
from __future__ import annotations

import json
from pathlib import Path

from .base import (
    LabelDistribution,
    Scorer,
    ScorerDescriptor,
    ScorerError,
)


def _is_token_subsequence(needle: list, haystack: list) -> bool:
    it = iter(haystack)
    return all(tok in it for tok in needle)


class StaticOracleScorer(Scorer):
    def __init__(self, descriptor: ScorerDescriptor, table: dict | None = None,
                 renormalize: bool = False):
        super().__init__(descriptor, renormalize=renormalize)
        self.table = table
        self.calls = 0

    def _score(self, pairs):
        out = []
        for s1, s2 in pairs:
            self.calls += 1
            if self.table is not None:
                try:
                    out.append(dict(self.table[(s1, s2)]))
                except KeyError:
                    raise ScorerError(f"oracle table has no entry for ({s1!r}, {s2!r})")
            else:
                out.append(self._subsequence_rule(s1, s2))
        return out

    def _subsequence_rule(self, s1: str, s2: str) -> dict:
        t1, t2 = s1.split(), s2.split()
        if self.descriptor.task == "nli-3way":
            if _is_token_subsequence(t2, t1):
                return {"entailment": 0.9, "neutral": 0.05, "contradiction": 0.05}
            return {"entailment": 0.05, "neutral": 0.9, "contradiction": 0.05}
        # 2-way: paraphrase only when entailment holds in both directions
        if _is_token_subsequence(t2, t1) and _is_token_subsequence(t1, t2):
            return {"paraphrase": 0.9, "non-paraphrase": 0.1}
        return {"paraphrase": 0.1, "non-paraphrase": 0.9}


def load_oracle_table(path) -> tuple:
    """Read a JSONL oracle table of {s1, s2, distribution} rows.

    A leading row without s1/s2 is metadata (may declare the table's task).
    Returns (table, metadata).
    """
    table = {}
    meta: dict = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            obj = json.loads(line)
            if "s1" not in obj:
                meta.update(obj)
                continue
            table[(obj["s1"], obj["s2"])] = dict(obj["distribution"])
    return table, meta


def oracle_scorer(task: str, source: str, renormalize: bool = False) -> StaticOracleScorer:
    """Build an oracle scorer from a CLI-style source: 'subseq' or a table path."""
    if source == "subseq":
        descriptor = ScorerDescriptor(task=task, backend="static-oracle",
                                      model_id="subseq")
        return StaticOracleScorer(descriptor, table=None, renormalize=renormalize)
    path = Path(source)
    if not path.is_file():
        raise ScorerError(f"oracle table not found: {path}")
    table, meta = load_oracle_table(path)
    if meta.get("task") not in (None, task):
        raise ScorerError(f"oracle table declares task {meta['task']!r}, "
                          f"incompatible with required task {task!r}")
    descriptor = ScorerDescriptor(task=task, backend="static-oracle",
                                  model_id=str(path))
    return StaticOracleScorer(descriptor, table=table, renormalize=renormalize)


__all__ = ["StaticOracleScorer", "load_oracle_table", "oracle_scorer",
           "LabelDistribution"]
