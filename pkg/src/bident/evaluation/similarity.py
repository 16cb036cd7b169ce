"""Surface-similarity diagnostics for extracted pairs."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def levenshtein(s1: str, s2: str) -> int:
    """Character-level edit distance (insert/delete/substitute), two-row DP."""
    if len(s1) < len(s2):
        s1, s2 = s2, s1
    if not s2:
        return len(s1)
    previous = list(range(len(s2) + 1))
    for i, c1 in enumerate(s1, start=1):
        current = [i]
        for j, c2 in enumerate(s2, start=1):
            current.append(min(
                previous[j] + 1,
                current[j - 1] + 1,
                previous[j - 1] + (c1 != c2),
            ))
        previous = current
    return previous[-1]


def normalized_edit_distance(s1: str, s2: str) -> float:
    """Levenshtein divided by the longer string's length; 0 for two empties."""
    longest = max(len(s1), len(s2))
    if longest == 0:
        return 0.0
    return levenshtein(s1, s2) / longest


def token_length_ratio(s1: str, s2: str) -> float:
    """min/max of whitespace-token counts; 1 for two empties, 0 if one is empty."""
    n1, n2 = len(s1.split()), len(s2.split())
    if n1 == n2 == 0:
        return 1.0
    if min(n1, n2) == 0:
        return 0.0
    return min(n1, n2) / max(n1, n2)


@dataclass
class SimilarityStats:
    edit_distances: list
    length_ratios: list
    summary: dict

    def as_dict(self) -> dict:
        return {"summary": self.summary}


def _summarize(values) -> dict:
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        return {"count": 0, "mean": None, "median": None, "q1": None, "q3": None}
    q1, median, q3 = np.percentile(arr, [25, 50, 75])
    return {
        "count": int(arr.size),
        "mean": float(arr.mean()),
        "median": float(median),
        "q1": float(q1),
        "q3": float(q3),
    }


def similarity_stats(records) -> SimilarityStats:
    """Per-record normalized edit distance and token-length ratio, summarized.

    Accepts anything with s1/s2 attributes (extraction records, dataset
    records) or plain (s1, s2) tuples.
    """
    distances = []
    ratios = []
    for record in records:
        s1, s2 = (record if isinstance(record, tuple)
                  else (record.s1, record.s2))
        distances.append(normalized_edit_distance(s1, s2))
        ratios.append(token_length_ratio(s1, s2))
    return SimilarityStats(
        edit_distances=distances,
        length_ratios=ratios,
        summary={
            "normalized_edit_distance": _summarize(distances),
            "token_length_ratio": _summarize(ratios),
        },
    )
