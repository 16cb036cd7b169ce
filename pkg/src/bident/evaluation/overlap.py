"""Cross-lingual overlap of extraction runs over a parallel corpus.

Identity is the source instance id, which parallel corpora share across
languages; text equality across languages would be meaningless.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass


@dataclass
class OverlapReport:
    languages: list
    unique_count: int
    counts_at_least: dict  # k -> number of ids extracted in >= k languages
    unique_by_text: int | None = None

    def as_dict(self) -> dict:
        return {
            "languages": self.languages,
            "unique_count": self.unique_count,
            "counts_at_least": {str(k): v for k, v in self.counts_at_least.items()},
            "unique_by_text": self.unique_by_text,
        }


def overlap(runs: dict) -> OverlapReport:
    """Overlap report for {language: [ExtractionRecord, ...]} runs."""
    memberships = Counter()
    texts = set()
    for language, records in runs.items():
        ids = [r.source_id for r in records]
        if len(ids) != len(set(ids)):
            dupes = [i for i, c in Counter(ids).items() if c > 1]
            raise ValueError(f"duplicate source ids in run {language!r}: "
                             f"{sorted(dupes)[:5]}")
        memberships.update(set(ids))
        texts.update((r.s1, r.s2) for r in records)
    n_langs = len(runs)
    counts_at_least = {
        k: sum(1 for c in memberships.values() if c >= k)
        for k in range(1, n_langs + 1)
    }
    return OverlapReport(
        languages=sorted(runs),
        unique_count=len(memberships),
        counts_at_least=counts_at_least,
        unique_by_text=len(texts),
    )
