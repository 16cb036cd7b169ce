"""Uniform scoring interface over interchangeable backends.

A scorer maps ordered sequence pairs to label distributions. Batching and
worker sharding are throughput knobs only: outputs are always reassembled
by input index, so results are invariant to both.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

NLI_CLASSES = ("entailment", "neutral", "contradiction")
PARA_CLASSES = ("paraphrase", "non-paraphrase")

TASK_CLASSES = {
    "nli-3way": NLI_CLASSES,
    "paraphrase-2way": PARA_CLASSES,
}

SUM_TOLERANCE = 1e-4

SequencePair = tuple[str, str]


class ScorerError(RuntimeError):
    """Backend failure. ``first_unscored_index`` locates the earliest input
    pair for which no distribution was produced."""

    def __init__(self, message: str, first_unscored_index: int | None = None):
        super().__init__(message)
        self.first_unscored_index = first_unscored_index


class DistributionError(ScorerError):
    """A distribution failed validation (broken model export)."""


@dataclass(frozen=True)
class LabelDistribution:
    probabilities: dict

    def prob(self, class_name: str) -> float:
        if class_name not in self.probabilities:
            raise KeyError(f"class {class_name!r} not in distribution "
                           f"{sorted(self.probabilities)}")
        return self.probabilities[class_name]

    def argmax(self) -> str | None:
        """Strictly most probable class, or None on a tie for the top."""
        best = max(self.probabilities.values())
        winners = [c for c, p in self.probabilities.items() if p == best]
        return winners[0] if len(winners) == 1 else None

    def validate(self, classes: tuple) -> None:
        if set(self.probabilities) != set(classes):
            raise DistributionError(
                f"class set {sorted(self.probabilities)} does not match task "
                f"classes {sorted(classes)}")
        for c, p in self.probabilities.items():
            if not 0.0 <= p <= 1.0:
                raise DistributionError(f"probability of {c!r} out of [0,1]: {p}")
        total = sum(self.probabilities.values())
        if abs(total - 1.0) > SUM_TOLERANCE:
            raise DistributionError(f"probabilities sum to {total}, not 1 "
                                    f"within {SUM_TOLERANCE}")

    def renormalized(self) -> "LabelDistribution":
        total = sum(self.probabilities.values())
        if total <= 0:
            raise DistributionError("cannot renormalize an all-zero distribution")
        return LabelDistribution({c: p / total for c, p in self.probabilities.items()})


@dataclass(frozen=True)
class ScorerDescriptor:
    task: str
    backend: str
    model_id: str = ""
    max_sequence_length: int | None = None

    def __post_init__(self):
        if self.task not in TASK_CLASSES:
            raise ValueError(f"unknown task {self.task!r}")

    @property
    def classes(self) -> tuple:
        return TASK_CLASSES[self.task]

    def as_dict(self) -> dict:
        return {
            "task": self.task,
            "backend": self.backend,
            "model_id": self.model_id,
            "max_sequence_length": self.max_sequence_length,
        }


class Scorer(ABC):
    """Base backend: handles batching, sharding, alignment and validation.

    Subclasses implement ``_score`` for one batch. Instances are safe for
    concurrent ``score_batch`` calls as long as ``_score`` is.
    """

    batch_size = 32

    def __init__(self, descriptor: ScorerDescriptor, renormalize: bool = False):
        self.descriptor = descriptor
        self.renormalize = renormalize

    @abstractmethod
    def _score(self, pairs: list) -> list:
        """Score one batch of (s1, s2) pairs; returns raw class->prob dicts."""

    def score_batch(self, pairs: list, workers: int = 1) -> list:
        if not pairs:
            raise ValueError("pairs must be non-empty")
        batches = [
            (start, pairs[start:start + self.batch_size])
            for start in range(0, len(pairs), self.batch_size)
        ]
        results: dict[int, list] = {}
        if workers <= 1 or len(batches) == 1:
            for start, batch in batches:
                results[start] = self._score_checked(start, batch)
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                futures = {
                    start: pool.submit(self._score_checked, start, batch)
                    for start, batch in batches
                }
                failures = []
                for start, future in futures.items():
                    try:
                        results[start] = future.result()
                    except ScorerError as exc:
                        failures.append((start, exc))
                if failures:
                    start, exc = min(failures, key=lambda f: f[0])
                    raise ScorerError(
                        str(exc),
                        first_unscored_index=exc.first_unscored_index
                        if exc.first_unscored_index is not None else start,
                    ) from exc
        out = []
        for start, _ in sorted(batches, key=lambda b: b[0]):
            out.extend(results[start])
        return out

    def score_reversed(self, pairs: list, workers: int = 1) -> list:
        """Score each pair with its elements swapped (one shared path)."""
        return self.score_batch([(s2, s1) for s1, s2 in pairs], workers=workers)

    def _score_checked(self, start: int, batch: list) -> list:
        try:
            raw = self._score(batch)
        except ScorerError as exc:
            if exc.first_unscored_index is None:
                exc.first_unscored_index = start
            raise
        if len(raw) != len(batch):
            raise ScorerError(
                f"backend returned {len(raw)} distributions for {len(batch)} pairs",
                first_unscored_index=start)
        out = []
        for i, probs in enumerate(raw):
            dist = LabelDistribution(dict(probs))
            if self.renormalize:
                dist = dist.renormalized()
            try:
                dist.validate(self.descriptor.classes)
            except DistributionError as exc:
                exc.first_unscored_index = start + i
                raise
            out.append(dist)
        return out
