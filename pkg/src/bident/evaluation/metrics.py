"""Binary precision/recall for a designated positive class.

Multi-class gold/predicted label lists are collapsed one-vs-rest onto
the positive class. A zero denominator makes a metric undefined (None),
which is distinct from 0 and rendered as an em-free dash in reports.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int = 0
    fp: int = 0
    fn: int = 0
    tn: int = 0

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn

    def as_dict(self) -> dict:
        return {"tp": self.tp, "fp": self.fp, "fn": self.fn, "tn": self.tn}


@dataclass(frozen=True)
class EvalMetrics:
    precision: float | None
    recall: float | None
    positive_class: str

    def as_dict(self) -> dict:
        return {
            "precision": self.precision,
            "recall": self.recall,
            "positive_class": self.positive_class,
        }


def confusion(gold: list, predicted: list, positive_class: str) -> ConfusionCounts:
    if len(gold) != len(predicted):
        raise ValueError(f"gold has {len(gold)} labels, predicted has "
                         f"{len(predicted)}")
    if not gold:
        raise ValueError("label lists must be non-empty")
    tp = fp = fn = tn = 0
    for g, p in zip(gold, predicted):
        if g == positive_class:
            if p == positive_class:
                tp += 1
            else:
                fn += 1
        else:
            if p == positive_class:
                fp += 1
            else:
                tn += 1
    return ConfusionCounts(tp=tp, fp=fp, fn=fn, tn=tn)


def metrics(counts: ConfusionCounts, positive_class: str = "") -> EvalMetrics:
    precision = counts.tp / (counts.tp + counts.fp) if counts.tp + counts.fp else None
    recall = counts.tp / (counts.tp + counts.fn) if counts.tp + counts.fn else None
    return EvalMetrics(precision=precision, recall=recall,
                       positive_class=positive_class)
