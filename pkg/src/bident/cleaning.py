"""Cleaning of paraphrase-identification datasets.

Gold-paraphrase pairs are re-scored in the reversed direction with a
2-way paraphrase model; pairs judged non-paraphrase in reverse are
asymmetric, hence false paraphrases, and get removed. Gold
non-paraphrase records pass through untouched and unscored.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from sklearn.base import BaseEstimator

from .extraction import ARGMAX, DecisionRule, RuleError, decide, parse_rule
from .records import ParaRecord, check_split
from .scoring import Scorer

POSITIVE = "non-paraphrase"


@dataclass(frozen=True)
class CleaningRecord:
    source_id: str
    s1: str
    s2: str
    non_paraphrase_probability: float
    distribution: dict
    rule: str
    verdict: str

    def as_dict(self) -> dict:
        return {
            "source_id": self.source_id,
            "s1": self.s1,
            "s2": self.s2,
            "non_paraphrase_probability": self.non_paraphrase_probability,
            "distribution": self.distribution,
            "rule": self.rule,
            "verdict": self.verdict,
        }


@dataclass
class CleaningResult:
    cleaned: list
    removed: list
    counts: dict = field(default_factory=dict)


def clean(split, scorer: Scorer, rule: DecisionRule = ARGMAX,
          both_directions: bool = False, workers: int = 1) -> CleaningResult:
    """One cleaning pass over a paraphrase-identification split.

    With ``both_directions`` the forward direction is model-scored too and
    a pair is removed if either direction fails.
    """
    if scorer.descriptor.task != "paraphrase-2way":
        raise RuleError(f"cleaning needs a paraphrase-2way scorer, got "
                        f"{scorer.descriptor.task!r}")
    rule.validate(2)

    split = check_split(split, ParaRecord)
    gold_paraphrases = [r for r in split.records if r.label == "paraphrase"]
    reversed_dists = {}
    forward_dists = {}
    if gold_paraphrases:
        pairs = [(r.s1, r.s2) for r in gold_paraphrases]
        for r, d in zip(gold_paraphrases, scorer.score_reversed(pairs, workers=workers)):
            reversed_dists[r.id] = d
        if both_directions:
            for r, d in zip(gold_paraphrases, scorer.score_batch(pairs, workers=workers)):
                forward_dists[r.id] = d

    cleaned: list = []
    removed: list = []
    for record in split.records:
        if record.label != "paraphrase":
            cleaned.append(record)
            continue
        dist = reversed_dists[record.id]
        asymmetric = decide(dist, rule, POSITIVE)
        if both_directions and not asymmetric:
            asymmetric = decide(forward_dists[record.id], rule, POSITIVE)
        if asymmetric:
            removed.append(CleaningRecord(
                source_id=record.id,
                s1=record.s1,
                s2=record.s2,
                non_paraphrase_probability=dist.prob(POSITIVE),
                distribution=dict(dist.probabilities),
                rule=str(rule),
                verdict="removed",
            ))
        else:
            cleaned.append(record)
    counts = {
        "input": len(split.records),
        "gold_paraphrase": len(gold_paraphrases),
        "scored": len(gold_paraphrases),
        "kept": len(cleaned),
        "removed": len(removed),
    }
    return CleaningResult(cleaned=cleaned, removed=removed, counts=counts)


class ParaphraseCleaner(BaseEstimator):
    """Estimator-style wrapper: ``transform`` maps a paraphrase split to its
    cleaned record list; the removal audit is kept on ``last_result_``."""

    def __init__(self, scorer=None, rule="argmax", both_directions=False, workers=1):
        self.scorer = scorer
        self.rule = rule
        self.both_directions = both_directions
        self.workers = workers

    def fit(self, X=None, y=None):
        return self

    def transform(self, X) -> list:
        if self.scorer is None:
            raise ValueError("ParaphraseCleaner requires a scorer")
        rule = parse_rule(self.rule) if isinstance(self.rule, str) else self.rule
        result = clean(X, self.scorer, rule=rule,
                       both_directions=self.both_directions, workers=self.workers)
        self.last_result_ = result
        return result.cleaned
