"""Paraphrase extraction from NLI data via bidirectional entailment.

Pipeline: keep the gold-entailment pairs, reverse them, score the
reversed direction with an NLI model, and keep the pairs whose reversed
direction is also judged entailment. Emitted pairs are in the reversed
orientation (hypothesis, premise). Keeping reversed-neutral instead
yields hard negatives.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from sklearn.base import BaseEstimator

from .records import DatasetSplit, NLIRecord, check_split
from .scoring import LabelDistribution, Scorer


class RuleError(ValueError):
    """Decision rule outside its valid domain."""


@dataclass(frozen=True)
class DecisionRule:
    """argmax, or an inclusive probability threshold for the positive class."""

    kind: str
    t: float | None = None

    def __post_init__(self):
        if self.kind not in ("argmax", "threshold"):
            raise RuleError(f"unknown rule kind {self.kind!r}")
        if self.kind == "threshold" and self.t is None:
            raise RuleError("threshold rule requires t")

    def validate(self, n_classes: int) -> None:
        if self.kind == "threshold":
            uniform = 1.0 / n_classes
            if not uniform < self.t <= 1.0:
                raise RuleError(
                    f"threshold {self.t} outside ({uniform:.4g}, 1] for "
                    f"{n_classes} classes")

    def __str__(self) -> str:
        return "argmax" if self.kind == "argmax" else f"t:{self.t:g}"


ARGMAX = DecisionRule("argmax")


def parse_rule(text: str) -> DecisionRule:
    """Parse a CLI-style rule: 'argmax' or 't:0.75'."""
    if text == "argmax":
        return ARGMAX
    kind, sep, value = text.partition(":")
    if kind == "t" and sep:
        try:
            return DecisionRule("threshold", float(value))
        except ValueError:
            pass
    raise RuleError(f"bad rule {text!r}; expected 'argmax' or 't:<prob>'")


def decide(dist: LabelDistribution, rule: DecisionRule, positive_class: str) -> bool:
    """Convert a distribution into an accept/reject verdict.

    argmax accepts only a strict maximum (ties reject); threshold accepts
    on p(positive) >= t.
    """
    p = dist.prob(positive_class)
    if rule.kind == "argmax":
        return dist.argmax() == positive_class
    return p >= rule.t


def select_entailed(split) -> list:
    """Gold-entailment records, in input order."""
    split = check_split(split, NLIRecord)
    return [r for r in split.records if r.label == "entailment"]


@dataclass(frozen=True)
class ExtractionRecord:
    """One emitted paraphrase pair, oriented (hypothesis, premise)."""

    source_id: str
    s1: str
    s2: str
    positive_probability: float
    rule: str
    language: str
    trivial: bool = False

    def as_dict(self) -> dict:
        return {
            "source_id": self.source_id,
            "s1": self.s1,
            "s2": self.s2,
            "positive_probability": self.positive_probability,
            "rule": self.rule,
            "language": self.language,
            "trivial": self.trivial,
        }


@dataclass(frozen=True)
class NegativeRecord:
    """A non-extracted entailment pair with its reversed-direction class."""

    source_id: str
    s1: str
    s2: str
    predicted_class: str | None
    positive_probability: float

    def as_dict(self) -> dict:
        return {
            "source_id": self.source_id,
            "s1": self.s1,
            "s2": self.s2,
            "predicted_class": self.predicted_class,
            "positive_probability": self.positive_probability,
        }


@dataclass
class ExtractionResult:
    records: list
    negatives: list
    counts: dict = field(default_factory=dict)


def extract(split, scorer: Scorer, rule: DecisionRule = ARGMAX,
            keep: str = "entailment", workers: int = 1,
            collect_negatives: bool = False) -> ExtractionResult:
    """Run the full extraction pipeline over one dataset split.

    ``keep`` selects which reversed-direction prediction admits a pair:
    entailment yields paraphrases, neutral yields hard negatives (argmax
    rule only). Output follows input order; reruns with a deterministic
    backend are byte-identical.
    """
    if scorer.descriptor.task != "nli-3way":
        raise RuleError(f"extraction needs an nli-3way scorer, got "
                        f"{scorer.descriptor.task!r}")
    if keep not in ("entailment", "neutral"):
        raise RuleError(f"keep must be entailment or neutral, got {keep!r}")
    if keep == "neutral" and rule.kind != "argmax":
        raise RuleError("keep=neutral supports only the argmax rule")
    rule.validate(3)

    split = check_split(split, NLIRecord)
    entailed = select_entailed(split)
    records: list = []
    negatives: list = []
    if entailed:
        pairs = [(r.premise, r.hypothesis) for r in entailed]
        dists = scorer.score_reversed(pairs, workers=workers)
        for record, dist in zip(entailed, dists):
            if decide(dist, rule, keep):
                records.append(ExtractionRecord(
                    source_id=record.id,
                    s1=record.hypothesis,
                    s2=record.premise,
                    positive_probability=dist.prob(keep),
                    rule=str(rule),
                    language=record.language,
                    trivial=record.premise == record.hypothesis,
                ))
            elif collect_negatives:
                negatives.append(NegativeRecord(
                    source_id=record.id,
                    s1=record.hypothesis,
                    s2=record.premise,
                    predicted_class=dist.argmax(),
                    positive_probability=dist.prob(keep),
                ))
    counts = {
        "input": len(split.records),
        "gold_entailment": len(entailed),
        "scored": len(entailed),
        "extracted": len(records),
        "trivial": sum(r.trivial for r in records),
        "negatives": len(negatives),
    }
    return ExtractionResult(records=records, negatives=negatives, counts=counts)


def write_extraction_jsonl(records, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record.as_dict(), ensure_ascii=False, sort_keys=True))
            fh.write("\n")


def load_extraction_jsonl(path) -> list:
    records = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            obj = json.loads(line)
            records.append(ExtractionRecord(
                source_id=str(obj["source_id"]),
                s1=obj["s1"],
                s2=obj["s2"],
                positive_probability=float(obj["positive_probability"]),
                rule=obj.get("rule", "argmax"),
                language=obj.get("language", "en"),
                trivial=bool(obj.get("trivial", False)),
            ))
    return records


class ParaphraseExtractor(BaseEstimator):
    """Estimator-style wrapper: ``transform`` maps an NLI split to
    extraction records. ``fit`` is a no-op kept for pipeline compatibility."""

    def __init__(self, scorer=None, rule="argmax", keep="entailment", workers=1):
        self.scorer = scorer
        self.rule = rule
        self.keep = keep
        self.workers = workers

    def fit(self, X=None, y=None):
        return self

    def transform(self, X) -> list:
        if self.scorer is None:
            raise ValueError("ParaphraseExtractor requires a scorer")
        rule = parse_rule(self.rule) if isinstance(self.rule, str) else self.rule
        return extract(X, self.scorer, rule=rule, keep=self.keep,
                       workers=self.workers).records
