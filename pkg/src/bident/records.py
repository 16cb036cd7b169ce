"""Canonical record model shared by every pipeline stage.

All loaders normalize into these types; everything downstream (scoring,
extraction, cleaning, evaluation) only ever sees them.
"""
from __future__ import annotations

import json
import unicodedata
from dataclasses import dataclass, field
from typing import Iterable, Union

NLI_LABELS = ("entailment", "neutral", "contradiction")
PARA_LABELS = ("paraphrase", "non-paraphrase")


class RecordError(ValueError):
    """Malformed or invariant-violating record data."""


def normalize_text(text: str) -> str:
    """NFC-normalize and trim. No case folding."""
    return unicodedata.normalize("NFC", text).strip()


@dataclass(frozen=True)
class NLIRecord:
    id: str
    premise: str
    hypothesis: str
    label: str
    genre: str | None = None
    language: str = "en"

    def __post_init__(self):
        if not self.premise or not self.hypothesis:
            raise RecordError(f"record {self.id!r}: empty premise or hypothesis")
        if self.label not in NLI_LABELS:
            raise RecordError(f"record {self.id!r}: bad NLI label {self.label!r}")

    @property
    def s1(self) -> str:
        return self.premise

    @property
    def s2(self) -> str:
        return self.hypothesis


@dataclass(frozen=True)
class ParaRecord:
    id: str
    s1: str
    s2: str
    label: str
    language: str = "en"

    def __post_init__(self):
        if not self.s1 or not self.s2:
            raise RecordError(f"record {self.id!r}: empty s1 or s2")
        if self.label not in PARA_LABELS:
            raise RecordError(f"record {self.id!r}: bad paraphrase label {self.label!r}")


Record = Union[NLIRecord, ParaRecord]


@dataclass
class LoadStats:
    """Counters emitted on the diagnostics stream after a load."""

    read: int = 0
    kept: int = 0
    dropped_no_gold: int = 0
    skipped_malformed: int = 0
    duplicate_pairs: int = 0

    def as_dict(self) -> dict:
        return dict(vars(self))


@dataclass
class DatasetSplit:
    """An immutable-by-convention, ordered collection of records.

    Record order is the file order of the source, which keeps reruns
    byte-identical.
    """

    name: str
    records: list = field(default_factory=list)
    stats: LoadStats | None = None

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def ids(self) -> list[str]:
        return [r.id for r in self.records]


def check_split(split, record_type=None) -> DatasetSplit:
    """Validation helper: accept a DatasetSplit or a plain record list."""
    if not isinstance(split, DatasetSplit):
        split = DatasetSplit(name="adhoc", records=list(split))
    if record_type is not None:
        for r in split.records:
            if not isinstance(r, record_type):
                raise RecordError(
                    f"expected {record_type.__name__} records, got {type(r).__name__}"
                )
    seen = set()
    for r in split.records:
        if r.id in seen:
            raise RecordError(f"duplicate record id {r.id!r} within split {split.name!r}")
        seen.add(r.id)
    return split


def record_to_json(record: Record) -> dict:
    obj = {"id": record.id, "s1": record.s1, "s2": record.s2, "label": record.label}
    genre = getattr(record, "genre", None)
    if genre is not None:
        obj["genre"] = genre
    obj["language"] = record.language
    return obj


def record_from_json(obj: dict, record_id: str | None = None) -> Record:
    rid = str(obj.get("id", record_id))
    s1 = normalize_text(str(obj["s1"]))
    s2 = normalize_text(str(obj["s2"]))
    label = str(obj["label"])
    language = str(obj.get("language", "en"))
    if label in NLI_LABELS:
        return NLIRecord(
            id=rid, premise=s1, hypothesis=s2, label=label,
            genre=obj.get("genre"), language=language,
        )
    if label in PARA_LABELS:
        return ParaRecord(id=rid, s1=s1, s2=s2, label=label, language=language)
    raise RecordError(f"record {rid!r}: unknown label {label!r}")


def write_jsonl(records: Iterable[Record], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record_to_json(record), ensure_ascii=False, sort_keys=True))
            fh.write("\n")
