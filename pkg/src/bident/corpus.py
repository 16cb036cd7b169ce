"""Dataset adapters and deterministic split manipulation.

Each adapter normalizes a native file shape into the canonical record
model. Rows without a gold-consensus label are dropped and counted,
never guessed.
"""
from __future__ import annotations

import csv
import json
import math
import random
from pathlib import Path

from .records import (
    DatasetSplit,
    LoadStats,
    NLIRecord,
    ParaRecord,
    RecordError,
    normalize_text,
    record_from_json,
)

# Markers used by SNLI/MNLI/XNLI when annotators reached no consensus.
NO_GOLD_MARKERS = {"-", ""}


class CorpusError(ValueError):
    """Unreadable file, unknown format tag, or malformed row."""


class MalformedRowError(CorpusError):
    def __init__(self, path, line_number: int, reason: str):
        self.line_number = line_number
        super().__init__(f"{path}:{line_number}: {reason}")


def _native_id(obj: dict, stem: str, lineno: int) -> str:
    for key in ("pairID", "pair_id", "id"):
        if obj.get(key) not in (None, ""):
            return str(obj[key])
    return f"{stem}:{lineno}"


def _iter_jsonl(path):
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                yield lineno, json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedRowError(path, lineno, f"bad JSON: {exc}") from exc


def _iter_tsv(path, required: list[str]):
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh, delimiter="\t", quoting=csv.QUOTE_NONE)
        if reader.fieldnames is None:
            return
        missing = [c for c in required if c not in reader.fieldnames]
        if missing:
            raise CorpusError(f"{path}: missing required columns {missing}")
        for lineno, row in enumerate(reader, start=2):
            yield lineno, row


def _adapt_nli_jsonl(path, language, stem):
    for lineno, obj in _iter_jsonl(path):
        label = obj.get("gold_label", obj.get("label"))
        s1, s2 = obj.get("sentence1"), obj.get("sentence2")
        if s1 is None or s2 is None or label is None:
            raise MalformedRowError(path, lineno, "missing sentence1/sentence2/gold_label")
        yield lineno, {
            "id": _native_id(obj, stem, lineno),
            "s1": s1, "s2": s2, "label": label,
            "genre": obj.get("genre"), "language": language,
        }


def _adapt_xnli_tsv(path, language, stem):
    cols = ["language", "gold_label", "sentence1", "sentence2"]
    for lineno, row in _iter_tsv(path, cols):
        if language and row["language"] != language:
            continue
        yield lineno, {
            "id": _native_id(row, stem, lineno),
            "s1": row["sentence1"], "s2": row["sentence2"],
            "label": row["gold_label"],
            "genre": row.get("genre"), "language": row["language"],
        }


def _adapt_qqp_tsv(path, language, stem):
    for lineno, row in _iter_tsv(path, ["question1", "question2", "is_duplicate"]):
        flag = row["is_duplicate"].strip()
        if flag not in ("0", "1"):
            raise MalformedRowError(path, lineno, f"is_duplicate must be 0/1, got {flag!r}")
        yield lineno, {
            "id": _native_id(row, stem, lineno),
            "s1": row["question1"], "s2": row["question2"],
            "label": "paraphrase" if flag == "1" else "non-paraphrase",
            "language": language,
        }


def _adapt_mrpc_tsv(path, language, stem):
    # MRPC layout: quality flag first column, then ids, then the two strings.
    cols = ["Quality", "#1 String", "#2 String"]
    for lineno, row in _iter_tsv(path, cols):
        flag = row["Quality"].strip()
        if flag not in ("0", "1"):
            raise MalformedRowError(path, lineno, f"Quality must be 0/1, got {flag!r}")
        rid = row.get("#1 ID")
        rid = f"{rid}-{row.get('#2 ID')}" if rid else f"{stem}:{lineno}"
        yield lineno, {
            "id": rid,
            "s1": row["#1 String"], "s2": row["#2 String"],
            "label": "paraphrase" if flag == "1" else "non-paraphrase",
            "language": language,
        }


def _adapt_generic_jsonl(path, language, stem):
    for lineno, obj in _iter_jsonl(path):
        if "s1" not in obj or "s2" not in obj or "label" not in obj:
            raise MalformedRowError(path, lineno, "missing s1/s2/label")
        out = dict(obj)
        out.setdefault("id", f"{stem}:{lineno}")
        out.setdefault("language", language)
        yield lineno, out


FORMATS = {
    "snli-jsonl": _adapt_nli_jsonl,
    "mnli-jsonl": _adapt_nli_jsonl,
    "xnli-tsv": _adapt_xnli_tsv,
    "qqp-tsv": _adapt_qqp_tsv,
    "mrpc-tsv": _adapt_mrpc_tsv,
    "generic-jsonl": _adapt_generic_jsonl,
}


def load_dataset(path, format: str, language: str = "en",
                 skip_malformed: bool = False, name: str | None = None) -> DatasetSplit:
    """Load a native dataset file into a DatasetSplit of canonical records.

    Rows with a no-consensus gold label are dropped and counted in
    ``split.stats``. Malformed rows abort with the line number unless
    ``skip_malformed`` is set.
    """
    path = Path(path)
    if format not in FORMATS:
        raise CorpusError(f"unknown format tag {format!r}; known: {sorted(FORMATS)}")
    if not path.is_file():
        raise CorpusError(f"dataset file not found: {path}")

    adapter = FORMATS[format]
    stats = LoadStats()
    records = []
    seen_pairs = set()
    seen_ids = set()
    for lineno, obj in adapter(path, language, path.stem):
        stats.read += 1
        label = str(obj["label"]).strip()
        if label in NO_GOLD_MARKERS:
            stats.dropped_no_gold += 1
            continue
        obj["label"] = label
        try:
            record = record_from_json(obj, record_id=f"{path.stem}:{lineno}")
            if record.id in seen_ids:
                raise RecordError(f"duplicate id {record.id!r}")
        except RecordError as exc:
            if skip_malformed:
                stats.skipped_malformed += 1
                continue
            raise MalformedRowError(path, lineno, str(exc)) from exc
        seen_ids.add(record.id)
        pair = (record.s1, record.s2)
        if pair in seen_pairs:
            stats.duplicate_pairs += 1
        seen_pairs.add(pair)
        records.append(record)
    stats.kept = len(records)
    return DatasetSplit(name=name or path.stem, records=records, stats=stats)


def split_half(split: DatasetSplit, seed: int) -> tuple[DatasetSplit, DatasetSplit]:
    """Randomly partition a split into two halves (larger half first).

    Pure in (input, seed); each half keeps the source record order.
    """
    if not split.records:
        raise CorpusError("cannot split an empty DatasetSplit")
    n = len(split.records)
    indices = list(range(n))
    random.Random(seed).shuffle(indices)
    first = set(indices[: math.ceil(n / 2)])
    half_a = [r for i, r in enumerate(split.records) if i in first]
    half_b = [r for i, r in enumerate(split.records) if i not in first]
    return (
        DatasetSplit(name=f"{split.name}-a", records=half_a),
        DatasetSplit(name=f"{split.name}-b", records=half_b),
    )


def carve_validation(train: DatasetSplit, n: int, seed: int) -> tuple[DatasetSplit, DatasetSplit]:
    """Carve n records out of a training split as a validation set.

    Sampling is without replacement and pure in (input, seed); both
    outputs keep the source record order.
    """
    if n > len(train.records):
        raise CorpusError(f"cannot carve {n} records out of {len(train.records)}")
    picked = set(random.Random(seed).sample(range(len(train.records)), n))
    validation = [r for i, r in enumerate(train.records) if i in picked]
    reduced = [r for i, r in enumerate(train.records) if i not in picked]
    return (
        DatasetSplit(name=f"{train.name}-reduced", records=reduced),
        DatasetSplit(name=f"{train.name}-validation", records=validation),
    )
