"""Canonical JSONL ingestion for training (the interchange schema shared
with the mining pipeline: one {id, s1, s2, label} object per line)."""
from __future__ import annotations

import json
import math

NLI_CLASSES = ("entailment", "neutral", "contradiction")
PARA_CLASSES = ("paraphrase", "non-paraphrase")


class DataError(ValueError):
    pass


def load_jsonl(path) -> list:
    records = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            obj = json.loads(line)
            for key in ("s1", "s2", "label"):
                if key not in obj:
                    raise DataError(f"{path}:{lineno}: missing {key}")
            records.append({"id": str(obj.get("id", lineno)),
                            "s1": obj["s1"], "s2": obj["s2"],
                            "label": obj["label"]})
    return records


def infer_task(records) -> str:
    labels = {r["label"] for r in records}
    if labels <= set(NLI_CLASSES):
        return "nli-3way"
    if labels <= set(PARA_CLASSES):
        return "paraphrase-2way"
    raise DataError(f"mixed or unknown label set {sorted(labels)}")


def class_names(task: str) -> tuple:
    return NLI_CLASSES if task == "nli-3way" else PARA_CLASSES


def length_percentile(records, percentile: int) -> int:
    """Percentile of whitespace-token sequence lengths, rounded up."""
    if percentile not in (95, 99):
        raise DataError(f"percentile must be 95 or 99, got {percentile}")
    lengths = sorted(max(len(r["s1"].split()), len(r["s2"].split()))
                     for r in records)
    if not lengths:
        raise DataError("no records to compute sequence-length percentile")
    rank = math.ceil(percentile / 100 * len(lengths)) - 1
    return max(1, lengths[rank])
