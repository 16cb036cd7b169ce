"""Manual-validation sampling and hand-precision scoring.

The annotation sheet is TSV so it round-trips through spreadsheets:
columns source_id, s1, s2, verdict (blank until annotated, then yes/no).
"""
from __future__ import annotations

import csv
import random

SHEET_COLUMNS = ["source_id", "s1", "s2", "verdict"]


class SheetError(ValueError):
    """Malformed or incompletely annotated sheet."""


def sample_for_validation(records: list, n: int, seed: int) -> list:
    """min(n, len(records)) records sampled without replacement, in source
    order, deterministic under seed."""
    k = min(n, len(records))
    picked = set(random.Random(seed).sample(range(len(records)), k))
    return [r for i, r in enumerate(records) if i in picked]


def write_sheet(records: list, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, delimiter="\t", lineterminator="\n")
        writer.writerow(SHEET_COLUMNS)
        for record in records:
            writer.writerow([record.source_id, record.s1, record.s2, ""])


def read_sheet(path) -> list:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh, delimiter="\t")
        if reader.fieldnames != SHEET_COLUMNS:
            raise SheetError(f"{path}: expected columns {SHEET_COLUMNS}, "
                             f"got {reader.fieldnames}")
        return list(reader)


def hand_precision(rows: list) -> float:
    """Fraction of yes verdicts over a fully annotated sheet."""
    if not rows:
        raise SheetError("sheet has no rows")
    yes = 0
    for i, row in enumerate(rows, start=2):  # row 1 is the header
        verdict = (row.get("verdict") or "").strip().lower()
        if verdict == "yes":
            yes += 1
        elif verdict != "no":
            raise SheetError(f"row {i}: verdict must be yes/no, got {verdict!r}")
    return yes / len(rows)
