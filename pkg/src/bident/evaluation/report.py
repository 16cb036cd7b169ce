"""Report rendering: one table per dataset, one row per decision rule.

Columns mirror the run bookkeeping: extracted/removed count (#),
precision (P), recall (R), and hand precision when a validated sample
exists. Undefined metrics render as a dash, never as 0.
"""
from __future__ import annotations

import json

UNDEFINED = "—"

REPORT_SCHEMA = {
    "type": "object",
    "required": ["tables"],
    "properties": {
        "tables": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["dataset", "kind", "rows"],
                "properties": {
                    "dataset": {"type": "string"},
                    "kind": {"enum": ["extraction", "cleaning", "evaluation"]},
                    "rows": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["rule", "count", "precision", "recall"],
                            "properties": {
                                "rule": {"type": "string"},
                                "count": {"type": "integer", "minimum": 0},
                                "precision": {"type": ["number", "null"]},
                                "recall": {"type": ["number", "null"]},
                                "hand_precision": {"type": ["number", "null"]},
                            },
                        },
                    },
                },
            },
        },
    },
}

_KIND_BY_MODE = {"extract": "extraction", "clean": "cleaning",
                 "evaluate": "evaluation"}
_COUNT_KEY = {"extraction": "extracted", "cleaning": "removed",
              "evaluation": "evaluated"}


def _row_from_manifest(manifest: dict) -> dict:
    kind = _KIND_BY_MODE[manifest["mode"]]
    m = manifest.get("metrics") or {}
    row = {
        "rule": manifest.get("rule", "argmax"),
        "count": int(manifest.get("counts", {}).get(_COUNT_KEY[kind], 0)),
        "precision": m.get("precision"),
        "recall": m.get("recall"),
    }
    if "hand_precision" in manifest:
        row["hand_precision"] = manifest["hand_precision"]
    return row


def render_report(manifests: list) -> dict:
    """Group run manifests into per-(dataset, kind) tables."""
    if not manifests:
        raise ValueError("need at least one run manifest")
    tables: dict[tuple, dict] = {}
    for manifest in manifests:
        kind = _KIND_BY_MODE[manifest["mode"]]
        dataset = manifest.get("dataset", {}).get("name", "unknown")
        key = (dataset, kind)
        table = tables.setdefault(key, {"dataset": dataset, "kind": kind,
                                        "rows": []})
        table["rows"].append(_row_from_manifest(manifest))
    return {"tables": [tables[k] for k in sorted(tables)]}


def _fmt(value) -> str:
    if value is None:
        return UNDEFINED
    if isinstance(value, float):
        return f"{value:.3f}"
    return str(value)


def report_text(report: dict) -> str:
    lines = []
    for table in report["tables"]:
        has_hand = any("hand_precision" in row for row in table["rows"])
        header = ["rule", "#", "P", "R"] + (["handP"] if has_hand else [])
        lines.append(f"== {table['dataset']} ({table['kind']}) ==")
        lines.append("\t".join(header))
        for row in table["rows"]:
            cells = [row["rule"], str(row["count"]),
                     _fmt(row["precision"]), _fmt(row["recall"])]
            if has_hand:
                cells.append(_fmt(row.get("hand_precision")))
            lines.append("\t".join(cells))
        lines.append("")
    return "\n".join(lines)


def report_json(report: dict) -> str:
    return json.dumps(report, ensure_ascii=False, indent=2, sort_keys=True)
