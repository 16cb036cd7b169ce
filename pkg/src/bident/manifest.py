"""Run manifests: machine-readable records sufficient to re-execute a run.

Deliberately timestamp-free so that reruns with deterministic backends
produce byte-identical files.
"""
from __future__ import annotations

import json

from . import __version__


def build_manifest(mode: str, dataset: dict | None, scorer: dict | None,
                   rule: str | None, seed: int | None, counts: dict,
                   **extra) -> dict:
    manifest = {
        "tool": "bident",
        "version": __version__,
        "mode": mode,
        "dataset": dataset,
        "scorer": scorer,
        "rule": rule,
        "seed": seed,
        "counts": counts,
    }
    manifest.update(extra)
    return manifest


def dump_manifest(manifest: dict) -> str:
    return json.dumps(manifest, ensure_ascii=False, indent=2, sort_keys=True) + "\n"


def load_manifest(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
