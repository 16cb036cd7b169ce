"""Export a trained checkpoint as a TorchScript inference graph plus the
JSON metadata sidecar the scoring consumer reads. The graph applies
softmax internally, so consumers always receive normalized probabilities
in sidecar class order."""
from __future__ import annotations

import json
from pathlib import Path

import torch
from torch import nn

from .training import Checkpoint


class ExportError(RuntimeError):
    pass


class ProbabilityHead(nn.Module):
    def __init__(self, model: nn.Module):
        super().__init__()
        self.model = model

    def forward(self, x):
        return torch.softmax(self.model(x), dim=1)


def export(checkpoint: Checkpoint, out_path) -> Path:
    """Write <out_path> (TorchScript) and <out_path>.json (sidecar)."""
    out_path = Path(out_path)
    wrapped = ProbabilityHead(checkpoint.model)
    wrapped.eval()
    example = torch.zeros(1, 3 * checkpoint.config.feature_dim)
    try:
        traced = torch.jit.trace(wrapped, example)
    except Exception as exc:
        raise ExportError(f"graph export failed: {exc}") from exc
    out_path.parent.mkdir(parents=True, exist_ok=True)
    traced.save(str(out_path))

    sidecar = {
        "task": checkpoint.task,
        "class_names": list(checkpoint.classes),
        "tokenizer_id": f"hashbow:{checkpoint.config.feature_dim}",
        "max_sequence_length": checkpoint.max_sequence_length,
        "model_id": checkpoint.config.base_model_id,
    }
    with open(f"{out_path}.json", "w", encoding="utf-8") as fh:
        json.dump(sidecar, fh, ensure_ascii=False, indent=2, sort_keys=True)
        fh.write("\n")
    return out_path


def write_manifest(checkpoint: Checkpoint, out_path) -> None:
    """Run manifest in the same schema the mining CLI writes."""
    manifest = {
        "tool": "bident-trainer",
        "version": "0.1.0",
        "mode": "train",
        "dataset": None,
        "scorer": None,
        "rule": None,
        "seed": checkpoint.config.seed,
        "counts": {"epochs": len(checkpoint.log)},
        "training": {
            "config": checkpoint.config.as_dict(),
            "best_epoch": checkpoint.best_epoch,
            "best_val_f1": checkpoint.best_f1,
            "log": checkpoint.log,
        },
    }
    with open(out_path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, ensure_ascii=False, indent=2, sort_keys=True)
        fh.write("\n")
