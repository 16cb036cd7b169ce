"""Local exported-model backend.

Loads a TorchScript inference graph plus a JSON metadata sidecar at
``<model>.json`` describing {task, class_names, tokenizer_id,
max_sequence_length}. Class names always come from the sidecar, never
from output position conventions.

The supported tokenizer family is ``hashbow:<dim>``: whitespace tokens,
truncated to max_sequence_length, hashed with md5 into <dim> count
buckets. A pair is encoded as the concatenation [v(s1), v(s2),
v(s1)*v(s2)], giving a float32 vector of size 3*dim. Exporters must
produce graphs taking that vector and emitting normalized probabilities
in sidecar class order.
"""
from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from .base import Scorer, ScorerDescriptor, ScorerError


def token_bucket(token: str, dim: int) -> int:
    # md5, not hash(): stable across processes and interpreters
    digest = hashlib.md5(token.encode("utf-8")).hexdigest()
    return int(digest, 16) % dim


def hashed_bow(text: str, dim: int, max_tokens: int) -> tuple:
    """Count-vector of hashed whitespace tokens; reports truncation."""
    tokens = text.split()
    truncated = len(tokens) > max_tokens
    vec = np.zeros(dim, dtype=np.float32)
    for token in tokens[:max_tokens]:
        vec[token_bucket(token, dim)] += 1.0
    return vec, truncated


def encode_pairs(pairs, dim: int, max_tokens: int) -> tuple:
    feats = np.zeros((len(pairs), 3 * dim), dtype=np.float32)
    truncations = 0
    for i, (s1, s2) in enumerate(pairs):
        v1, t1 = hashed_bow(s1, dim, max_tokens)
        v2, t2 = hashed_bow(s2, dim, max_tokens)
        feats[i] = np.concatenate([v1, v2, v1 * v2])
        truncations += int(t1) + int(t2)
    return feats, truncations


def read_sidecar(model_path) -> dict:
    sidecar_path = Path(str(model_path) + ".json")
    if not sidecar_path.is_file():
        raise ScorerError(f"metadata sidecar not found: {sidecar_path}")
    with open(sidecar_path, encoding="utf-8") as fh:
        meta = json.load(fh)
    for key in ("task", "class_names", "tokenizer_id", "max_sequence_length"):
        if key not in meta:
            raise ScorerError(f"sidecar {sidecar_path} missing key {key!r}")
    return meta


class LocalModelScorer(Scorer):
    def __init__(self, model_path, renormalize: bool = False):
        import torch  # heavyweight; only needed for this backend

        self.torch = torch
        model_path = Path(model_path)
        if not model_path.is_file():
            raise ScorerError(f"model file not found: {model_path}")
        meta = read_sidecar(model_path)
        tokenizer_id = meta["tokenizer_id"]
        kind, _, dim = tokenizer_id.partition(":")
        if kind != "hashbow" or not dim.isdigit():
            raise ScorerError(f"unsupported tokenizer id {tokenizer_id!r}")
        self.dim = int(dim)
        self.class_names = list(meta["class_names"])
        self.max_tokens = int(meta["max_sequence_length"])
        try:
            self.module = torch.jit.load(str(model_path), map_location="cpu")
        except Exception as exc:
            raise ScorerError(f"cannot load model {model_path}: {exc}") from exc
        self.module.eval()
        self.truncation_count = 0
        descriptor = ScorerDescriptor(
            task=meta["task"], backend="local-model",
            model_id=meta.get("model_id", str(model_path)),
            max_sequence_length=self.max_tokens)
        if sorted(self.class_names) != sorted(descriptor.classes):
            raise ScorerError(
                f"sidecar class names {self.class_names} do not match task "
                f"{descriptor.task!r}")
        super().__init__(descriptor, renormalize=renormalize)

    def _score(self, pairs):
        feats, truncations = encode_pairs(pairs, self.dim, self.max_tokens)
        self.truncation_count += truncations
        with self.torch.no_grad():
            probs = self.module(self.torch.from_numpy(feats)).numpy()
        if probs.shape != (len(pairs), len(self.class_names)):
            raise ScorerError(
                f"model output shape {probs.shape} does not match "
                f"({len(pairs)}, {len(self.class_names)})")
        return [
            {name: float(row[j]) for j, name in enumerate(self.class_names)}
            for row in probs
        ]


def local_scorer(model_path, **kwargs) -> LocalModelScorer:
    return LocalModelScorer(model_path, **kwargs)
