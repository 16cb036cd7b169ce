"""Pair featurization matching the local-backend sidecar contract.

tokenizer id family ``hashbow:<dim>``: whitespace tokens, truncated to
max_sequence_length, md5-hashed into <dim> count buckets; a pair encodes
as [v(s1), v(s2), v(s1)*v(s2)]. This must stay in lockstep with the
consumer's implementation of the same contract.
"""
from __future__ import annotations

import hashlib

import numpy as np


def token_bucket(token: str, dim: int) -> int:
    digest = hashlib.md5(token.encode("utf-8")).hexdigest()
    return int(digest, 16) % dim


def hashed_bow(text: str, dim: int, max_tokens: int) -> np.ndarray:
    vec = np.zeros(dim, dtype=np.float32)
    for token in text.split()[:max_tokens]:
        vec[token_bucket(token, dim)] += 1.0
    return vec


def encode_pairs(pairs, dim: int, max_tokens: int) -> np.ndarray:
    feats = np.zeros((len(pairs), 3 * dim), dtype=np.float32)
    for i, (s1, s2) in enumerate(pairs):
        v1 = hashed_bow(s1, dim, max_tokens)
        v2 = hashed_bow(s2, dim, max_tokens)
        feats[i] = np.concatenate([v1, v2, v1 * v2])
    return feats
