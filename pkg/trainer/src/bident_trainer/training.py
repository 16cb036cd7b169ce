"""Fine-tuning loop: AdamW, validation-F1 model selection, early stopping."""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
import torch
from sklearn.metrics import f1_score
from torch import nn

from .data import class_names, infer_task, length_percentile
from .features import encode_pairs

FALLBACK_LEARNING_RATE = 5e-6


@dataclass
class TrainingConfig:
    base_model_id: str = "tiny-hashbow"
    learning_rate: float = 2e-5
    max_sequence_length_percentile: int = 95
    early_stopping_patience: int = 5
    max_epochs: int = 50
    feature_dim: int = 64
    hidden_dim: int = 32
    batch_size: int = 16
    seed: int = 0

    def as_dict(self) -> dict:
        return dict(vars(self))


class PairClassifier(nn.Module):
    """Two-layer classifier over hashed pair features; emits logits."""

    def __init__(self, feature_dim: int, hidden_dim: int, n_classes: int):
        super().__init__()
        self.net = nn.Sequential(
            nn.Linear(3 * feature_dim, hidden_dim),
            nn.ReLU(),
            nn.Linear(hidden_dim, n_classes),
        )

    def forward(self, x):
        return self.net(x)


@dataclass
class Checkpoint:
    model: PairClassifier
    config: TrainingConfig
    task: str
    classes: tuple
    max_sequence_length: int
    best_f1: float
    best_epoch: int
    log: list = field(default_factory=list)


def _encode(records, classes, dim, max_tokens):
    feats = encode_pairs([(r["s1"], r["s2"]) for r in records], dim, max_tokens)
    labels = np.array([classes.index(r["label"]) for r in records])
    return torch.from_numpy(feats), torch.from_numpy(labels)


def finetune(config: TrainingConfig, train: list, validation: list) -> Checkpoint:
    """Train on canonical-JSONL records; keep the checkpoint with the best
    validation macro F1; stop after `patience` rounds without improvement."""
    torch.manual_seed(config.seed)
    task = infer_task(train + validation)
    classes = class_names(task)
    max_tokens = length_percentile(train, config.max_sequence_length_percentile)

    model = PairClassifier(config.feature_dim, config.hidden_dim, len(classes))
    optimizer = torch.optim.AdamW(model.parameters(), lr=config.learning_rate)
    loss_fn = nn.CrossEntropyLoss()

    x_train, y_train = _encode(train, classes, config.feature_dim, max_tokens)
    x_val, y_val = _encode(validation, classes, config.feature_dim, max_tokens)

    best_f1 = float("-inf")
    best_state = None
    best_epoch = 0
    rounds_without_improvement = 0
    log = []
    generator = torch.Generator().manual_seed(config.seed)
    for epoch in range(1, config.max_epochs + 1):
        model.train()
        for start in torch.randperm(len(x_train), generator=generator).split(
                config.batch_size):
            optimizer.zero_grad()
            loss = loss_fn(model(x_train[start]), y_train[start])
            loss.backward()
            optimizer.step()

        model.eval()
        with torch.no_grad():
            predictions = model(x_val).argmax(dim=1).numpy()
        val_f1 = f1_score(y_val.numpy(), predictions, average="macro")
        log.append({"epoch": epoch, "val_f1": float(val_f1)})
        if val_f1 > best_f1:
            best_f1 = float(val_f1)
            best_epoch = epoch
            best_state = {k: v.clone() for k, v in model.state_dict().items()}
            rounds_without_improvement = 0
        else:
            rounds_without_improvement += 1
            if rounds_without_improvement >= config.early_stopping_patience:
                break

    model.load_state_dict(best_state)
    if best_f1 < 0.5:
        warnings.warn(
            f"training did not converge (best validation F1 {best_f1:.3f}); "
            f"consider a reduced learning rate of {FALLBACK_LEARNING_RATE}")
    return Checkpoint(model=model, config=config, task=task, classes=classes,
                      max_sequence_length=max_tokens, best_f1=best_f1,
                      best_epoch=best_epoch, log=log)
