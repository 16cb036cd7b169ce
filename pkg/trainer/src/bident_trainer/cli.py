"""bident-train: fine-tune a sequence-pair classifier on canonical JSONL
and export it for the local scoring backend."""
from __future__ import annotations

from pathlib import Path

import click

from .data import load_jsonl
from .export import export, write_manifest
from .training import TrainingConfig, finetune


@click.command()
@click.option("--train", "train_path", required=True, type=click.Path(exists=True))
@click.option("--validation", "val_path", required=True,
              type=click.Path(exists=True))
@click.option("--out", required=True, type=click.Path(),
              help="Output model path; sidecar and manifest land beside it.")
@click.option("--learning-rate", type=float, default=2e-5, show_default=True)
@click.option("--percentile", type=click.Choice(["95", "99"]), default="95",
              show_default=True)
@click.option("--patience", type=int, default=5, show_default=True)
@click.option("--max-epochs", type=int, default=50, show_default=True)
@click.option("--feature-dim", type=int, default=64, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
def main(train_path, val_path, out, learning_rate, percentile, patience,
         max_epochs, feature_dim, seed):
    config = TrainingConfig(
        learning_rate=learning_rate,
        max_sequence_length_percentile=int(percentile),
        early_stopping_patience=patience,
        max_epochs=max_epochs,
        feature_dim=feature_dim,
        seed=seed,
    )
    checkpoint = finetune(config, load_jsonl(train_path), load_jsonl(val_path))
    out = Path(out)
    export(checkpoint, out)
    write_manifest(checkpoint, out.parent / "manifest.json")
    click.echo(f"best validation F1 {checkpoint.best_f1:.3f} "
               f"at epoch {checkpoint.best_epoch}; exported to {out}")


if __name__ == "__main__":
    main()
