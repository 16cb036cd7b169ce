"""bident-trainer: fine-tuning and model export for the bident pipeline."""

__version__ = "0.1.0"

from .export import export, write_manifest
from .training import Checkpoint, PairClassifier, TrainingConfig, finetune

__all__ = ["Checkpoint", "PairClassifier", "TrainingConfig", "export",
           "finetune", "write_manifest", "__version__"]
