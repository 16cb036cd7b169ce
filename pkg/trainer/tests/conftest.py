import pytest

from bident_trainer.training import TrainingConfig


def synthetic_record(i, positive):
    marker = "match" if positive else "clash"
    return {
        "id": f"s{i}",
        "s1": f"item number {i % 7} alpha beta",
        "s2": f"item number {i % 7} gamma {marker}",
        "label": "paraphrase" if positive else "non-paraphrase",
    }


@pytest.fixture
def separable_task():
    train = [synthetic_record(i, i % 2 == 0) for i in range(64)]
    validation = [synthetic_record(100 + i, i % 2 == 0) for i in range(32)]
    return train, validation


@pytest.fixture
def fast_config():
    # small feature space and a large step size keep the synthetic task
    # well inside the 20-epoch budget
    return TrainingConfig(learning_rate=0.05, max_epochs=20, feature_dim=32,
                          hidden_dim=16, seed=1)
