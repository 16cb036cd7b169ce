from .base import (
    NLI_CLASSES,
    PARA_CLASSES,
    TASK_CLASSES,
    DistributionError,
    LabelDistribution,
    Scorer,
    ScorerDescriptor,
    ScorerError,
)
from .oracle import StaticOracleScorer, load_oracle_table, oracle_scorer
from .remote import RemoteScorer, remote_scorer


def build_scorer(spec: str, task: str, **kwargs) -> Scorer:
    """Build a scorer from a CLI-style spec string.

    Accepted forms: ``oracle:subseq``, ``oracle:PATH``, ``remote:URL``,
    ``local:PATH``.
    """
    kind, sep, rest = spec.partition(":")
    if not sep:
        raise ScorerError(f"bad scorer spec {spec!r}; expected kind:source")
    if kind == "oracle":
        return oracle_scorer(task, rest, **kwargs)
    if kind == "remote":
        return remote_scorer(task, rest, **kwargs)
    if kind == "local":
        from .local import local_scorer

        scorer = local_scorer(rest, **kwargs)
        if scorer.descriptor.task != task:
            raise ScorerError(
                f"model task {scorer.descriptor.task!r} does not match "
                f"required task {task!r}")
        return scorer
    raise ScorerError(f"unknown scorer kind {kind!r}")


__all__ = [
    "NLI_CLASSES", "PARA_CLASSES", "TASK_CLASSES",
    "DistributionError", "LabelDistribution", "Scorer", "ScorerDescriptor",
    "ScorerError", "StaticOracleScorer", "RemoteScorer",
    "build_scorer", "load_oracle_table", "oracle_scorer", "remote_scorer",
]
