import json

import pytest

from bident.records import DatasetSplit, NLIRecord, ParaRecord
from bident.scoring import ScorerDescriptor, StaticOracleScorer

# Hand-enumerated 12-pair NLI fixture. All pairs are gold entailment; the
# oracle table scores the reversed orientation (hypothesis, premise).
# Entailment-argmax winners: n01..n05 (5). p >= 0.75: n01..n03 (3).
# p >= 0.90: n01, n02 (2). n09 is an exact argmax tie and must be rejected.
NLI12_DISTS = {
    "n01": {"entailment": 0.95, "neutral": 0.03, "contradiction": 0.02},
    "n02": {"entailment": 0.92, "neutral": 0.05, "contradiction": 0.03},
    "n03": {"entailment": 0.80, "neutral": 0.12, "contradiction": 0.08},
    "n04": {"entailment": 0.60, "neutral": 0.25, "contradiction": 0.15},
    "n05": {"entailment": 0.50, "neutral": 0.30, "contradiction": 0.20},
    "n06": {"entailment": 0.40, "neutral": 0.45, "contradiction": 0.15},
    "n07": {"entailment": 0.20, "neutral": 0.70, "contradiction": 0.10},
    "n08": {"entailment": 0.10, "neutral": 0.10, "contradiction": 0.80},
    "n09": {"entailment": 0.40, "neutral": 0.40, "contradiction": 0.20},
    "n10": {"entailment": 0.05, "neutral": 0.90, "contradiction": 0.05},
    "n11": {"entailment": 0.15, "neutral": 0.25, "contradiction": 0.60},
    "n12": {"entailment": 0.10, "neutral": 0.50, "contradiction": 0.40},
}

ARGMAX_IDS = {"n01", "n02", "n03", "n04", "n05"}
T075_IDS = {"n01", "n02", "n03"}
T090_IDS = {"n01", "n02"}

# 8-record paraphrase fixture: q1..q5 gold paraphrase, q6..q8 gold
# non-paraphrase. Reversed-direction oracle marks q2 and q4 as
# non-paraphrase-dominant (0.80 and 0.85; both < 0.90, so T=0.90 removes
# nothing).
PARA8_DISTS = {
    "q1": {"paraphrase": 0.90, "non-paraphrase": 0.10},
    "q2": {"paraphrase": 0.20, "non-paraphrase": 0.80},
    "q3": {"paraphrase": 0.70, "non-paraphrase": 0.30},
    "q4": {"paraphrase": 0.15, "non-paraphrase": 0.85},
    "q5": {"paraphrase": 0.55, "non-paraphrase": 0.45},
}
REMOVED_IDS = {"q2", "q4"}


def nli12_texts(rid):
    return f"premise {rid} text", f"hypothesis {rid} text"


@pytest.fixture
def nli12_split():
    records = []
    for rid in sorted(NLI12_DISTS):
        premise, hypothesis = nli12_texts(rid)
        records.append(NLIRecord(id=rid, premise=premise, hypothesis=hypothesis,
                                 label="entailment"))
    return DatasetSplit(name="nli12", records=records)


@pytest.fixture
def nli12_table():
    # keyed by the reversed orientation the pipeline scores
    return {
        nli12_texts(rid)[::-1]: dist
        for rid, dist in NLI12_DISTS.items()
    }


@pytest.fixture
def nli12_scorer(nli12_table):
    descriptor = ScorerDescriptor(task="nli-3way", backend="static-oracle",
                                  model_id="nli12")
    return StaticOracleScorer(descriptor, table=nli12_table)


@pytest.fixture
def nli12_table_path(tmp_path, nli12_table):
    path = tmp_path / "nli12_oracle.jsonl"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps({"task": "nli-3way"}) + "\n")
        for (s1, s2), dist in sorted(nli12_table.items()):
            fh.write(json.dumps({"s1": s1, "s2": s2, "distribution": dist}) + "\n")
    return path


@pytest.fixture
def nli12_dataset_path(tmp_path, nli12_split):
    path = tmp_path / "nli12.jsonl"
    with open(path, "w", encoding="utf-8") as fh:
        for r in nli12_split.records:
            fh.write(json.dumps({"id": r.id, "s1": r.premise, "s2": r.hypothesis,
                                 "label": r.label, "language": r.language}) + "\n")
    return path


def para8_texts(rid):
    return f"question {rid} alpha", f"question {rid} beta"


@pytest.fixture
def para8_split():
    records = []
    for rid in ["q1", "q2", "q3", "q4", "q5"]:
        s1, s2 = para8_texts(rid)
        records.append(ParaRecord(id=rid, s1=s1, s2=s2, label="paraphrase"))
    for rid in ["q6", "q7", "q8"]:
        s1, s2 = para8_texts(rid)
        records.append(ParaRecord(id=rid, s1=s1, s2=s2, label="non-paraphrase"))
    return DatasetSplit(name="para8", records=records)


@pytest.fixture
def para8_scorer():
    table = {para8_texts(rid)[::-1]: dist for rid, dist in PARA8_DISTS.items()}
    descriptor = ScorerDescriptor(task="paraphrase-2way", backend="static-oracle",
                                  model_id="para8")
    return StaticOracleScorer(descriptor, table=table)
