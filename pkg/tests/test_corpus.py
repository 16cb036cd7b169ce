import json

import pytest
from hypothesis import given, strategies as st

from bident.corpus import (
    CorpusError,
    MalformedRowError,
    carve_validation,
    load_dataset,
    split_half,
)
from bident.records import DatasetSplit, NLIRecord, record_from_json, record_to_json, write_jsonl


def write_lines(path, lines):
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def generic_row(i, label, s1=None, s2=None):
    return json.dumps({"id": f"g{i}", "s1": s1 or f"sentence one {i}",
                       "s2": s2 or f"sentence two {i}", "label": label})


class TestLoadDataset:
    def test_generic_jsonl_three_rows(self, tmp_path):
        path = tmp_path / "d.jsonl"
        write_lines(path, [generic_row(1, "entailment"),
                           generic_row(2, "neutral"),
                           generic_row(3, "contradiction")])
        split = load_dataset(path, "generic-jsonl")
        assert len(split) == 3
        assert all(isinstance(r, NLIRecord) for r in split)
        assert [r.label for r in split] == ["entailment", "neutral", "contradiction"]

    def test_no_consensus_label_dropped(self, tmp_path):
        path = tmp_path / "snli.jsonl"
        write_lines(path, [
            json.dumps({"pairID": "a1", "sentence1": "a cat sits",
                        "sentence2": "a cat", "gold_label": "-"}),
        ])
        split = load_dataset(path, "snli-jsonl")
        assert len(split) == 0
        assert split.stats.dropped_no_gold == 1

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.jsonl"
        path.write_text("", encoding="utf-8")
        split = load_dataset(path, "generic-jsonl")
        assert len(split) == 0

    def test_unknown_format(self, tmp_path):
        path = tmp_path / "d.jsonl"
        path.write_text("", encoding="utf-8")
        with pytest.raises(CorpusError, match="unknown format"):
            load_dataset(path, "nope-jsonl")

    def test_missing_file(self, tmp_path):
        with pytest.raises(CorpusError, match="not found"):
            load_dataset(tmp_path / "missing.jsonl", "generic-jsonl")

    def test_malformed_row_reports_line_number(self, tmp_path):
        path = tmp_path / "d.jsonl"
        write_lines(path, [generic_row(1, "entailment"),
                           json.dumps({"id": "g2", "s1": "only one side",
                                       "label": "neutral"})])
        with pytest.raises(MalformedRowError, match=":2:"):
            load_dataset(path, "generic-jsonl")

    def test_skip_malformed_counts(self, tmp_path):
        path = tmp_path / "d.jsonl"
        write_lines(path, [generic_row(1, "entailment"),
                           generic_row(2, "bogus-label"),
                           generic_row(3, "neutral")])
        split = load_dataset(path, "generic-jsonl", skip_malformed=True)
        assert len(split) == 2
        assert split.stats.skipped_malformed == 1

    def test_nfc_normalization_no_case_folding(self, tmp_path):
        path = tmp_path / "d.jsonl"
        # e + combining acute should normalize to the precomposed form
        write_lines(path, [generic_row(1, "entailment", s1="  Café Open  ")])
        split = load_dataset(path, "generic-jsonl")
        assert split.records[0].s1 == "Café Open"

    def test_duplicate_pair_flagged_not_dropped(self, tmp_path):
        path = tmp_path / "d.jsonl"
        write_lines(path, [generic_row(1, "entailment", s1="same", s2="pair"),
                           generic_row(2, "neutral", s1="same", s2="pair")])
        split = load_dataset(path, "generic-jsonl")
        assert len(split) == 2
        assert split.stats.duplicate_pairs == 1

    def test_qqp_tsv(self, tmp_path):
        path = tmp_path / "qqp.tsv"
        write_lines(path, [
            "id\tqid1\tqid2\tquestion1\tquestion2\tis_duplicate",
            "0\t11\t12\thow do i cook rice\thow to cook rice\t1",
            "1\t13\t14\thow do i cook rice\twhat is rice\t0",
        ])
        split = load_dataset(path, "qqp-tsv")
        assert [r.label for r in split] == ["paraphrase", "non-paraphrase"]
        assert split.records[0].id == "0"

    def test_mrpc_tsv_quality_first_column(self, tmp_path):
        path = tmp_path / "mrpc.tsv"
        write_lines(path, [
            "Quality\t#1 ID\t#2 ID\t#1 String\t#2 String",
            "1\t100\t101\tthe deal closed friday\tthe deal was closed on friday",
            "0\t102\t103\tshares rose sharply\tshares fell sharply",
        ])
        split = load_dataset(path, "mrpc-tsv")
        assert [r.label for r in split] == ["paraphrase", "non-paraphrase"]
        assert split.records[0].id == "100-101"

    def test_xnli_tsv_language_filter(self, tmp_path):
        path = tmp_path / "xnli.tsv"
        write_lines(path, [
            "language\tgold_label\tsentence1\tsentence2\tpairID",
            "de\tentailment\tein hund rennt\tein tier rennt\tp1",
            "fr\tneutral\tun chien court\tun animal dort\tp2",
            "de\tcontradiction\tein hund rennt\tkein tier rennt\tp3",
        ])
        split = load_dataset(path, "xnli-tsv", language="de")
        assert len(split) == 2
        assert all(r.language == "de" for r in split)

    def test_mnli_jsonl_genre(self, tmp_path):
        path = tmp_path / "mnli.jsonl"
        write_lines(path, [json.dumps({
            "pairID": "m1", "sentence1": "he spoke on the phone",
            "sentence2": "he was talking", "gold_label": "entailment",
            "genre": "telephone"})])
        split = load_dataset(path, "mnli-jsonl")
        assert split.records[0].genre == "telephone"

    @pytest.mark.parametrize("format_,lines", [
        ("generic-jsonl", [generic_row(1, "entailment"), generic_row(2, "neutral")]),
        ("snli-jsonl", [json.dumps({"pairID": "a", "sentence1": "x y",
                                    "sentence2": "z", "gold_label": "neutral"})]),
    ])
    def test_round_trip_lossless(self, tmp_path, format_, lines):
        src = tmp_path / "src.file"
        write_lines(src, lines)
        split = load_dataset(src, format_)
        out = tmp_path / "canon.jsonl"
        write_jsonl(split.records, out)
        reloaded = load_dataset(out, "generic-jsonl")
        assert [(r.id, r.s1, r.s2, r.label) for r in reloaded] == \
               [(r.id, r.s1, r.s2, r.label) for r in split]


def make_split(n):
    return DatasetSplit(name="syn", records=[
        NLIRecord(id=f"r{i}", premise=f"p {i}", hypothesis=f"h {i}",
                  label="entailment")
        for i in range(n)])


class TestSplitHalf:
    def test_even(self):
        a, b = split_half(make_split(10), seed=7)
        assert len(a) == len(b) == 5
        assert set(a.ids()).isdisjoint(b.ids())
        assert sorted(a.ids() + b.ids()) == sorted(make_split(10).ids())

    def test_odd_larger_half_first(self):
        a, b = split_half(make_split(11), seed=7)
        assert (len(a), len(b)) == (6, 5)

    def test_deterministic(self):
        first = split_half(make_split(30), seed=3)
        second = split_half(make_split(30), seed=3)
        assert first[0].ids() == second[0].ids()
        assert first[1].ids() == second[1].ids()

    def test_empty_rejected(self):
        with pytest.raises(CorpusError):
            split_half(make_split(0), seed=1)

    @given(n=st.integers(1, 60), seed=st.integers(0, 2**31))
    def test_partition_property(self, n, seed):
        split = make_split(n)
        a, b = split_half(split, seed)
        assert sorted(a.ids() + b.ids()) == sorted(split.ids())
        assert abs(len(a) - len(b)) <= 1


class TestCarveValidation:
    def test_mrpc_scale(self):
        reduced, validation = carve_validation(make_split(5801), n=1000, seed=11)
        assert (len(reduced), len(validation)) == (4801, 1000)

    def test_n_equals_size(self):
        reduced, validation = carve_validation(make_split(4), n=4, seed=0)
        assert len(reduced) == 0 and len(validation) == 4

    def test_n_zero_identity(self):
        split = make_split(4)
        reduced, validation = carve_validation(split, n=0, seed=0)
        assert reduced.ids() == split.ids() and len(validation) == 0

    def test_n_too_large(self):
        with pytest.raises(CorpusError):
            carve_validation(make_split(3), n=4, seed=0)

    @given(n=st.integers(0, 40), size=st.integers(1, 40), seed=st.integers(0, 2**31))
    def test_partition_property(self, n, size, seed):
        if n > size:
            n = size
        split = make_split(size)
        reduced, validation = carve_validation(split, n=n, seed=seed)
        assert len(validation) == n
        assert sorted(reduced.ids() + validation.ids()) == sorted(split.ids())


def test_record_json_round_trip():
    record = NLIRecord(id="x", premise="a b", hypothesis="c", label="neutral",
                       genre="fiction", language="de")
    assert record_from_json(record_to_json(record)) == record
