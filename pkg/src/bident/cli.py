"""Command-line entry point.

One subcommand per pipeline verb: extract, clean, evaluate, sample,
report, score. A TOML config file can supply any option; flags always
override it, and every run writes a manifest recording the merged
effective configuration.

Exit codes: 2 config/validation failure, 3 backend failure, 4 I/O
failure. Failed runs leave no partial output files behind.
"""
from __future__ import annotations

import contextlib
import json
import os
import sys
from pathlib import Path

import click

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .cleaning import clean
from .corpus import CorpusError, load_dataset
from .evaluation import (
    SheetError,
    confusion,
    hand_precision,
    metrics,
    overlap,
    read_sheet,
    render_report,
    report_json,
    report_text,
    sample_for_validation,
    similarity_stats,
    write_sheet,
)
from .extraction import (
    RuleError,
    extract,
    load_extraction_jsonl,
    parse_rule,
    write_extraction_jsonl,
)
from .manifest import build_manifest, dump_manifest, load_manifest
from .records import RecordError, write_jsonl
from .scoring import ScorerError, build_scorer

EXIT_CONFIG = 2
EXIT_BACKEND = 3
EXIT_IO = 4


def _diag(**event) -> None:
    """Structured diagnostics line on stderr."""
    print(json.dumps(event, ensure_ascii=False, sort_keys=True), file=sys.stderr)


def _fail(code: int, message: str):
    _diag(event="error", message=message)
    sys.exit(code)


def _load_config(path) -> dict:
    if path is None:
        return {}
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except (OSError, tomllib.TOMLDecodeError) as exc:
        _fail(EXIT_CONFIG, f"cannot read config {path}: {exc}")


def _merged(ctx, **flags) -> dict:
    """Flags override config-file keys; None flags fall back to config."""
    config = dict(ctx.obj or {})
    for key, value in flags.items():
        if value is not None:
            config[key] = value
    return config


def _require(config: dict, *keys):
    for key in keys:
        if config.get(key) is None:
            _fail(EXIT_CONFIG, f"missing required option --{key.replace('_', '-')}")


def _load_split(config: dict):
    try:
        split = load_dataset(
            config["dataset"], config["format"],
            language=config.get("language", "en"),
            skip_malformed=bool(config.get("skip_malformed", False)),
        )
    except (CorpusError, RecordError) as exc:
        _fail(EXIT_CONFIG, str(exc))
    _diag(event="load", dataset=str(config["dataset"]),
          **split.stats.as_dict())
    return split


def _build_scorer(config: dict, task: str):
    try:
        return build_scorer(config["scorer"], task)
    except (ScorerError, ValueError) as exc:
        _fail(EXIT_CONFIG, str(exc))


def _parse_rule(config: dict):
    try:
        return parse_rule(config.get("rule", "argmax"))
    except RuleError as exc:
        _fail(EXIT_CONFIG, str(exc))


@contextlib.contextmanager
def _atomic_outputs(out_dir: Path):
    """Stage output files and publish them only if the run succeeds."""
    staged: dict[str, Path] = {}

    def stage(name: str) -> Path:
        tmp = out_dir / f".{name}.tmp"
        staged[name] = tmp
        return tmp

    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        yield stage
    except ScorerError as exc:
        for tmp in staged.values():
            tmp.unlink(missing_ok=True)
        _fail(EXIT_BACKEND, str(exc))
    except OSError as exc:
        for tmp in staged.values():
            tmp.unlink(missing_ok=True)
        _fail(EXIT_IO, str(exc))
    except (RuleError, RecordError, CorpusError) as exc:
        for tmp in staged.values():
            tmp.unlink(missing_ok=True)
        _fail(EXIT_CONFIG, str(exc))
    for name, tmp in staged.items():
        os.replace(tmp, out_dir / name)


def _dataset_info(config: dict) -> dict:
    return {
        "name": Path(config["dataset"]).stem,
        "path": str(config["dataset"]),
        "format": config["format"],
        "language": config.get("language", "en"),
    }


@click.group()
@click.option("--config", type=click.Path(), default=None,
              help="TOML config file; flags override its keys.")
@click.version_option()
@click.pass_context
def main(ctx, config):
    ctx.obj = _load_config(config)


@main.command("extract")
@click.option("--dataset", type=str)
@click.option("--format", "format_", type=str)
@click.option("--language", type=str)
@click.option("--scorer", type=str)
@click.option("--rule", type=str)
@click.option("--keep", type=click.Choice(["entailment", "neutral"]))
@click.option("--out", type=str)
@click.option("--workers", type=int)
@click.option("--seed", type=int)
@click.option("--skip-malformed", "skip_malformed", is_flag=True, default=None)
@click.option("--negatives", is_flag=True, default=None,
              help="Also emit non-extracted pairs with their predicted class.")
@click.pass_context
def extract_cmd(ctx, dataset, format_, language, scorer, rule, keep, out,
                workers, seed, skip_malformed, negatives):
    """Mine paraphrase pairs out of an NLI dataset."""
    config = _merged(ctx, dataset=dataset, format=format_, language=language,
                     scorer=scorer, rule=rule, keep=keep, out=out,
                     workers=workers, seed=seed, skip_malformed=skip_malformed,
                     negatives=negatives)
    _require(config, "dataset", "format", "scorer", "out")
    split = _load_split(config)
    engine = _build_scorer(config, "nli-3way")
    decision = _parse_rule(config)
    keep = config.get("keep", "entailment")
    try:
        decision.validate(3)
        if keep == "neutral" and decision.kind != "argmax":
            raise RuleError("keep=neutral supports only the argmax rule")
    except RuleError as exc:
        _fail(EXIT_CONFIG, str(exc))

    out_dir = Path(config["out"])
    with _atomic_outputs(out_dir) as stage:
        result = extract(split, engine, rule=decision, keep=keep,
                         workers=int(config.get("workers", 1)),
                         collect_negatives=bool(config.get("negatives", False)))
        write_extraction_jsonl(result.records, stage("extracted.jsonl"))
        if config.get("negatives"):
            with open(stage("negatives.jsonl"), "w", encoding="utf-8") as fh:
                for record in result.negatives:
                    fh.write(json.dumps(record.as_dict(), ensure_ascii=False,
                                        sort_keys=True) + "\n")
        manifest = build_manifest(
            mode="extract", dataset=_dataset_info(config),
            scorer=engine.descriptor.as_dict(), rule=str(decision),
            seed=config.get("seed"), counts=result.counts,
            keep=keep, load_stats=split.stats.as_dict(),
            truncation_count=getattr(engine, "truncation_count", 0),
        )
        with open(stage("manifest.json"), "w", encoding="utf-8") as fh:
            fh.write(dump_manifest(manifest))
    _diag(event="extract", **result.counts)


@main.command("clean")
@click.option("--dataset", type=str)
@click.option("--format", "format_", type=str)
@click.option("--language", type=str)
@click.option("--scorer", type=str)
@click.option("--rule", type=str)
@click.option("--both-directions", "both_directions", is_flag=True, default=None)
@click.option("--out", type=str)
@click.option("--workers", type=int)
@click.option("--seed", type=int)
@click.option("--skip-malformed", "skip_malformed", is_flag=True, default=None)
@click.pass_context
def clean_cmd(ctx, dataset, format_, language, scorer, rule, both_directions,
              out, workers, seed, skip_malformed):
    """Remove asymmetric (false) paraphrases from a paraphrase dataset."""
    config = _merged(ctx, dataset=dataset, format=format_, language=language,
                     scorer=scorer, rule=rule, both_directions=both_directions,
                     out=out, workers=workers, seed=seed,
                     skip_malformed=skip_malformed)
    _require(config, "dataset", "format", "scorer", "out")
    split = _load_split(config)
    engine = _build_scorer(config, "paraphrase-2way")
    decision = _parse_rule(config)
    try:
        decision.validate(2)
    except RuleError as exc:
        _fail(EXIT_CONFIG, str(exc))

    out_dir = Path(config["out"])
    with _atomic_outputs(out_dir) as stage:
        result = clean(split, engine, rule=decision,
                       both_directions=bool(config.get("both_directions", False)),
                       workers=int(config.get("workers", 1)))
        write_jsonl(result.cleaned, stage("cleaned.jsonl"))
        with open(stage("removed.jsonl"), "w", encoding="utf-8") as fh:
            for record in result.removed:
                fh.write(json.dumps(record.as_dict(), ensure_ascii=False,
                                    sort_keys=True) + "\n")
        manifest = build_manifest(
            mode="clean", dataset=_dataset_info(config),
            scorer=engine.descriptor.as_dict(), rule=str(decision),
            seed=config.get("seed"), counts=result.counts,
            load_stats=split.stats.as_dict(),
            truncation_count=getattr(engine, "truncation_count", 0),
        )
        with open(stage("manifest.json"), "w", encoding="utf-8") as fh:
            fh.write(dump_manifest(manifest))
    _diag(event="clean", **result.counts)


@main.command("evaluate")
@click.option("--dataset", type=str)
@click.option("--format", "format_", type=str)
@click.option("--language", type=str)
@click.option("--scorer", type=str)
@click.option("--task", type=click.Choice(["nli-3way", "paraphrase-2way"]))
@click.option("--positive", type=str,
              help="Positive class; defaults to entailment / non-paraphrase.")
@click.option("--workers", type=int)
@click.option("--out", type=str)
@click.option("--similarity", type=str,
              help="Instead: similarity diagnostics over an extraction JSONL.")
@click.option("--skip-malformed", "skip_malformed", is_flag=True, default=None)
@click.pass_context
def evaluate_cmd(ctx, dataset, format_, language, scorer, task, positive,
                 workers, out, similarity, skip_malformed):
    """Score a gold-labeled dataset and report precision/recall, or compute
    similarity diagnostics over extracted pairs."""
    config = _merged(ctx, dataset=dataset, format=format_, language=language,
                     scorer=scorer, task=task, positive=positive,
                     workers=workers, out=out, similarity=similarity,
                     skip_malformed=skip_malformed)
    if config.get("similarity"):
        try:
            records = load_extraction_jsonl(config["similarity"])
        except (OSError, KeyError, ValueError) as exc:
            _fail(EXIT_CONFIG, f"cannot read {config['similarity']}: {exc}")
        stats = similarity_stats(records)
        click.echo(json.dumps(stats.as_dict(), indent=2, sort_keys=True))
        return

    _require(config, "dataset", "format", "scorer")
    task = config.get("task", "nli-3way")
    positive = config.get("positive") or (
        "entailment" if task == "nli-3way" else "non-paraphrase")
    split = _load_split(config)
    engine = _build_scorer(config, task)
    if not split.records:
        _fail(EXIT_CONFIG, "dataset is empty")
    pairs = [(r.s1, r.s2) for r in split.records]
    try:
        dists = engine.score_batch(pairs, workers=int(config.get("workers", 1)))
    except ScorerError as exc:
        _fail(EXIT_BACKEND, str(exc))
    gold = [r.label for r in split.records]
    predicted = [d.argmax() for d in dists]
    counts = confusion(gold, predicted, positive)
    result = metrics(counts, positive_class=positive)
    manifest = build_manifest(
        mode="evaluate", dataset=_dataset_info(config),
        scorer=engine.descriptor.as_dict(), rule="argmax", seed=None,
        counts={"evaluated": counts.total, **counts.as_dict()},
        metrics=result.as_dict(),
    )
    if config.get("out"):
        out_dir = Path(config["out"])
        with _atomic_outputs(out_dir) as stage:
            with open(stage("manifest.json"), "w", encoding="utf-8") as fh:
                fh.write(dump_manifest(manifest))
    click.echo(json.dumps({"confusion": counts.as_dict(),
                           "metrics": result.as_dict()},
                          indent=2, sort_keys=True))


@main.command("sample")
@click.option("--input", "input_", type=str,
              help="Extraction JSONL to sample from.")
@click.option("--n", type=int)
@click.option("--seed", type=int)
@click.option("--out", type=str, help="Annotation sheet TSV to write.")
@click.option("--score", "score_sheet", type=str,
              help="Instead: compute hand precision of a completed sheet.")
@click.pass_context
def sample_cmd(ctx, input_, n, seed, out, score_sheet):
    """Draw a manual-validation sample, or score a completed sheet."""
    config = _merged(ctx, input=input_, n=n, seed=seed, out=out,
                     score=score_sheet)
    if config.get("score"):
        try:
            ratio = hand_precision(read_sheet(config["score"]))
        except (OSError, SheetError) as exc:
            _fail(EXIT_CONFIG, str(exc))
        click.echo(json.dumps({"hand_precision": ratio}))
        return
    _require(config, "input", "n", "seed", "out")
    try:
        records = load_extraction_jsonl(config["input"])
    except (OSError, KeyError, ValueError) as exc:
        _fail(EXIT_CONFIG, f"cannot read {config['input']}: {exc}")
    sampled = sample_for_validation(records, int(config["n"]), int(config["seed"]))
    try:
        write_sheet(sampled, config["out"])
    except OSError as exc:
        _fail(EXIT_IO, str(exc))
    _diag(event="sample", requested=int(config["n"]), written=len(sampled))


@main.command("report")
@click.argument("manifests", nargs=-1, type=click.Path())
@click.option("--sheet", "sheets", multiple=True, metavar="RULE=PATH",
              help="Attach hand precision from a completed sheet to rows "
                   "with the given rule.")
@click.option("--overlap", "overlap_runs", multiple=True, metavar="LANG=PATH",
              help="Instead: overlap report across per-language extraction "
                   "JSONL files.")
@click.option("--out", type=str, help="Write the JSON report here too.")
def report_cmd(manifests, sheets, overlap_runs, out):
    """Render extraction/cleaning run manifests as tables, or compute
    cross-lingual overlap."""
    if overlap_runs:
        runs = {}
        for item in overlap_runs:
            lang, sep, path = item.partition("=")
            if not sep:
                _fail(EXIT_CONFIG, f"bad --overlap value {item!r}")
            try:
                runs[lang] = load_extraction_jsonl(path)
            except (OSError, KeyError, ValueError) as exc:
                _fail(EXIT_CONFIG, f"cannot read {path}: {exc}")
        try:
            result = overlap(runs)
        except ValueError as exc:
            _fail(EXIT_CONFIG, str(exc))
        payload = json.dumps(result.as_dict(), indent=2, sort_keys=True)
        click.echo(payload)
        if out:
            Path(out).write_text(payload + "\n", encoding="utf-8")
        return

    if not manifests:
        _fail(EXIT_CONFIG, "need at least one manifest (or --overlap runs)")
    hand = {}
    for item in sheets:
        rule, sep, path = item.partition("=")
        if not sep:
            _fail(EXIT_CONFIG, f"bad --sheet value {item!r}")
        try:
            hand[rule] = hand_precision(read_sheet(path))
        except (OSError, SheetError) as exc:
            _fail(EXIT_CONFIG, str(exc))
    loaded = []
    for path in manifests:
        try:
            manifest = load_manifest(path)
        except (OSError, ValueError) as exc:
            _fail(EXIT_CONFIG, f"cannot read manifest {path}: {exc}")
        if manifest.get("rule") in hand:
            manifest["hand_precision"] = hand[manifest["rule"]]
        loaded.append(manifest)
    try:
        report = render_report(loaded)
    except (KeyError, ValueError) as exc:
        _fail(EXIT_CONFIG, f"bad manifest: {exc}")
    click.echo(report_text(report))
    if out:
        try:
            Path(out).write_text(report_json(report) + "\n", encoding="utf-8")
        except OSError as exc:
            _fail(EXIT_IO, str(exc))


@main.command("score")
@click.option("--scorer", type=str, required=True)
@click.option("--task", type=click.Choice(["nli-3way", "paraphrase-2way"]),
              default="nli-3way")
@click.option("--s1", type=str, required=True)
@click.option("--s2", type=str, required=True)
@click.option("--reversed", "reversed_", is_flag=True,
              help="Score (s2, s1) instead of (s1, s2).")
def score_cmd(scorer, task, s1, s2, reversed_):
    """Ad-hoc scoring of one pair, for debugging backends."""
    try:
        engine = build_scorer(scorer, task)
    except (ScorerError, ValueError) as exc:
        _fail(EXIT_CONFIG, str(exc))
    try:
        if reversed_:
            dist = engine.score_reversed([(s1, s2)])[0]
        else:
            dist = engine.score_batch([(s1, s2)])[0]
    except ScorerError as exc:
        _fail(EXIT_BACKEND, str(exc))
    click.echo(json.dumps(dist.probabilities, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
