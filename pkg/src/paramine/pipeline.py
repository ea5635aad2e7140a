"""Config-driven staged pipeline with file-only handoff between stages.

Every stage reads artifacts from the output directory (or configured
inputs) and writes its own artifacts back; nothing passes in memory, so
any stage can be rerun alone and a rerun with the same config and seed
is byte-identical.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields as dataclass_fields
from pathlib import Path
from typing import Mapping, Sequence

from paramine.bitext import read_bitext_file
from paramine.counts import build_table, load_table, save_table
from paramine.errors import ParamineError
from paramine.evaluation import evaluate_on_annotated, evaluate_schemes
from paramine.files import (
    read_annotations,
    read_curve,
    read_pairs,
    read_ranked,
    write_curve,
    write_ranked,
    write_report,
)
from paramine.mining import cutoff_size, enumerate_candidates, quality_curve, rank
from paramine.scoring import SYMMETRIC_SCHEMES
from paramine.synth import SyntheticSpec, write_synthetic
from paramine.version import BUILD_ID

STAGES = ("synth", "count", "mine", "curve", "cutoff", "eval")

_LIST_FIELDS = {"pivot_langs", "thresholds", "ks"}


@dataclass(slots=True)
class PipelineConfig:
    target_lang: str = "en"
    pivot_langs: tuple[str, ...] = ("de", "fr", "sv")
    scheme: str = "sum_pmi"
    min_support: int = 1
    short_cutoff: int = 24
    base_threshold: float = 0.4
    short_threshold: float = 0.6
    thresholds: tuple[float, ...] = (0.95, 0.90, 0.75)
    seed: int = 0
    ks: tuple[int, ...] = (10, 50, 100)
    n_groups: int = 150
    noise_rate: float = 0.2
    lines_per_group: int = 12
    # real inputs, lang -> bitext path; empty means synthesize
    bitexts: dict[str, str] = field(default_factory=dict)
    annotations: str = ""

    def __post_init__(self) -> None:
        if not self.pivot_langs:
            raise ParamineError("pivot_langs must be non-empty")
        if self.scheme == "cond_prob":
            raise ParamineError("asymmetric scheme not rankable")
        if self.scheme not in SYMMETRIC_SCHEMES:
            raise ParamineError(f"unknown scheme: {self.scheme!r}")
        for threshold in self.thresholds:
            if not 0 < threshold <= 1:
                raise ParamineError(f"threshold must be in (0, 1], got {threshold}")
        if self.bitexts and sorted(self.bitexts) != sorted(self.pivot_langs):
            raise ParamineError(
                "configured bitexts must cover exactly the pivot languages: "
                f"{sorted(self.bitexts)} vs {sorted(self.pivot_langs)}"
            )


def read_keyvalue(path: str | os.PathLike[str]) -> dict[str, str]:
    """Plain `key=value` lines; blank lines and `#` comments ignored."""
    out: dict[str, str] = {}
    with open(path, encoding="utf-8") as stream:
        for lineno, raw in enumerate(stream, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ParamineError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            out[key.strip()] = value.strip()
    return out


def config_from_mapping(mapping: Mapping[str, str]) -> PipelineConfig:
    known = {f.name: f.type for f in dataclass_fields(PipelineConfig)}
    kwargs: dict[str, object] = {}
    bitexts: dict[str, str] = {}
    for key, value in mapping.items():
        if key.startswith("bitext_"):
            bitexts[key[len("bitext_"):]] = value
            continue
        if key not in known or key == "bitexts":
            raise ParamineError(f"unknown config key: {key!r}")
        if key in _LIST_FIELDS:
            parts = [part.strip() for part in value.split(",") if part.strip()]
            if key == "pivot_langs":
                kwargs[key] = tuple(parts)
            elif key == "ks":
                kwargs[key] = tuple(int(part) for part in parts)
            else:
                kwargs[key] = tuple(float(part) for part in parts)
        elif key in ("min_support", "short_cutoff", "seed", "n_groups", "lines_per_group"):
            kwargs[key] = int(value)
        elif key in ("base_threshold", "short_threshold", "noise_rate"):
            kwargs[key] = float(value)
        else:
            kwargs[key] = value
    if bitexts:
        kwargs["bitexts"] = bitexts
    return PipelineConfig(**kwargs)


def load_config(
    path: str | os.PathLike[str] | None,
    overrides: Mapping[str, str] | None = None,
) -> PipelineConfig:
    mapping: dict[str, str] = read_keyvalue(path) if path else {}
    if overrides:
        mapping.update(overrides)
    return config_from_mapping(mapping)


class Artifacts:
    """Canonical artifact locations inside one output directory."""

    def __init__(self, out_dir: str | os.PathLike[str]):
        self.root = Path(out_dir)

    def bitext(self, lang: str) -> Path:
        return self.root / f"bitext_{lang}.tsv"

    def counts(self, lang: str) -> Path:
        return self.root / f"{lang}.counts"

    @property
    def gold(self) -> Path:
        return self.root / "gold.tsv"

    @property
    def ranked(self) -> Path:
        return self.root / "ranked.tsv"

    @property
    def curve(self) -> Path:
        return self.root / "curve.tsv"

    @property
    def cutoffs(self) -> Path:
        return self.root / "cutoffs.tsv"

    @property
    def report(self) -> Path:
        return self.root / "report.tsv"


def _require(path: Path | str, stage: str) -> None:
    if not os.path.exists(path):
        raise ParamineError(f"missing artifact {path}; run stage '{stage}' first")


def _count_one(in_path: str, lang: str, out_path: str) -> str:
    lines = read_bitext_file(in_path, lang)
    save_table(build_table(lines), out_path)
    return out_path


def _stage_synth(config: PipelineConfig, art: Artifacts) -> None:
    if config.bitexts:
        raise ParamineError("synth stage disabled: real bitexts are configured")
    spec = SyntheticSpec(
        n_groups=config.n_groups,
        n_pivot_langs=len(config.pivot_langs),
        noise_rate=config.noise_rate,
        lines_per_group=config.lines_per_group,
        seed=config.seed,
    )
    manifest = write_synthetic(spec, art.root)
    if len(manifest["langs"]) != len(config.pivot_langs):
        raise ParamineError("synthetic language count does not match pivot_langs")


def _source_bitexts(config: PipelineConfig, art: Artifacts) -> dict[str, str]:
    if config.bitexts:
        return dict(config.bitexts)
    from paramine.synth import PIVOT_LANG_POOL

    langs = PIVOT_LANG_POOL[: len(config.pivot_langs)]
    return {lang: str(art.bitext(lang)) for lang in langs}


def _stage_count(config: PipelineConfig, art: Artifacts, jobs: int) -> None:
    sources = _source_bitexts(config, art)
    for path in sources.values():
        _require(path, "synth")
    tasks = [(path, lang, str(art.counts(lang))) for lang, path in sorted(sources.items())]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as pool:
            futures = [pool.submit(_count_one, *task) for task in tasks]
            for future in futures:
                future.result()
    else:
        for task in tasks:
            _count_one(*task)


def _load_tables(config: PipelineConfig, art: Artifacts):
    sources = _source_bitexts(config, art)
    tables = []
    for lang in sorted(sources):
        path = art.counts(lang)
        _require(path, "count")
        tables.append(load_table(path))
    return tables


def _stage_mine(config: PipelineConfig, art: Artifacts) -> None:
    tables = _load_tables(config, art)
    candidates = enumerate_candidates(tables, min_support=config.min_support)
    ranked = rank(candidates, tables, config.scheme)
    write_ranked(art.ranked, ranked)


def _stage_curve(config: PipelineConfig, art: Artifacts) -> None:
    if not config.annotations:
        raise ParamineError("curve stage needs an 'annotations' path in the config")
    _require(art.ranked, "mine")
    _require(config.annotations, "annotate")
    ranked = read_ranked(art.ranked)
    sample = read_annotations(config.annotations)
    write_curve(art.curve, quality_curve(ranked, sample))


def _stage_cutoff(config: PipelineConfig, art: Artifacts) -> None:
    _require(art.curve, "curve")
    points = read_curve(art.curve)
    with open(art.cutoffs, "w", encoding="utf-8", newline="\n") as out:
        out.write(f"# {BUILD_ID}\n")
        out.write("# threshold\trank\n")
        for threshold in config.thresholds:
            rank_at = cutoff_size(points, threshold)
            out.write(f"{threshold!r}\t{'none' if rank_at is None else rank_at}\n")


def _stage_eval(config: PipelineConfig, art: Artifacts) -> None:
    if os.path.exists(art.gold):
        tables = _load_tables(config, art)
        gold = {tuple(sorted(pair)) for pair in read_pairs(art.gold)}
        reports = evaluate_schemes(tables, gold, SYMMETRIC_SCHEMES, ks=config.ks,
                                   min_support=config.min_support)
        rows = [row for report in reports for row in report.rows()]
    elif config.annotations:
        _require(art.ranked, "mine")
        ranked = read_ranked(art.ranked)
        annotated = read_annotations(config.annotations)
        rows = evaluate_on_annotated(ranked, annotated, ks=config.ks).rows()
    else:
        raise ParamineError(
            f"missing artifact {art.gold}; run stage 'synth' first or configure annotations"
        )
    write_report(art.report, rows)


def run_pipeline(
    config: PipelineConfig,
    out_dir: str | os.PathLike[str],
    stages: Sequence[str] | None = None,
    jobs: int = 1,
) -> dict[str, str]:
    """Run the requested stages in canonical order; returns artifact paths."""
    if stages is None:
        stages = ["count", "mine", "eval"] if config.bitexts else ["synth", "count", "mine", "eval"]
        if config.annotations:
            stages[stages.index("eval"):stages.index("eval")] = ["curve", "cutoff"]
    unknown = [stage for stage in stages if stage not in STAGES]
    if unknown:
        raise ParamineError(f"unknown stages: {unknown}; valid stages are {list(STAGES)}")
    art = Artifacts(out_dir)
    art.root.mkdir(parents=True, exist_ok=True)
    ordered = [stage for stage in STAGES if stage in set(stages)]
    for stage in ordered:
        if stage == "synth":
            _stage_synth(config, art)
        elif stage == "count":
            _stage_count(config, art, jobs)
        elif stage == "mine":
            _stage_mine(config, art)
        elif stage == "curve":
            _stage_curve(config, art)
        elif stage == "cutoff":
            _stage_cutoff(config, art)
        elif stage == "eval":
            _stage_eval(config, art)
    produced = {}
    for name, path in (
        ("ranked", art.ranked),
        ("curve", art.curve),
        ("cutoffs", art.cutoffs),
        ("report", art.report),
        ("gold", art.gold),
    ):
        if os.path.exists(path):
            produced[name] = str(path)
    return produced
