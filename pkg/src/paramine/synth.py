"""Synthetic bitexts with planted paraphrase groups and misalignment noise.

Each group is two target phrases that share pivot translations in every
pivot language; the member pair is gold. Group frequencies follow a Zipf
curve so frequency-driven rankers have something to overfit to. Noise
comes in three flavors, each aimed at a known ranking failure:

  * borrowed pivots: a frequent group reuses another frequent group's
    pivot word (one foreign word covering two meanings), creating
    high-joint cross-group pairs that fool raw joint probability;
  * junk lines: a fresh one-off target aligned to a pivot drawn from a
    large junk pool, so occasional pool reuse links two singleton
    targets, the classic hapax pairs that saturate pointwise mutual
    information on a merged table;
  * shuffled misalignments: a real target aligned to another group's
    pivot, mild background contamination for every scheme.

All three live in a single language at a time, so per-language score
summation keeps its cross-language support advantage.
"""

from __future__ import annotations

import json
import os
import random
from dataclasses import dataclass
from pathlib import Path

from paramine.annotation import canonical_pair
from paramine.bitext import AlignedLine, serialize_line
from paramine.files import write_pairs

PIVOT_LANG_POOL = ("de", "fr", "sv", "ru", "fi", "es", "it", "nl", "pt", "pl")

ZIPF_EXPONENT = 0.9
# groups below this many lines per language get a single pivot word
SMALL_GROUP_LINES = 6
# noise mix: junk share of noise lines; junk pivot pool sized so only a
# fraction of pool words are ever reused (reuse is what creates pairs)
_JUNK_SHARE = 0.35
_JUNK_POOL_FACTOR = 4
# chance that a frequent group borrows a pivot, and the slice of groups
# counted as frequent
_BORROW_CHANCE = 0.3
_FREQUENT_SHARE = 0.25


@dataclass(frozen=True, slots=True)
class SyntheticSpec:
    n_groups: int = 150
    n_pivot_langs: int = 3
    noise_rate: float = 0.2
    lines_per_group: int = 12
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_groups < 1:
            raise ValueError(f"n_groups must be >= 1, got {self.n_groups}")
        if not 1 <= self.n_pivot_langs <= len(PIVOT_LANG_POOL):
            raise ValueError(
                f"n_pivot_langs must be in 1..{len(PIVOT_LANG_POOL)}, got {self.n_pivot_langs}"
            )
        if not 0 <= self.noise_rate < 1:
            raise ValueError(f"noise_rate must be in [0, 1), got {self.noise_rate}")
        if self.lines_per_group < 2:
            raise ValueError(f"lines_per_group must be >= 2, got {self.lines_per_group}")


def generate_synthetic(
    spec: SyntheticSpec,
) -> tuple[dict[str, list[AlignedLine]], set[tuple[str, str]]]:
    """Deterministic (bitexts per pivot language, gold pair set)."""
    rng = random.Random(spec.seed)
    langs = PIVOT_LANG_POOL[: spec.n_pivot_langs]
    weights = [(k + 1) ** -ZIPF_EXPONENT for k in range(spec.n_groups)]
    total_weight = sum(weights)
    budget = spec.lines_per_group * spec.n_groups
    group_lines = [max(2, round(budget * w / total_weight)) for w in weights]
    members = [(f"s{k:03d}a", f"s{k:03d}b") for k in range(spec.n_groups)]
    gold = {canonical_pair(a, b) for a, b in members}
    frequent_cut = max(2, int(spec.n_groups * _FREQUENT_SHARE))
    # borrowing is part of the noise model: the clean limit has no
    # cross-group pivots at all
    borrow_chance = _BORROW_CHANCE if spec.noise_rate > 0 else 0.0

    bitexts: dict[str, list[AlignedLine]] = {}
    for lang in langs:
        lines: list[AlignedLine] = []
        group_pivots: list[tuple[str, ...]] = []
        for k in range(spec.n_groups):
            own = [f"{lang}p{k:03d}x", f"{lang}p{k:03d}y"]
            n_pivots = 1 if group_lines[k] < SMALL_GROUP_LINES else 2
            pivots = own[:n_pivots]
            if (
                n_pivots == 2
                and 0 < k < frequent_cut
                and rng.random() < borrow_chance
            ):
                donor = rng.randrange(k)
                pivots[1] = group_pivots[donor][0]
            group_pivots.append(tuple(pivots))
            for i in range(group_lines[k]):
                lines.append(
                    AlignedLine(
                        target=members[k][i % 2],
                        pivot=pivots[(i // 2) % len(pivots)],
                        pivot_lang=lang,
                    )
                )
        n_planted = len(lines)
        n_noise = (
            round(n_planted * spec.noise_rate / (1 - spec.noise_rate))
            if spec.noise_rate
            else 0
        )
        n_junk = round(n_noise * _JUNK_SHARE)
        junk_pool = [f"{lang}jp{i:04d}" for i in range(max(1, _JUNK_POOL_FACTOR * n_junk))]
        for serial in range(n_junk):
            lines.append(
                AlignedLine(
                    target=f"{lang}jt{serial:04d}",
                    pivot=rng.choice(junk_pool),
                    pivot_lang=lang,
                )
            )
        for _ in range(n_noise - n_junk):
            k_target = rng.choices(range(spec.n_groups), weights=weights)[0]
            k_pivot = rng.choices(range(spec.n_groups), weights=weights)[0]
            lines.append(
                AlignedLine(
                    target=rng.choice(members[k_target]),
                    pivot=rng.choice(group_pivots[k_pivot]),
                    pivot_lang=lang,
                )
            )
        rng.shuffle(lines)
        bitexts[lang] = lines
    return bitexts, gold


def write_synthetic(spec: SyntheticSpec, out_dir: str | os.PathLike[str]) -> dict[str, object]:
    """Write one bitext file per language plus the gold pair set.

    Bitext files stay in the raw two-column input format; gold.tsv is an
    artifact with the usual header. A manifest.json describing the run is
    written alongside and also returned; all paths in it are relative to
    out_dir, so the directory can be moved as a unit.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    bitexts, gold = generate_synthetic(spec)
    files: dict[str, str] = {}
    for lang, lines in bitexts.items():
        name = f"bitext_{lang}.tsv"
        with (out / name).open("w", encoding="utf-8", newline="\n") as handle:
            for line in lines:
                handle.write(serialize_line(line) + "\n")
        files[lang] = name
    write_pairs(out / "gold.tsv", sorted(gold))
    manifest: dict[str, object] = {
        "langs": list(bitexts),
        "bitexts": files,
        "gold": "gold.tsv",
        "n_gold": len(gold),
        "n_lines": sum(len(lines) for lines in bitexts.values()),
        "lines_per_lang": {lang: len(lines) for lang, lines in bitexts.items()},
    }
    with (out / "manifest.json").open("w", encoding="utf-8") as handle:
        json.dump(manifest, handle, indent=2, sort_keys=True)
        handle.write("\n")
    return manifest
