"""Command line interface: each pipeline step as a composable subcommand."""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from paramine.annotation import canonical_pair, export_sets, disjoint_split, relative_edit_filter
from paramine.bitext import dedupe_lines, partition_bitext, read_bitext_file
from paramine.counts import build_table, load_table, merge_tables, save_table
from paramine.errors import NoCooccurrenceError, ParamineError, UnknownPhraseError
from paramine.evaluation import evaluate_on_annotated, precision_at_k
from paramine.files import (
    read_annotations,
    read_curve,
    read_pairs,
    read_ranked,
    write_curve,
    write_pairs,
    write_ranked,
    write_report,
    write_scored,
)
from paramine.mining import cutoff_size, enumerate_candidates, quality_curve, rank
from paramine.pipeline import load_config, read_keyvalue, run_pipeline
from paramine.scoring import SCHEMES, score_pair
from paramine.service import TaskBoard, adjudicate_store, build_server, load_queue
from paramine.store import JudgmentStore
from paramine.synth import SyntheticSpec, write_synthetic
from paramine.version import BUILD_ID


def _cmd_ingest(args: argparse.Namespace) -> int:
    skips: list[tuple[int, str]] = []
    lines = read_bitext_file(args.in_file, args.pivot_lang, skips=skips)
    removed: list[object] = []
    if args.dedupe:
        lines = dedupe_lines(lines, removed=removed)
    counts = partition_bitext(lines, args.out_dir)
    total = sum(counts.values())
    print(
        f"{args.target_lang}-{args.pivot_lang}: {total} lines "
        f"(train {counts['train']}, dev {counts['dev']}, test {counts['test']}), "
        f"skipped {len(skips)}, deduped {len(removed)}"
    )
    return 0


def _cmd_count(args: argparse.Namespace) -> int:
    def read_all():
        for path in args.in_files:
            yield from read_bitext_file(path, args.pivot_lang)

    table = build_table(read_all())
    save_table(table, args.out)
    print(
        f"{args.out}: {table.n_lines} lines, {len(table.target_counts)} target phrases, "
        f"{len(table.pivot_counts)} pivot phrases"
    )
    return 0


def _cmd_score(args: argparse.Namespace) -> int:
    tables = [load_table(path) for path in args.tables.split(",")]
    pairs = read_pairs(args.pairs)
    merged = None
    if args.scheme != "sum_pmi":
        merged = tables[0] if len(tables) == 1 else merge_tables(tables)
    rows = []
    skipped = 0
    for phrase1, phrase2 in pairs:
        try:
            score = score_pair(args.scheme, tables, phrase1, phrase2, merged=merged)
        except (UnknownPhraseError, NoCooccurrenceError):
            skipped += 1
            continue
        rows.append((score, phrase1, phrase2))
    write_scored(args.out, args.scheme, rows)
    print(f"{args.out}: scored {len(rows)} pairs under {args.scheme}, skipped {skipped}")
    return 0


def _cmd_mine(args: argparse.Namespace) -> int:
    tables = [load_table(path) for path in args.tables.split(",")]
    candidates = enumerate_candidates(tables, min_support=args.min_support)
    ranked = rank(candidates, tables, args.scheme)
    write_ranked(args.out, ranked)
    print(f"{args.out}: {len(ranked.entries)} candidates ranked under {args.scheme}")
    return 0


def _cmd_curve(args: argparse.Namespace) -> int:
    ranked = read_ranked(args.ranked)
    sample = read_annotations(args.annotations)
    points = quality_curve(ranked, sample)
    write_curve(args.out, points)
    print(f"{args.out}: {len(points)} annotated points over {len(ranked.entries)} candidates")
    return 0


def _cmd_cutoff(args: argparse.Namespace) -> int:
    points = read_curve(args.curve)
    thresholds = [float(part) for part in args.thresholds.split(",") if part]
    lines = []
    for threshold in thresholds:
        rank_at = cutoff_size(points, threshold)
        lines.append(f"{threshold!r}\t{'none' if rank_at is None else rank_at}")
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as out:
            out.write(f"# {BUILD_ID}\n# threshold\trank\n")
            out.writelines(line + "\n" for line in lines)
    else:
        for line in lines:
            print(line)
    return 0


def _cmd_filter(args: argparse.Namespace) -> int:
    pairs = read_pairs(args.pairs)
    kept = [
        pair
        for pair in pairs
        if relative_edit_filter(
            pair[0],
            pair[1],
            base_threshold=args.base_threshold,
            short_cutoff=args.short_cutoff,
            short_threshold=args.short_threshold,
        )
    ]
    write_pairs(args.out, kept)
    print(f"{args.out}: kept {len(kept)} of {len(pairs)} pairs")
    return 0


def _cmd_split(args: argparse.Namespace) -> int:
    candidates = read_pairs(args.candidates)
    train = {canonical_pair(*pair) for path in args.train for pair in read_pairs(path)}
    dev = {canonical_pair(*pair) for path in args.dev for pair in read_pairs(path)}
    kept = disjoint_split(candidates, train, dev, args.target)
    write_pairs(args.out, kept)
    print(f"{args.out}: {len(kept)} of {len(candidates)} candidates kept for {args.target}")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    queue = load_queue(args.queue, shuffle_seed=args.shuffle)
    with JudgmentStore(args.store) as store:
        if store.truncated_bytes:
            print(
                f"warning: truncated {store.truncated_bytes} bytes of torn write "
                f"from {args.store}",
                file=sys.stderr,
            )
        board = TaskBoard(queue, store, lease_seconds=args.lease_seconds)
        server = build_server(
            board,
            host=args.host,
            port=args.port,
            static_dir=args.static_dir,
            quiet=not args.verbose,
        )
        host, port = server.server_address[:2]
        print(f"serving {len(queue)} pairs on http://{host}:{port}/", flush=True)
        try:
            server.serve_forever()
        except KeyboardInterrupt:
            pass
        finally:
            server.server_close()
    return 0


def _cmd_adjudicate(args: argparse.Namespace) -> int:
    with JudgmentStore(args.store) as store:
        labels = adjudicate_store(store)
    lines = [f"{pid}\t{label}" for pid, label in labels.items()]
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as out:
            out.write(f"# {BUILD_ID}\n# pair_id\tlabel\n")
            out.writelines(line + "\n" for line in lines)
        print(f"{args.out}: {len(lines)} adjudicated pairs")
    else:
        for line in lines:
            print(line)
    return 0


def _cmd_export(args: argparse.Namespace) -> int:
    queue = load_queue(args.queue)
    by_id = {pair.pair_id: pair for pair in queue}
    with JudgmentStore(args.store) as store:
        rows = []
        unknown = 0
        for pid in sorted(store.by_pair):
            judgments = store.judgments_for(pid)
            if len(judgments) != 2:
                continue
            entry = by_id.get(pid)
            if entry is None:
                unknown += 1
                continue
            lo, hi = canonical_pair(entry.phrase1, entry.phrase2)
            rows.append((lo, hi, judgments[0].category, judgments[1].category))
    kept, summary = export_sets(rows, args.split, args.out, header=BUILD_ID)
    discarded = len(rows) - kept
    message = f"{args.out}: kept {kept}, discarded {discarded} of {len(rows)} adjudicated pairs"
    if unknown:
        message += f" ({unknown} judged pairs not in this queue)"
    print(message)
    return 0


_SYNTH_KEYS = {
    "n_groups": int,
    "n_pivot_langs": int,
    "noise_rate": float,
    "lines_per_group": int,
    "seed": int,
}


def _cmd_synth(args: argparse.Namespace) -> int:
    kwargs: dict[str, object] = {}
    if args.spec:
        for key, value in read_keyvalue(args.spec).items():
            if key not in _SYNTH_KEYS:
                raise ParamineError(f"unknown synthetic spec key: {key!r}")
            kwargs[key] = _SYNTH_KEYS[key](value)
    if args.seed is not None:
        kwargs["seed"] = args.seed
    spec = SyntheticSpec(**kwargs)
    manifest = write_synthetic(spec, args.out_dir)
    lines = " ".join(f"{lang}={n}" for lang, n in sorted(manifest["lines_per_lang"].items()))
    print(f"{args.out_dir}: {manifest['n_gold']} gold pairs, lines {lines}")
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    if bool(args.gold) == bool(args.annotations):
        raise ParamineError("exactly one of --gold or --annotations is required")
    ranked = read_ranked(args.ranked)
    ks = [int(part) for part in args.k.split(",") if part]
    if args.gold:
        gold = {canonical_pair(*pair) for pair in read_pairs(args.gold)}
        if not gold:
            raise ParamineError(f"{args.gold}: empty gold set")
        rows = []
        for k in ks:
            precision, truncated = precision_at_k(ranked, gold, k)
            rows.append((ranked.scheme, k, precision))
            if truncated:
                print(f"warning: only {len(ranked.entries)} candidates at k={k}", file=sys.stderr)
    else:
        if args.split == "test" and not args.final:
            raise ParamineError("test split is for final evaluations; pass --final to proceed")
        annotated = read_annotations(args.annotations)
        rows = evaluate_on_annotated(ranked, annotated, ks=ks).rows()
    write_report(args.out, rows)
    print(f"{args.out}: {len(rows)} report rows for {ranked.scheme}")
    return 0


def _cmd_pipeline(args: argparse.Namespace) -> int:
    overrides = {}
    for item in args.set or []:
        if "=" not in item:
            raise ParamineError(f"--set expects key=value, got {item!r}")
        key, _, value = item.partition("=")
        overrides[key.strip()] = value.strip()
    config = load_config(args.config, overrides)
    stages = args.stages.split(",") if args.stages else None
    produced = run_pipeline(config, args.out_dir, stages=stages, jobs=args.jobs)
    for name in sorted(produced):
        print(f"{name}: {produced[name]}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paramine",
        description="Mine, rank, annotate, and evaluate sentential paraphrase pairs "
        "linked through pivot-language translations.",
    )
    parser.add_argument("--version", action="version", version=BUILD_ID)
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("ingest", help="parse and partition a bitext file by document year")
    p.add_argument("--target-lang", required=True)
    p.add_argument("--pivot-lang", required=True)
    p.add_argument("--in", dest="in_file", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--dedupe", action="store_true",
                   help="collapse consecutive duplicate lines")
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("count", help="build a co-occurrence count table from bitext files")
    p.add_argument("--in", dest="in_files", required=True, nargs="+")
    p.add_argument("--pivot-lang", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("score", help="score explicit phrase pairs under one scheme")
    p.add_argument("--scheme", required=True, choices=SCHEMES)
    p.add_argument("--tables", required=True, help="comma-separated count table files")
    p.add_argument("--pairs", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_score)

    p = sub.add_parser("mine", help="enumerate and rank candidate paraphrase pairs")
    p.add_argument("--tables", required=True, help="comma-separated count table files")
    p.add_argument("--scheme", default="sum_pmi", choices=SCHEMES)
    p.add_argument("--min-support", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_mine)

    p = sub.add_parser("curve", help="cumulative quality curve from an annotated sample")
    p.add_argument("--ranked", required=True)
    p.add_argument("--annotations", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_curve)

    p = sub.add_parser("cutoff", help="corpus sizes at accuracy thresholds from a curve")
    p.add_argument("--curve", required=True)
    p.add_argument("--thresholds", default="0.95,0.90,0.75")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_cutoff)

    p = sub.add_parser("filter", help="keep pairs passing the relative edit-distance filter")
    p.add_argument("--pairs", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--base-threshold", type=float, default=0.4)
    p.add_argument("--short-cutoff", type=int, default=24)
    p.add_argument("--short-threshold", type=float, default=0.6)
    p.set_defaults(func=_cmd_filter)

    p = sub.add_parser("split", help="drop candidates already present in earlier sets")
    p.add_argument("--candidates", required=True)
    p.add_argument("--train", action="append", default=[],
                   help="pairs file(s) whose pairs are excluded (repeatable)")
    p.add_argument("--dev", action="append", default=[],
                   help="pairs file(s) excluded when --target test (repeatable)")
    p.add_argument("--target", required=True, choices=("dev", "test"))
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_split)

    p = sub.add_parser("serve", help="run the two-annotator HTTP annotation service")
    p.add_argument("--queue", required=True)
    p.add_argument("--store", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8765)
    p.add_argument("--static-dir", help="directory of UI assets served at /")
    p.add_argument("--shuffle", type=int, help="shuffle the queue with this seed")
    p.add_argument("--lease-seconds", type=float, default=24 * 3600.0)
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("adjudicate", help="final labels for every fully judged pair")
    p.add_argument("--store", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_adjudicate)

    p = sub.add_parser("export", help="write an annotated set file with its summary trailer")
    p.add_argument("--store", required=True)
    p.add_argument("--queue", required=True)
    p.add_argument("--split", required=True, choices=("dev", "test"))
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_export)

    p = sub.add_parser("synth", help="generate synthetic bitexts with planted paraphrases")
    p.add_argument("--spec", help="key=value file of generator settings")
    p.add_argument("--seed", type=int)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("eval", help="precision report for a ranked list")
    p.add_argument("--ranked", required=True)
    p.add_argument("--gold", help="gold pairs file (synthetic ground truth)")
    p.add_argument("--annotations", help="annotated set file (human labels)")
    p.add_argument("--split", default="dev", choices=("dev", "test"))
    p.add_argument("--final", action="store_true",
                   help="allow evaluation on the test split")
    p.add_argument("--k", default="10,50,100")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("pipeline", help="run the staged pipeline from a config file")
    p.add_argument("--config", help="key=value config file")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--stages", help="comma-separated subset of: synth,count,mine,curve,cutoff,eval")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--set", action="append", metavar="KEY=VALUE",
                   help="override a config value (repeatable)")
    p.set_defaults(func=_cmd_pipeline)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "func"):
        parser.print_help()
        return 2
    try:
        return args.func(args)
    except (ParamineError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
