#!/usr/bin/env python3
"""
kouter command line: generate k-outerplanar instances, decompose them,
validate decompositions and time the pipelines.

Usage:
  kouter gen --k 3 --n 300 --seed 42 -o g.emb
  kouter gen --canned fig2 -o fig2.emb
  kouter index g.emb --layers
  kouter tree g.emb -o g.td --verify --stats
  kouter branch g.emb -o g.bd --verify --dump-forest g.forest
  kouter check-td g.emb g.td
  kouter check-bd g.emb g.bd
  kouter oracle-tw small.emb
  kouter oracle-bw small.emb
  kouter bench --ks 1 2 3 --ns 1024 2048 --repeats 5 --csv bench.csv

Notes:
- Reports go to stdout as one `key=value` per line, or as JSON with --json.
- Status lines ([info], [ok], [warn], ...) go to stderr and, with --log, to a file.
- Any library error or failed check exits with status 1 and an `[error]` line.
- Defaults for `gen` and `bench` come from configs/defaults.json (or --config);
  explicit flags win.
"""

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from tqdm import tqdm

from . import __version__
from .bench import ratio_failures, run_bench
from .branch_decomposition import run_branch_pipeline
from .config import load_config, resolve
from .embedding_analysis import compute_layers
from .errors import KouterError
from .formats import read_bd, read_emb, read_td, write_bd, write_emb, write_td
from .generator import GenSpec, canned, generate, generate_many
from .logs import configure_logging, log_message, tag
from .spanning_forest import dump_forest_lines
from .tree_decomposition import FrontEnd, front_end, run_tree_pipeline
from .verify import check_bd, check_td, oracle_branchwidth, oracle_treewidth, remember_numbers


# ------------------------------- Reporting -------------------------------- #

@dataclass
class RunReport:
    command: str
    values: Dict[str, Any] = field(default_factory=dict)
    ok: bool = True

    def add(self, key: str, value: Any) -> None:
        self.values[key] = value

    def add_timings(self, timings: Dict[str, float]) -> None:
        for phase, seconds in timings.items():
            self.values[f"time_{phase}"] = round(seconds, 6)

    def to_lines(self) -> List[str]:
        lines = [f"command={self.command}"]
        for key, value in self.values.items():
            if isinstance(value, (list, tuple)):
                value = " ".join(str(x) for x in value)
            elif isinstance(value, dict):
                value = ",".join(f"{a}:{b}" for a, b in value.items())
            elif isinstance(value, bool):
                value = str(value).lower()
            lines.append(f"{key}={value}")
        return lines

    def to_json(self) -> str:
        return json.dumps({"command": self.command, **self.values}, indent=2, ensure_ascii=False)


def _status(args: argparse.Namespace, kind: str, message: str) -> None:
    log_message(tag(kind, message), getattr(args, "log", None), err=True)


def _emit(args: argparse.Namespace, report: RunReport) -> None:
    if args.json:
        print(report.to_json())
    else:
        print("\n".join(report.to_lines()))


def _forest_stats(report: RunReport, front: FrontEnd) -> None:
    stats = front.record.stats()
    for key, value in stats.items():
        report.add(key, value)
    report.add("k_prime", front.trace.k_prime)
    rr = remember_numbers(front.expanded, front.forest.forest_pairs())
    report.add("vr", rr.vr)
    report.add("er", rr.er)
    report.add("fill_bound", max(rr.vr, rr.er + 1))


def _dump_forest(args: argparse.Namespace, front: FrontEnd) -> None:
    path = args.dump_forest
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)
    lines = dump_forest_lines(front.expanded, front.forest, front.trace)
    with open(path, "w", encoding="utf-8") as f:
        f.write("\n".join(lines) + ("\n" if lines else ""))
    _status(args, "ok", f"Forest dump written to {path}")


# ------------------------------- Subcommands ------------------------------ #

def cmd_gen(args: argparse.Namespace) -> RunReport:
    report = RunReport("gen")
    if args.canned:
        emb = canned(args.canned)
        write_emb(args.output, emb, [f"kouter canned {args.canned}"])
        report.add("name", args.canned)
        report.add("n", emb.n)
        report.add("m", emb.m)
        report.add("k", compute_layers(emb).index_k)
        report.add("output", args.output)
        _status(args, "ok", f"Wrote {args.output}")
        return report

    config = load_config(args.config)
    spec = GenSpec(
        k=resolve(config, "gen", "k", args.k),
        n_target=resolve(config, "gen", "n", args.n),
        seed=resolve(config, "gen", "seed", args.seed),
        chord_density=resolve(config, "gen", "chords", args.chords),
        spoke_density=resolve(config, "gen", "spokes", args.spokes),
        max_retries=resolve(config, "gen", "max_retries", args.max_retries),
    )
    header = f"kouter gen k={spec.k} n={spec.n_target} seed={spec.seed} chords={spec.chord_density} spokes={spec.spoke_density}"

    if args.count <= 1:
        emb = generate(spec)
        write_emb(args.output, emb, [header])
        outputs = [args.output]
        sizes = [(emb.n, emb.m)]
    else:
        stem, ext = os.path.splitext(args.output)
        outputs, sizes = [], []
        for i, emb in enumerate(tqdm(generate_many(spec, args.count), total=args.count, desc="Instances")):
            path = f"{stem}_{i:03d}{ext or '.emb'}"
            write_emb(path, emb, [f"{header} instance={i}"])
            outputs.append(path)
            sizes.append((emb.n, emb.m))

    report.add("k", spec.k)
    report.add("seed", spec.seed)
    report.add("count", len(outputs))
    report.add("n", [n for n, _ in sizes])
    report.add("m", [m for _, m in sizes])
    report.add("output", outputs)
    _status(args, "ok", f"Wrote {len(outputs)} instance(s)")
    return report


def cmd_index(args: argparse.Namespace) -> RunReport:
    t0 = time.perf_counter()
    emb = read_emb(args.input)
    t1 = time.perf_counter()
    layers = compute_layers(emb)
    t2 = time.perf_counter()

    report = RunReport("index")
    report.add("n", emb.n)
    report.add("m", emb.m)
    report.add("faces", emb.face_count())
    report.add("components", emb.component_count())
    report.add("k", layers.index_k)
    report.add("layer_sizes", layers.layer_sizes())
    if args.layers:
        report.add("layers", list(layers.vertex_layer))
    report.add_timings({"parse": t1 - t0, "layers": t2 - t1})
    return report


def cmd_tree(args: argparse.Namespace) -> RunReport:
    t0 = time.perf_counter()
    emb = read_emb(args.input)
    parse_time = time.perf_counter() - t0

    run = run_tree_pipeline(emb)
    t1 = time.perf_counter()
    write_td(args.output, run.td, [f"kouter tree k={run.k}"])
    write_time = time.perf_counter() - t1

    report = RunReport("tree")
    report.add("n", emb.n)
    report.add("m", emb.m)
    report.add("k", run.k)
    report.add("width", run.td.width)
    report.add("bound", 3 * run.k - 1 if run.k else 0)
    report.add("bags", len(run.td))
    report.add("method", "outerplanar" if run.front is None else "forest")

    front = run.front
    if front is None and emb.m > 0 and (args.stats or args.dump_forest):
        front = front_end(emb)
    if args.stats and front is not None:
        _forest_stats(report, front)
    if args.dump_forest and front is not None:
        _dump_forest(args, front)

    if args.verify:
        result = check_td(emb, run.td.joined())
        report.add("verified", result.ok)
        if not result.ok:
            report.ok = False
            _status(args, "error", f"Tree decomposition check failed: {result.describe()}")

    report.add_timings({"parse": parse_time, **run.timings, "write": write_time})
    _status(args, "ok", f"Wrote {args.output} (width {run.td.width})")
    return report


def cmd_branch(args: argparse.Namespace) -> RunReport:
    t0 = time.perf_counter()
    emb = read_emb(args.input)
    parse_time = time.perf_counter() - t0

    run = run_branch_pipeline(emb)
    t1 = time.perf_counter()
    write_bd(args.output, run.decompositions)
    write_time = time.perf_counter() - t1

    report = RunReport("branch")
    report.add("n", emb.n)
    report.add("m", emb.m)
    report.add("k", run.k)
    report.add("width", run.width)
    report.add("bound", 2 * run.k + 1 if run.k else 0)
    report.add("components", len(run.decompositions))
    report.add("sentinels", sum(1 for bd in run.decompositions if bd.is_sentinel))

    if args.stats and run.front is not None:
        _forest_stats(report, run.front)
    if args.dump_forest and run.front is not None:
        _dump_forest(args, run.front)

    if args.verify:
        result = check_bd(emb, run.decompositions)
        report.add("verified", result.ok)
        if not result.ok:
            report.ok = False
            _status(args, "error", f"Branch decomposition check failed: {result.describe()}")

    report.add_timings({"parse": parse_time, **run.timings, "write": write_time})
    _status(args, "ok", f"Wrote {args.output} (width {run.width})")
    return report


def cmd_check_td(args: argparse.Namespace) -> RunReport:
    emb = read_emb(args.graph)
    td = read_td(args.decomposition)
    result = check_td(emb, td)
    report = RunReport("check-td", ok=result.ok)
    report.add("valid", result.ok)
    if result.ok:
        report.add("width", result.width)
    else:
        report.add("kind", result.kind)
        _status(args, "error", result.describe())
    return report


def cmd_check_bd(args: argparse.Namespace) -> RunReport:
    emb = read_emb(args.graph)
    bds = read_bd(args.decomposition)
    result = check_bd(emb, bds)
    report = RunReport("check-bd", ok=result.ok)
    report.add("valid", result.ok)
    if result.ok:
        report.add("width", result.width)
    else:
        report.add("kind", result.kind)
        _status(args, "error", result.describe())
    return report


def cmd_oracle_tw(args: argparse.Namespace) -> RunReport:
    emb = read_emb(args.input)
    report = RunReport("oracle-tw")
    report.add("n", emb.n)
    report.add("treewidth", oracle_treewidth(emb))
    return report


def cmd_oracle_bw(args: argparse.Namespace) -> RunReport:
    emb = read_emb(args.input)
    report = RunReport("oracle-bw")
    report.add("m", emb.m)
    report.add("branchwidth", oracle_branchwidth(emb))
    return report


def cmd_bench(args: argparse.Namespace):
    config = load_config(args.config)
    section = config["bench"]
    df = run_bench(
        ks=resolve(config, "bench", "ks", args.ks),
        ns=resolve(config, "bench", "ns", args.ns),
        repeats=resolve(config, "bench", "repeats", args.repeats),
        seed=resolve(config, "bench", "seed", args.seed),
        workers=resolve(config, "bench", "workers", args.workers),
        chords=section["chords"],
        spokes=section["spokes"],
        progress=not args.json,
        log_file_path=args.log,
    )
    if args.csv:
        parent = os.path.dirname(os.path.abspath(args.csv))
        os.makedirs(parent, exist_ok=True)
        df.to_csv(args.csv, index=False, encoding="utf-8")
        _status(args, "ok", f"Bench table written to {args.csv}")

    failures = ratio_failures(df, section["max_n_ratio"], section["max_k_ratio"]) if args.check_ratios else []
    for line in failures:
        _status(args, "warn", line)
    return df, not failures


# --------------------------------- Parser --------------------------------- #

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Print the report as JSON instead of key=value lines.")
    common.add_argument("--log", default=None, help="Append status lines to this file.")
    common.add_argument("-v", "--verbose", action="count", default=0, help="More library logging (-v info, -vv debug).")
    common.add_argument("--config", default=None, help="JSON defaults file (default: configs/defaults.json).")

    p = argparse.ArgumentParser(prog="kouter", description=__doc__, formatter_class=argparse.RawTextHelpFormatter)
    p.add_argument("--version", action="version", version=f"kouter {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="Generate a seeded or canned instance.")
    g.add_argument("--k", type=int, default=None, help="Target outerplanarity index.")
    g.add_argument("--n", type=int, default=None, help="Approximate vertex count (at least 3k).")
    g.add_argument("--seed", type=int, default=None, help="Random seed.")
    g.add_argument("--chords", type=float, default=None, help="Chord density in [0, 1].")
    g.add_argument("--spokes", type=float, default=None, help="Spoke density in (0, 1].")
    g.add_argument("--max-retries", type=int, default=None, help="Regeneration attempts when the index misses.")
    g.add_argument("--count", type=int, default=1, help="Number of instances (files get a _NNN suffix).")
    g.add_argument("--canned", default=None, help="Named fixture: c<n>, p<n>, k4, grid<r>x<c>, star<d>, wheel<n>, nested<k>, fig2.")
    g.add_argument("-o", "--output", required=True, help="Output .emb path.")
    g.set_defaults(func=cmd_gen)

    ix = sub.add_parser("index", parents=[common], help="Outerplanarity index and layer sizes.")
    ix.add_argument("input", help="Input .emb file.")
    ix.add_argument("--layers", action="store_true", help="Also print the layer of every vertex.")
    ix.set_defaults(func=cmd_index)

    for name, func, ext, what in (("tree", cmd_tree, ".td", "tree decomposition of width <= 3k - 1"),
                                  ("branch", cmd_branch, ".bd", "branch decomposition of width <= 2k + 1")):
        sp = sub.add_parser(name, parents=[common], help=f"Compute a {what}.")
        sp.add_argument("input", help="Input .emb file.")
        sp.add_argument("-o", "--output", required=True, help=f"Output {ext} path.")
        sp.add_argument("--verify", action="store_true", help="Validate the result before exiting.")
        sp.add_argument("--stats", action="store_true", help="Add expansion stats, k' and remember numbers.")
        sp.add_argument("--dump-forest", default=None, help="Write the spanning forest as 'f/x u v step' lines.")
        sp.set_defaults(func=func)

    for name, func, ext in (("check-td", cmd_check_td, ".td"), ("check-bd", cmd_check_bd, ".bd")):
        sp = sub.add_parser(name, parents=[common], help=f"Validate a {ext} file against a graph.")
        sp.add_argument("graph", help="Input .emb file.")
        sp.add_argument("decomposition", help=f"Decomposition {ext} file.")
        sp.set_defaults(func=func)

    for name, func, what in (("oracle-tw", cmd_oracle_tw, "treewidth"), ("oracle-bw", cmd_oracle_bw, "branchwidth")):
        sp = sub.add_parser(name, parents=[common], help=f"Exact {what} of a small graph.")
        sp.add_argument("input", help="Input .emb file.")
        sp.set_defaults(func=func)

    b = sub.add_parser("bench", parents=[common], help="Median timings over a (k, n) grid.")
    b.add_argument("--ks", type=int, nargs="*", default=None, help="Indices to generate.")
    b.add_argument("--ns", type=int, nargs="*", default=None, help="Target vertex counts.")
    b.add_argument("--repeats", type=int, default=None, help="Instances per (k, n).")
    b.add_argument("--seed", type=int, default=None, help="Base seed.")
    b.add_argument("--workers", type=int, default=None, help="Worker threads.")
    b.add_argument("--csv", default=None, help="Also write the table to this CSV file.")
    b.add_argument("--check-ratios", action="store_true", help="Exit 1 when a scaling ratio exceeds its limit.")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        if args.func is cmd_bench:
            df, ok = cmd_bench(args)
            if args.json:
                print(json.dumps(json.loads(df.to_json(orient="records")), indent=2, ensure_ascii=False))
            else:
                print(df.to_string(index=False))
            return 0 if ok else 1
        report = args.func(args)
    except (KouterError, OSError) as exc:
        _status(args, "error", str(exc))
        return 1
    _emit(args, report)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
