"""
Timing harness for the decomposition pipelines.

For every (k, n) pair `repeats` seeded instances are generated and both
pipelines are timed on each; the table keeps the median times, the largest
widths seen and two ratio columns:

    n_ratio   median tree time at n divided by the one at n / 2 (same k)
    k_ratio   median tree time at k divided by the one at the smallest k (same n)

Ratios are NaN when the reference row is absent from the requested grid.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from tqdm import tqdm

from .branch_decomposition import run_branch_pipeline
from .generator import GenSpec, generate_many
from .graph_core import Embedding
from .logs import log_message, tag
from .tree_decomposition import run_tree_pipeline

logger = logging.getLogger(__name__)

COLUMNS = [
    "k", "n_target", "n", "m", "repeats",
    "tree_time_s", "branch_time_s", "tree_width", "branch_width",
    "tree_bound", "branch_bound", "n_ratio", "k_ratio",
]


@dataclass
class Sample:
    k: int
    n_target: int
    n: int
    m: int
    tree_time: float
    branch_time: float
    tree_width: int
    branch_width: int


def time_instance(emb: Embedding, k: int, n_target: int) -> Sample:
    t0 = time.perf_counter()
    tree = run_tree_pipeline(emb)
    t1 = time.perf_counter()
    branch = run_branch_pipeline(emb)
    t2 = time.perf_counter()
    return Sample(k=k, n_target=n_target, n=emb.n, m=emb.m,
                  tree_time=t1 - t0, branch_time=t2 - t1,
                  tree_width=tree.td.width, branch_width=branch.width)


def _tasks(ks: Sequence[int], ns: Sequence[int], repeats: int, base: GenSpec,
           log_file_path: Optional[str]) -> List[Tuple[int, int, Embedding]]:
    tasks = []
    for k in ks:
        for n in ns:
            if n < 3 * k:
                log_message(tag("skip", f"n={n} is below 3k for k={k}"), log_file_path)
                continue
            spec = replace(base, k=k, n_target=n)
            tasks.extend((k, n, emb) for emb in generate_many(spec, repeats))
    return tasks


def summarize(samples: Sequence[Sample]) -> pd.DataFrame:
    if not samples:
        return pd.DataFrame(columns=COLUMNS)
    groups: Dict[Tuple[int, int], List[Sample]] = {}
    for s in samples:
        groups.setdefault((s.k, s.n_target), []).append(s)

    rows = []
    for (k, n_target), group in sorted(groups.items()):
        rows.append({
            "k": k,
            "n_target": n_target,
            "n": int(np.median([s.n for s in group])),
            "m": int(np.median([s.m for s in group])),
            "repeats": len(group),
            "tree_time_s": float(np.median([s.tree_time for s in group])),
            "branch_time_s": float(np.median([s.branch_time for s in group])),
            "tree_width": max(s.tree_width for s in group),
            "branch_width": max(s.branch_width for s in group),
            "tree_bound": 3 * k - 1,
            "branch_bound": 2 * k + 1,
        })
    df = pd.DataFrame(rows)

    by_key = {(r.k, r.n_target): r.tree_time_s for r in df.itertuples()}
    k_min = int(df["k"].min())
    df["n_ratio"] = [
        by_key[(r.k, r.n_target)] / by_key[(r.k, r.n_target // 2)]
        if (r.k, r.n_target // 2) in by_key and r.n_target % 2 == 0 and by_key[(r.k, r.n_target // 2)] > 0
        else np.nan
        for r in df.itertuples()
    ]
    df["k_ratio"] = [
        by_key[(r.k, r.n_target)] / by_key[(k_min, r.n_target)]
        if (k_min, r.n_target) in by_key and by_key[(k_min, r.n_target)] > 0
        else np.nan
        for r in df.itertuples()
    ]
    return df[COLUMNS]


def run_bench(ks: Sequence[int], ns: Sequence[int], repeats: int = 5, seed: int = 0,
              workers: int = 1, chords: float = 0.3, spokes: float = 0.5,
              progress: bool = True, log_file_path: Optional[str] = None) -> pd.DataFrame:
    """Median-of-`repeats` timing table over the (k, n) grid."""
    base = GenSpec(k=1, n_target=3, seed=seed, chord_density=chords, spoke_density=spokes)
    tasks = _tasks(ks, ns, repeats, base, log_file_path)
    if not tasks:
        return summarize([])

    samples: List[Sample] = []
    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        futures = [executor.submit(time_instance, emb, k, n) for k, n, emb in tasks]
        for fut in tqdm(as_completed(futures), total=len(futures), desc="Instances", disable=not progress):
            samples.append(fut.result())
    df = summarize(samples)
    for r in df.itertuples():
        log_message(tag("info", f"k={r.k} n={r.n} tree {r.tree_time_s:.4f}s width {r.tree_width} | "
                                f"branch {r.branch_time_s:.4f}s width {r.branch_width}"), log_file_path)
    return df


def ratio_failures(df: pd.DataFrame, max_n_ratio: float, max_k_ratio: float) -> List[str]:
    """Rows whose scaling ratios exceed the given limits."""
    out = []
    for r in df.itertuples():
        if not np.isnan(r.n_ratio) and r.n_ratio > max_n_ratio:
            out.append(f"k={r.k} n={r.n_target}: time(2n)/time(n) = {r.n_ratio:.2f} > {max_n_ratio}")
        if not np.isnan(r.k_ratio) and r.k_ratio > max_k_ratio:
            out.append(f"k={r.k} n={r.n_target}: time(k)/time(k_min) = {r.k_ratio:.2f} > {max_k_ratio}")
    return out
