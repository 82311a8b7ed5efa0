"""
Seeded k-outerplanar instances and named fixtures.

A generated instance is k nested cycles (layers). Consecutive layers are
joined by non-crossing spokes, and every layer gets non-crossing chords on
its inner side, each chord kept inside one sector between two consecutive
inward spokes. Vertex j of layer i has id offset_i + j, indices running
counterclockwise; each rotation reads

    [next, outward spokes, prev, chords to lower indices, inward spokes, chords to higher indices]

clockwise. The outer face is the face left of (offset_0 + 1) -> offset_0.
The index is verified after construction; a miss retries with a derived seed.
"""

import logging
import math
import re
from dataclasses import dataclass, replace
from typing import Dict, Iterator, List, Sequence, Tuple

import numpy as np

from .embedding_analysis import compute_layers
from .errors import KouterError, Unsatisfiable, UnknownName
from .graph_core import Embedding, build_embedding

logger = logging.getLogger(__name__)

SEED_STEP = 0x9E3779B97F4A7C15
SEED_MOD = 2 ** 64


@dataclass(frozen=True)
class GenSpec:
    k: int
    n_target: int
    seed: int = 0
    chord_density: float = 0.3
    spoke_density: float = 0.5
    max_retries: int = 8


# ------------------------------- Construction ------------------------------ #

def _layer_sizes(rng: np.random.Generator, k: int, n_target: int) -> List[int]:
    spare = n_target - 3 * k
    if k == 1:
        return [n_target]
    shares = rng.multinomial(spare, rng.dirichlet(np.ones(k)))
    return [3 + int(s) for s in shares]


def _spokes(rng: np.random.Generator, outer: int, inner: int, density: float) -> List[Tuple[int, int]]:
    """Non-crossing (outer index, inner index) pairs, in cyclic order."""
    count = max(2, int(round(density * min(outer, inner))))
    a = np.sort(rng.integers(0, outer, size=count))
    b = np.sort(rng.integers(0, inner, size=count))
    shift = int(rng.integers(0, count))
    pairs: List[Tuple[int, int]] = []
    for t in range(count):
        pair = (int(a[t]), int(b[(t + shift) % count]))
        if pair not in pairs:
            pairs.append(pair)
    return pairs


def _chords(rng: np.random.Generator, size: int, attachments: Sequence[int], density: float) -> List[Tuple[int, int]]:
    """Non-crossing chords as position pairs (x < y) inside the sectors between attachments."""
    if not attachments:
        gaps = [(0, size - 1)]
    elif len(attachments) == 1:
        gaps = [(attachments[0], attachments[0] + size)]
    else:
        gaps = [(p, q if q > p else q + size) for p, q in zip(attachments, attachments[1:] + attachments[:1])]
    gaps = [g for g in gaps if g[1] - g[0] >= 2]
    if not gaps:
        return []

    chords: List[Tuple[int, int]] = []
    used = set()
    per_gap: Dict[int, List[Tuple[int, int]]] = {}
    for _ in range(int(round(density * size))):
        gi = int(rng.integers(0, len(gaps)))
        lo, hi = gaps[gi]
        x = int(rng.integers(lo, hi - 1))
        y = int(rng.integers(x + 2, hi + 1))
        u, w = x % size, y % size
        key = (min(u, w), max(u, w))
        if u == w or key in used or (y - x) % size in (1, size - 1):
            continue
        if any(a < x < b < y or x < a < y < b for a, b in per_gap.get(gi, ())):
            continue
        per_gap.setdefault(gi, []).append((x, y))
        used.add(key)
        chords.append((x, y))
    return chords


def _cyclic_run(ts: List[int], count: int) -> List[int]:
    """Order spoke indices as one cyclic run."""
    members = set(ts)
    if len(members) == count:
        return sorted(ts)
    start = next(t for t in sorted(ts) if (t - 1) % count not in members)
    return [(start + i) % count for i in range(len(ts))]


def _build_rotations(sizes: List[int], spokes: List[List[Tuple[int, int]]],
                     chords: List[List[Tuple[int, int]]]) -> List[List[int]]:
    offsets = [0]
    for s in sizes[:-1]:
        offsets.append(offsets[-1] + s)
    n = sum(sizes)
    outward: Dict[int, List[int]] = {}
    inward: Dict[int, List[int]] = {}
    low: Dict[int, List[Tuple[int, int]]] = {}
    high: Dict[int, List[Tuple[int, int]]] = {}

    for i, pairs in enumerate(spokes):
        off_out, off_in = offsets[i], offsets[i + 1]
        runs_in: Dict[int, List[int]] = {}
        runs_out: Dict[int, List[int]] = {}
        for t, (a, b) in enumerate(pairs):
            runs_in.setdefault(off_out + a, []).append(t)
            runs_out.setdefault(off_in + b, []).append(t)
        for v, ts in runs_in.items():
            inward[v] = [off_in + pairs[t][1] for t in _cyclic_run(ts, len(pairs))]
        for v, ts in runs_out.items():
            outward[v] = [off_out + pairs[t][0] for t in reversed(_cyclic_run(ts, len(pairs)))]

    for i, layer_chords in enumerate(chords):
        off, size = offsets[i], sizes[i]
        for x, y in layer_chords:
            u, w = off + x % size, off + y % size
            high.setdefault(u, []).append((y - x, w))
            low.setdefault(w, []).append((y - x, u))

    rotations: List[List[int]] = [[] for _ in range(n)]
    for i, size in enumerate(sizes):
        off = offsets[i]
        for j in range(size):
            v = off + j
            rot = [off + (j + 1) % size]
            rot += outward.get(v, [])
            rot.append(off + (j - 1) % size)
            rot += [u for _, u in sorted(low.get(v, []))]
            rot += inward.get(v, [])
            rot += [u for _, u in sorted(high.get(v, []), reverse=True)]
            rotations[v] = rot
    return rotations


def _attempt(spec: GenSpec, seed: int) -> Embedding:
    rng = np.random.default_rng(seed)
    sizes = _layer_sizes(rng, spec.k, spec.n_target)
    spokes = [_spokes(rng, sizes[i], sizes[i + 1], spec.spoke_density) for i in range(spec.k - 1)]
    chords = []
    for i, size in enumerate(sizes):
        attachments = sorted({a for a, _ in spokes[i]}) if i < len(spokes) else []
        chords.append(_chords(rng, size, attachments, spec.chord_density))
    rotations = _build_rotations(sizes, spokes, chords)
    return build_embedding(len(rotations), rotations, (1, 0))


def derive_seed(seed: int, attempt: int) -> int:
    return (seed + attempt * SEED_STEP) % SEED_MOD


def generate(spec: GenSpec) -> Embedding:
    if spec.k < 1:
        raise KouterError(f"Target index must be at least 1, got {spec.k}.")
    if spec.n_target < 3 * spec.k:
        raise KouterError(f"n_target must be at least 3k = {3 * spec.k}, got {spec.n_target}.")
    achieved = 0
    for attempt in range(spec.max_retries + 1):
        emb = _attempt(spec, derive_seed(spec.seed, attempt))
        achieved = compute_layers(emb).index_k
        if achieved == spec.k:
            return emb
        logger.info("generate: seed %d attempt %d reached k=%d, retrying", spec.seed, attempt, achieved)
    raise Unsatisfiable(spec.k, achieved, spec.max_retries + 1)


def generate_many(spec: GenSpec, count: int) -> Iterator[Embedding]:
    seeds = np.random.default_rng(spec.seed).integers(0, 2 ** 63, size=count)
    for s in seeds:
        yield generate(replace(spec, seed=int(s)))


# ------------------------------- Named fixtures ---------------------------- #

def _from_points(points: Sequence[Tuple[float, float]], edges: Sequence[Tuple[int, int]],
                 hint: Tuple[int, int]) -> Embedding:
    """Straight-line drawing to rotations: neighbours sorted clockwise (descending angle)."""
    nbrs: List[List[int]] = [[] for _ in points]
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    rotations = []
    for v, (x, y) in enumerate(points):
        rotations.append(sorted(nbrs[v], key=lambda u: -math.atan2(points[u][1] - y, points[u][0] - x)))
    return build_embedding(len(points), rotations, hint)


def cycle(n: int) -> Embedding:
    if n < 3:
        raise UnknownName(f"c{n}")
    return build_embedding(n, [[(v + 1) % n, (v - 1) % n] for v in range(n)], (1, 0))


def path(n: int) -> Embedding:
    if n < 1:
        raise UnknownName(f"p{n}")
    rotations = [[u for u in (v - 1, v + 1) if 0 <= u < n] for v in range(n)]
    return build_embedding(n, rotations, (1, 0) if n > 1 else None)


def k4() -> Embedding:
    return build_embedding(4, [[1, 2, 3], [2, 0, 3], [0, 1, 3], [2, 1, 0]], (1, 0))


def grid(rows: int, cols: int) -> Embedding:
    if rows < 1 or cols < 1 or rows * cols < 2:
        raise UnknownName(f"grid{rows}x{cols}")
    rotations = []
    for i in range(rows):
        for j in range(cols):
            rot = []
            if i > 0:
                rot.append((i - 1) * cols + j)
            if j + 1 < cols:
                rot.append(i * cols + j + 1)
            if i + 1 < rows:
                rot.append((i + 1) * cols + j)
            if j > 0:
                rot.append(i * cols + j - 1)
            rotations.append(rot)
    hint = (cols, 0) if rows > 1 else (1, 0)
    return build_embedding(rows * cols, rotations, hint)


def star(d: int) -> Embedding:
    if d < 1:
        raise UnknownName(f"star{d}")
    rotations = [list(range(1, d + 1))] + [[0] for _ in range(d)]
    return build_embedding(d + 1, rotations, (1, 0))


def wheel(n: int) -> Embedding:
    """Rim 0..n-1 plus hub n."""
    if n < 3:
        raise UnknownName(f"wheel{n}")
    rotations = [[(j + 1) % n, (j - 1) % n, n] for j in range(n)]
    rotations.append(list(range(n - 1, -1, -1)))
    return build_embedding(n + 1, rotations, (1, 0))


def nested(k: int) -> Embedding:
    """k triangles, vertex j of triangle l joined to vertex j of triangles l - 1 and l + 1."""
    if k < 1:
        raise UnknownName(f"nested{k}")
    rotations = []
    for layer in range(k):
        for j in range(3):
            rot = [3 * layer + (j + 1) % 3]
            if layer > 0:
                rot.append(3 * (layer - 1) + j)
            rot.append(3 * layer + (j - 1) % 3)
            if layer + 1 < k:
                rot.append(3 * (layer + 1) + j)
            rotations.append(rot)
    return build_embedding(3 * k, rotations, (1, 0))


FIG2_POINTS: List[Tuple[float, float]] = (
    [(2 * math.cos(math.radians(60 * j)), 2 * math.sin(math.radians(60 * j))) for j in range(6)]
    + [(-0.5, 0.0), (3.5, 0.0), (3.5, 1.5), (5.0, 0.0), (6.0, -1.0), (7.0, 0.0), (6.0, 1.0), (6.5, 0.0)]
)
FIG2_EDGES: List[Tuple[int, int]] = (
    [(j, (j + 1) % 6) for j in range(6)]
    + [(2, 6), (6, 4), (0, 7), (7, 9), (7, 8)]
    + [(9, 10), (10, 11), (11, 12), (12, 9), (11, 13)]
)


def fig2() -> Embedding:
    """
    Two wheels joined by a branch: a hexagon 0..5 split by the path 2-6-4,
    a square 9..12 with a pendant 11-13 inside, and the branch 0-7-9 with the
    spur 7-8.
    """
    return _from_points(FIG2_POINTS, FIG2_EDGES, (3, 2))


_CANNED = [
    (re.compile(r"^c(\d+)$"), lambda m: cycle(int(m.group(1)))),
    (re.compile(r"^p(\d+)$"), lambda m: path(int(m.group(1)))),
    (re.compile(r"^k4$"), lambda m: k4()),
    (re.compile(r"^grid(\d+)x(\d+)$"), lambda m: grid(int(m.group(1)), int(m.group(2)))),
    (re.compile(r"^star(\d+)$"), lambda m: star(int(m.group(1)))),
    (re.compile(r"^wheel(\d+)$"), lambda m: wheel(int(m.group(1)))),
    (re.compile(r"^nested(\d+)$"), lambda m: nested(int(m.group(1)))),
    (re.compile(r"^fig2$"), lambda m: fig2()),
]


def canned(name: str) -> Embedding:
    for pattern, make in _CANNED:
        match = pattern.match(name.strip().lower())
        if match:
            return make(match)
    raise UnknownName(name)
