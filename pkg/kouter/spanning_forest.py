"""
Maximal spanning forest with small remember numbers on a degree-3 plane graph.

Stripping stage: repeatedly delete every edge on the outer face. The faces of
the input get a stripping number s(f), the dual distance from the outer face,
and each edge the step that deleted it (one more than the smaller stripping
number of its faces). Edges still present after k steps form T_0.

Building stage: the edge layers are put back innermost first. In each layer
R the edges whose faces have different stripping numbers form disjoint
cycles (wheels); the rest are branch edges. Branch edges are always added.
Every wheel is added minus its closing edge and minus the edge before each
repeated contact with a tree already built inside it.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple

from networkx.utils import UnionFind

from .embedding_analysis import compute_layers
from .errors import CycleCreated, FactViolation, MalformedLayer, NotMaximal, StrippingError
from .graph_core import Embedding

logger = logging.getLogger(__name__)

ALPHA, BETA, GAMMA = "alpha", "beta", "gamma"


# ---------------------------------- Types ---------------------------------- #

@dataclass
class StrippingTrace:
    step_of_edge: List[int]
    stripping_number: List[int]
    k_prime: int
    index_k: int

    def edges_of_step(self, step: int) -> List[int]:
        return [e for e, s in enumerate(self.step_of_edge) if s == step]

    def residual_edges(self) -> List[int]:
        return self.edges_of_step(0)


@dataclass
class Wheel:
    vertices: List[int]
    edges: List[int]

    @property
    def closing_edge(self) -> int:
        return self.edges[-1]


@dataclass
class WheelBranchLabels:
    step: int
    kind: Dict[int, str]
    wheels: List[Wheel]
    branch_edges: List[int]

    def vertices_of_kind(self, kind: str) -> List[int]:
        return sorted(v for v, t in self.kind.items() if t == kind)


@dataclass
class SpanningForest:
    in_forest: List[bool]
    parent: List[int]
    parent_edge: List[int]
    depth: List[int]
    component: List[int]
    edge_ends: List[Tuple[int, int]]

    @property
    def n(self) -> int:
        return len(self.parent)

    def forest_edges(self) -> List[int]:
        return [e for e, f in enumerate(self.in_forest) if f]

    def non_forest_edges(self) -> List[int]:
        return [e for e, f in enumerate(self.in_forest) if not f]

    def forest_pairs(self) -> List[Tuple[int, int]]:
        return [self.edge_ends[e] for e in self.forest_edges()]

    def roots(self) -> List[int]:
        return [v for v, p in enumerate(self.parent) if p == -1]

    def fundamental_path(self, u: int, w: int) -> Tuple[List[int], List[int]]:
        """Forest path u -> w as (vertices, forest edge ids)."""
        if self.component[u] != self.component[w]:
            raise ValueError(f"Vertices {u} and {w} lie in different trees.")
        left, left_edges = [u], []
        right, right_edges = [w], []
        a, b = u, w
        while self.depth[a] > self.depth[b]:
            left_edges.append(self.parent_edge[a])
            a = self.parent[a]
            left.append(a)
        while self.depth[b] > self.depth[a]:
            right_edges.append(self.parent_edge[b])
            b = self.parent[b]
            right.append(b)
        while a != b:
            left_edges.append(self.parent_edge[a])
            a = self.parent[a]
            left.append(a)
            right_edges.append(self.parent_edge[b])
            b = self.parent[b]
            right.append(b)
        right.pop()
        return left + right[::-1], left_edges + right_edges[::-1]


# -------------------------------- Stripping -------------------------------- #

def stripping_numbers(emb: Embedding) -> List[int]:
    s = [-1] * len(emb.faces)
    queue = deque()
    for f in emb.outer_faces:
        s[f] = 0
        queue.append(f)
    while queue:
        f = queue.popleft()
        for h in emb.faces[f]:
            g = emb.face_of[h ^ 1]
            if s[g] == -1:
                s[g] = s[f] + 1
                queue.append(g)
    return s


def strip(emb: Embedding) -> Tuple[StrippingTrace, List[List[int]], List[int]]:
    """
    Run the stripping stage.

    Returns the trace, the removed edge layers ordered from the innermost
    step down to step 1, and the residual edge ids (T_0).
    """
    index_k = compute_layers(emb).index_k
    s = stripping_numbers(emb)
    steps = []
    for e in range(emb.m):
        f1, f2 = emb.face_of[2 * e], emb.face_of[2 * e + 1]
        step = min(s[f1], s[f2]) + 1
        steps.append(step if step <= index_k else 0)
    k_prime = max(steps, default=0)
    trace = StrippingTrace(step_of_edge=steps, stripping_number=s, k_prime=k_prime, index_k=index_k)

    residual = trace.residual_edges()
    uf = UnionFind(range(emb.n))
    for e in residual:
        u, w = emb.edge_ends[e]
        if uf[u] == uf[w]:
            raise StrippingError(f"Residual after {index_k} stripping steps has a cycle through edge ({u}, {w}).")
        uf.union(u, w)

    layers = [trace.edges_of_step(i) for i in range(k_prime, 0, -1)]
    logger.debug("strip: k=%d k'=%d layer sizes %s residual %d",
                 index_k, k_prime, [len(r) for r in layers], len(residual))
    return trace, layers, residual


# ----------------------------- Classification ------------------------------ #

def _is_present(step: int, current: int) -> bool:
    return step == 0 or step >= current


def _is_inner(step: int, current: int) -> bool:
    return step == 0 or step > current


def classify(emb: Embedding, trace: StrippingTrace, step: int) -> WheelBranchLabels:
    """Split layer `step` into wheels and branches and label its vertices alpha/beta/gamma."""
    s = trace.stripping_number
    steps = trace.step_of_edge
    wheel_out: Dict[int, List[int]] = {}
    branch_edges = []
    branch_set = set()
    touched = set()
    for e in trace.edges_of_step(step):
        u, w = emb.edge_ends[e]
        touched.update((u, w))
        if s[emb.face_of[2 * e]] != s[emb.face_of[2 * e + 1]]:
            wheel_out.setdefault(u, []).append(2 * e)
            wheel_out.setdefault(w, []).append(2 * e + 1)
        else:
            branch_edges.append(e)
            branch_set.add(e)

    kind: Dict[int, str] = {}
    for v in sorted(touched):
        present = [h for h in emb.out[v] if _is_present(steps[h >> 1], step)]
        if len(present) > 3:
            raise MalformedLayer(f"Vertex {v} has {len(present)} edges in building step {step}.")
        on_wheel = len(wheel_out.get(v, ()))
        if on_wheel > 2:
            raise FactViolation("wheel-degree", f"vertex {v} lies on {on_wheel} wheel edges in step {step}", v)
        if on_wheel == 1:
            raise MalformedLayer(f"Vertex {v} ends an open wheel path in step {step}.")
        has_inner = any(_is_inner(steps[h >> 1], step) for h in present)
        has_branch = any((h >> 1) in branch_set for h in present)
        if not on_wheel:
            if has_inner:
                raise FactViolation("branch-isolation", f"branch vertex {v} touches an inner tree in step {step}", v)
            kind[v] = GAMMA
        elif has_branch:
            kind[v] = ALPHA
        elif has_inner:
            kind[v] = BETA
        else:
            kind[v] = GAMMA

    wheels: List[Wheel] = []
    walked: Set[int] = set()
    for v in sorted(wheel_out):
        if v in walked:
            continue
        cycle = _walk_wheel(emb, wheel_out, v, s)
        starts = [x for x in cycle.vertices if kind[x] == ALPHA] or \
                 [x for x in cycle.vertices if kind[x] == BETA] or cycle.vertices
        wheel = _walk_wheel(emb, wheel_out, min(starts), s)
        walked.update(wheel.vertices)
        wheels.append(wheel)

    return WheelBranchLabels(step=step, kind=kind, wheels=wheels,
                             branch_edges=branch_edges)


def _walk_wheel(emb: Embedding, wheel_out: Dict[int, List[int]], start: int, s: List[int]) -> Wheel:
    # leave start with the outer (lower stripping number) face on the left
    h = min(wheel_out[start], key=lambda x: (s[emb.face_of[x]] - s[emb.face_of[x ^ 1]], x))
    vertices, edges = [start], []
    while True:
        edges.append(h >> 1)
        y = emb.origin[h ^ 1]
        if y == start:
            break
        vertices.append(y)
        h = next(x for x in wheel_out[y] if (x >> 1) != (h >> 1))
    return Wheel(vertices=vertices, edges=edges)


# --------------------------------- Building -------------------------------- #

class ForestBuilder:
    """Incremental forest T_j together with the connectivity of G_j."""

    def __init__(self, emb: Embedding):
        self.emb = emb
        self.in_forest = [False] * emb.m
        self.forest = UnionFind(range(emb.n))
        self.graph = UnionFind(range(emb.n))
        self.forest_size = 0
        self.graph_components = emb.n

    def add(self, e: int, step: int) -> None:
        u, w = self.emb.edge_ends[e]
        if self.forest[u] == self.forest[w]:
            raise CycleCreated(u, w, step)
        self.forest.union(u, w)
        self.in_forest[e] = True
        self.forest_size += 1

    def include_in_graph(self, edges: List[int]) -> None:
        for e in edges:
            u, w = self.emb.edge_ends[e]
            if self.graph[u] != self.graph[w]:
                self.graph.union(u, w)
                self.graph_components -= 1

    def check_maximal(self, step: int) -> None:
        expected = self.emb.n - self.graph_components
        if self.forest_size != expected:
            raise NotMaximal(
                f"Forest after building step {step} has {self.forest_size} edges, "
                f"expected {expected}."
            )


def build(builder: ForestBuilder, labels: WheelBranchLabels) -> ForestBuilder:
    """Extend T_{j-1} by one edge layer."""
    step = labels.step
    tree_of = {v: builder.forest[v] for v, t in labels.kind.items() if t == BETA}

    for e in labels.branch_edges:
        builder.add(e, step)

    for wheel in labels.wheels:
        kinds = [labels.kind[v] for v in wheel.vertices]
        if all(t == GAMMA for t in kinds):
            omitted = {min(wheel.edges)}
        else:
            omitted = {wheel.closing_edge}
            seen_trees = set()
            for p, v in enumerate(wheel.vertices):
                if kinds[p] != BETA:
                    continue
                tree = tree_of[v]
                if tree in seen_trees:
                    omitted.add(wheel.edges[p - 1])
                seen_trees.add(tree)
        for e in wheel.edges:
            if e not in omitted:
                builder.add(e, step)
    return builder


def _root_forest(emb: Embedding, in_forest: List[bool]) -> SpanningForest:
    adj: List[List[Tuple[int, int]]] = [[] for _ in range(emb.n)]
    for e, (u, w) in enumerate(emb.edge_ends):
        if in_forest[e]:
            adj[u].append((w, e))
            adj[w].append((u, e))
    parent = [-1] * emb.n
    parent_edge = [-1] * emb.n
    depth = [-1] * emb.n
    component = [-1] * emb.n
    c = 0
    for r in range(emb.n):
        if depth[r] != -1:
            continue
        depth[r] = 0
        component[r] = c
        queue = deque([r])
        while queue:
            x = queue.popleft()
            for y, e in adj[x]:
                if depth[y] == -1:
                    depth[y] = depth[x] + 1
                    parent[y] = x
                    parent_edge[y] = e
                    component[y] = c
                    queue.append(y)
        c += 1
    return SpanningForest(in_forest=list(in_forest), parent=parent, parent_edge=parent_edge,
                          depth=depth, component=component, edge_ends=list(emb.edge_ends))


def spanning_forest(emb: Embedding, strict: bool = True) -> Tuple[SpanningForest, StrippingTrace]:
    """
    Strip, then build layer by layer. With ``strict`` the forest is checked
    for maximality after every building step.
    """
    if emb.max_degree() > 3:
        raise MalformedLayer(f"Spanning forest construction needs max degree 3, got {emb.max_degree()}.")
    trace, layers, residual = strip(emb)
    builder = ForestBuilder(emb)
    for e in residual:
        builder.add(e, 0)
    builder.include_in_graph(residual)
    if strict:
        builder.check_maximal(0)

    for step, edges in zip(range(trace.k_prime, 0, -1), layers):
        labels = classify(emb, trace, step)
        build(builder, labels)
        builder.include_in_graph(edges)
        if strict:
            builder.check_maximal(trace.k_prime - step + 1)
        logger.debug("building step %d: %d wheels, %d branch edges, forest size %d",
                     trace.k_prime - step + 1, len(labels.wheels), len(labels.branch_edges),
                     builder.forest_size)

    forest = _root_forest(emb, builder.in_forest)
    logger.info("spanning forest: %d of %d edges, k'=%d", builder.forest_size, emb.m, trace.k_prime)
    return forest, trace


def dump_forest_lines(emb: Embedding, forest: SpanningForest, trace: StrippingTrace,
                      one_based: bool = True) -> List[str]:
    """`f u v step` for forest edges, `x u v step` for missing edges."""
    off = 1 if one_based else 0
    lines = []
    for e, (u, w) in enumerate(emb.edge_ends):
        tag = "f" if forest.in_forest[e] else "x"
        lines.append(f"{tag} {u + off} {w + off} {trace.step_of_edge[e]}")
    return lines


def build_step_labels(emb: Embedding, trace: Optional[StrippingTrace] = None) -> Dict[int, WheelBranchLabels]:
    """Labels for every stripping step, keyed by step (for reports and fixtures)."""
    if trace is None:
        trace, _, _ = strip(emb)
    return {step: classify(emb, trace, step) for step in range(trace.k_prime, 0, -1)}
