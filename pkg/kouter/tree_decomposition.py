"""
Tree decompositions of k-outerplanar graphs.

Index 1 goes through repeated removal of degree-2 vertices. Higher indices use
the shared front end (degree expansion, spanning forest), build the
open-face tree over the missing edges and fill bags along fundamental cycles
on the forest subdivided at every edge. Expanded vertices are finally mapped
back to the vertices they came from.
"""

import logging
import time
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

import networkx as nx

from .embedding_analysis import LayerAssignment, compute_layers
from .errors import FactViolation, NotOuterplanar
from .expand import ExpansionRecord, contract_record, expand_high_degree
from .graph_core import Embedding
from .spanning_forest import SpanningForest, StrippingTrace, spanning_forest

logger = logging.getLogger(__name__)


# ---------------------------------- Types ---------------------------------- #

@dataclass
class TreeDecomposition:
    bags: List[FrozenSet[int]]
    tree_edges: List[Tuple[int, int]]
    n_vertices: int

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def __len__(self) -> int:
        return len(self.bags)

    def to_networkx(self) -> nx.Graph:
        t = nx.Graph()
        t.add_nodes_from(range(len(self.bags)))
        t.add_edges_from(self.tree_edges)
        return t

    def joined(self) -> "TreeDecomposition":
        """Single tree: component trees chained through their lowest node ids."""
        comps = sorted(min(c) for c in nx.connected_components(self.to_networkx()))
        extra = list(zip(comps, comps[1:]))
        return TreeDecomposition(list(self.bags), list(self.tree_edges) + extra, self.n_vertices)


@dataclass
class OpenFaceTree:
    root: int
    parent: Dict[int, int]
    parent_edge: Dict[int, int]
    order: List[int]

    def bottom_up(self) -> List[int]:
        return [f for f in reversed(self.order) if f != self.root]

    def __len__(self) -> int:
        return len(self.order)


@dataclass
class FrontEnd:
    layers: LayerAssignment
    expanded: Embedding
    record: ExpansionRecord
    forest: SpanningForest
    trace: StrippingTrace


@dataclass
class TreeRun:
    k: int
    td: TreeDecomposition
    front: Optional[FrontEnd] = None
    oft: Optional[OpenFaceTree] = None
    td_expanded: Optional[TreeDecomposition] = None
    timings: Dict[str, float] = field(default_factory=dict)


# ------------------------------- Outerplanar ------------------------------- #

def decompose_outerplanar(emb: Embedding) -> TreeDecomposition:
    """Width <= 2 decomposition by peeling vertices of degree at most 2."""
    k = compute_layers(emb).index_k
    if k > 1:
        raise NotOuterplanar(k)

    adj: List[Set[int]] = [set(emb.neighbors(v)) for v in range(emb.n)]
    removed = [False] * emb.n
    work = deque(v for v in range(emb.n) if len(adj[v]) <= 2)
    events: List[Tuple[str, Tuple[int, ...]]] = []

    def push(x: int) -> None:
        if not removed[x] and len(adj[x]) <= 2:
            work.append(x)

    while work:
        v = work.popleft()
        if removed[v]:
            continue
        d = len(adj[v])
        if d == 0:
            events.append(("single", (v,)))
            removed[v] = True
        elif d == 1:
            w = next(iter(adj[v]))
            removed[v] = True
            adj[w].discard(v)
            adj[v].clear()
            if not adj[w]:
                removed[w] = True
                events.append(("root", (v, w)))
            else:
                events.append(("leaf", (v, w)))
                push(w)
        elif d == 2:
            w, x = sorted(adj[v])
            removed[v] = True
            adj[v].clear()
            adj[w].discard(v)
            adj[x].discard(v)
            if x not in adj[w]:
                adj[w].add(x)
                adj[x].add(w)
            events.append(("fold", (v, w, x)))
            push(w)
            push(x)

    left = [v for v in range(emb.n) if not removed[v]]
    if left:
        logger.debug("outerplanar peeling stuck on %d vertices", len(left))
        raise NotOuterplanar(k)

    bags: List[FrozenSet[int]] = []
    tree_edges: List[Tuple[int, int]] = []
    pair_node: Dict[Tuple[int, int], int] = {}
    vertex_node: Dict[int, int] = {}
    for kind, ev in reversed(events):
        node = len(bags)
        bag = frozenset(ev)
        if kind == "leaf":
            parent = vertex_node[ev[1]]
        elif kind == "fold":
            parent = pair_node[(ev[1], ev[2])]
        else:
            parent = None
        bags.append(bag)
        if parent is not None:
            tree_edges.append((parent, node))
        for a, b in combinations(sorted(bag), 2):
            pair_node[(a, b)] = node
        for a in bag:
            vertex_node[a] = node
    return TreeDecomposition(bags, tree_edges, emb.n)


# ----------------------------- Open-face tree ------------------------------ #

def build_open_face_tree(emb: Embedding, forest: SpanningForest, trace: StrippingTrace) -> OpenFaceTree:
    """Faces linked through missing edges, rooted at the (collapsed) outer face."""
    s = trace.stripping_number
    root = emb.outer_face

    def canon(f: int) -> int:
        return root if emb.is_outer(f) else f

    for e in range(emb.m):
        f1, f2 = emb.faces_of_edge(e)
        if abs(s[f1] - s[f2]) > 1:
            raise FactViolation("level-gap", f"faces of edge {emb.edge_ends[e]} differ by {abs(s[f1] - s[f2])}", e)

    parent: Dict[int, int] = {}
    parent_edge: Dict[int, int] = {}
    children: Dict[int, List[int]] = {}
    seen_pairs = set()
    for e in forest.non_forest_edges():
        f1, f2 = emb.faces_of_edge(e)
        if s[f1] == s[f2]:
            raise FactViolation("level-crossing", f"missing edge {emb.edge_ends[e]} lies between faces of equal stripping number", e)
        if abs(s[f1] - s[f2]) > 1:
            raise FactViolation("level-gap", f"missing edge {emb.edge_ends[e]} spans {abs(s[f1] - s[f2])} stripping levels", e)
        lower, upper = (canon(f1), canon(f2)) if s[f1] < s[f2] else (canon(f2), canon(f1))
        pair = (min(lower, upper), max(lower, upper))
        if pair in seen_pairs:
            raise FactViolation("unique-face-pair", f"faces {pair} share more than one missing edge", e)
        seen_pairs.add(pair)
        if upper in parent:
            raise FactViolation("single-parent", f"face {upper} has two missing edges towards lower faces", e)
        parent[upper] = lower
        parent_edge[upper] = e
        children.setdefault(lower, []).append(upper)

    order: List[int] = []
    if root >= 0:
        order.append(root)
        queue = deque([root])
        while queue:
            f = queue.popleft()
            for g in sorted(children.get(f, ())):
                order.append(g)
                queue.append(g)
    if len(order) != len(parent) + (1 if root >= 0 else 0):
        raise FactViolation("face-tree", "missing edges do not form a tree over the faces")
    return OpenFaceTree(root=root, parent=parent, parent_edge=parent_edge, order=order)


# -------------------------------- Bag filling ------------------------------ #

def forest_edge_nodes(emb: Embedding, forest: SpanningForest) -> Dict[int, int]:
    """Decomposition node id of each forest edge (after the n vertex nodes)."""
    return {e: emb.n + i for i, e in enumerate(forest.forest_edges())}


def augmented_bags(emb: Embedding, forest: SpanningForest, oft: OpenFaceTree) -> Dict[int, Set[int]]:
    """Nodes that receive an endpoint for each missing edge, keyed by edge id."""
    node_of = forest_edge_nodes(emb, forest)
    touched: Dict[int, Set[int]] = {}
    for f in oft.bottom_up():
        e = oft.parent_edge[f]
        u, w = emb.edge_ends[e]
        a, b = min(u, w), max(u, w)
        path, path_edges = forest.fundamental_path(a, b)
        touched[e] = {x for x in path if x != b} | {node_of[pe] for pe in path_edges}
    return touched


def fill_bags(emb: Embedding, forest: SpanningForest, oft: OpenFaceTree) -> TreeDecomposition:
    node_of = forest_edge_nodes(emb, forest)
    bags: List[Set[int]] = [{v} for v in range(emb.n)]
    tree_edges: List[Tuple[int, int]] = []
    for e, node in node_of.items():
        u, w = emb.edge_ends[e]
        bags.append({u, w})
        tree_edges.append((u, node))
        tree_edges.append((node, w))

    for f in oft.bottom_up():
        u, w = emb.edge_ends[oft.parent_edge[f]]
        a, b = min(u, w), max(u, w)
        path, path_edges = forest.fundamental_path(a, b)
        for x in path:
            if x != b:
                bags[x].add(a)
        for pe in path_edges:
            bags[node_of[pe]].add(a)
    return TreeDecomposition([frozenset(b) for b in bags], tree_edges, emb.n)


def shrink(td: TreeDecomposition, rec: ExpansionRecord) -> TreeDecomposition:
    if rec.is_identity:
        return td
    return TreeDecomposition(contract_record(td.bags, rec), list(td.tree_edges), rec.original_n)


# --------------------------------- Pipeline -------------------------------- #

def front_end(emb: Embedding, layers: Optional[LayerAssignment] = None,
              timings: Optional[Dict[str, float]] = None) -> FrontEnd:
    """Shared steps of both decompositions: layers, expansion, spanning forest."""
    timings = {} if timings is None else timings
    t0 = time.perf_counter()
    if layers is None:
        layers = compute_layers(emb)
    t1 = time.perf_counter()
    expanded, record = expand_high_degree(emb, layers.face_layer)
    t2 = time.perf_counter()
    forest, trace = spanning_forest(expanded)
    t3 = time.perf_counter()
    timings["layers"] = timings.get("layers", 0.0) + (t1 - t0)
    timings["expand"] = t2 - t1
    timings["forest"] = t3 - t2
    return FrontEnd(layers=layers, expanded=expanded, record=record, forest=forest, trace=trace)


def run_tree_pipeline(emb: Embedding) -> TreeRun:
    timings: Dict[str, float] = {}
    t0 = time.perf_counter()
    layers = compute_layers(emb)
    timings["layers"] = time.perf_counter() - t0
    k = layers.index_k

    if k <= 1:
        t1 = time.perf_counter()
        td = decompose_outerplanar(emb)
        timings["bags"] = time.perf_counter() - t1
        return TreeRun(k=k, td=td, timings=timings)

    front = front_end(emb, layers, timings)
    t1 = time.perf_counter()
    oft = build_open_face_tree(front.expanded, front.forest, front.trace)
    td_expanded = fill_bags(front.expanded, front.forest, oft)
    t2 = time.perf_counter()
    td = shrink(td_expanded, front.record)
    t3 = time.perf_counter()
    timings["bags"] = t2 - t1
    timings["shrink"] = t3 - t2
    logger.info("tree decomposition: k=%d, %d nodes, width %d", k, len(td), td.width)
    return TreeRun(k=k, td=td, front=front, oft=oft, td_expanded=td_expanded, timings=timings)


def decompose(emb: Embedding, with_details: bool = False):
    """Tree decomposition of width at most 3k - 1 (or the full TreeRun)."""
    run = run_tree_pipeline(emb)
    return run if with_details else run.td
