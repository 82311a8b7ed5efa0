"""
Branch decompositions of width at most 2k + 1.

The decomposition tree T_b starts as a copy of the spanning forest T on the
degree-3 expanded graph:

  a. a forest edge whose endpoints both have degree >= 2 is subdivided by a
     node w, and a leaf x hung off w represents the edge;
  b. a forest edge with an endpoint u of degree 1 is represented by u itself;
  c. every missing edge gets a leaf hung off its lower-id endpoint;
  d. nodes of degree <= 1 that represent no edge are pruned (to a fixed point);
  e. degree-2 nodes are suppressed.

Restricting to the original graph drops the leaves of replacement-path edges
and repeats d and e.
"""

import logging
import time
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

import networkx as nx

from .expand import ExpansionRecord
from .graph_core import Embedding
from .spanning_forest import SpanningForest
from .tree_decomposition import FrontEnd, front_end

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


# ---------------------------------- Types ---------------------------------- #

@dataclass
class BranchDecomposition:
    n_nodes: int
    tree_edges: List[Tuple[int, int]]
    sigma: Dict[int, Pair]
    edge_labels: List[FrozenSet[int]] = field(default_factory=list)
    component: int = 0

    @property
    def m(self) -> int:
        return len(self.sigma)

    @property
    def is_sentinel(self) -> bool:
        return not self.tree_edges

    @property
    def width(self) -> int:
        return max(self.edge_orders(), default=0)

    def to_networkx(self) -> nx.Graph:
        t = nx.Graph()
        t.add_nodes_from(range(self.n_nodes))
        t.add_edges_from(self.tree_edges)
        return t

    def edge_orders(self) -> List[int]:
        """
        Middle-set order of every tree edge, in ``tree_edges`` order.

        A vertex is in the middle set of an edge iff the edge lies on the
        Steiner tree of the leaves of its incident edges; counting uses +1
        per leaf and -1 per LCA of DFS-consecutive leaves (and of the first
        and last), summed over subtrees.
        """
        if not self.tree_edges:
            return []
        t = self.to_networkx()
        root = 0
        parent = dict(nx.bfs_predecessors(t, root))
        preorder = {x: i for i, x in enumerate(nx.dfs_preorder_nodes(t, root))}

        leaves_of: Dict[int, List[int]] = {}
        for leaf, (u, v) in self.sigma.items():
            leaves_of.setdefault(u, []).append(leaf)
            leaves_of.setdefault(v, []).append(leaf)

        weight = [0] * self.n_nodes
        wanted: Counter = Counter()
        for leaves in leaves_of.values():
            leaves.sort(key=preorder.__getitem__)
            for x in leaves:
                weight[x] += 1
            for a, b in list(zip(leaves, leaves[1:])) + [(leaves[0], leaves[-1])]:
                if a == b:
                    weight[a] -= 1
                else:
                    wanted[(min(a, b), max(a, b))] += 1

        if wanted:
            directed = nx.DiGraph()
            directed.add_nodes_from(range(self.n_nodes))
            directed.add_edges_from((p, c) for c, p in parent.items())
            for (a, b), lca in nx.tree_all_pairs_lowest_common_ancestor(directed, root=root, pairs=set(wanted)):
                weight[lca] -= wanted[(min(a, b), max(a, b))]

        subtotal = list(weight)
        for x in sorted(parent, key=preorder.__getitem__, reverse=True):
            subtotal[parent[x]] += subtotal[x]
        orders = []
        for a, b in self.tree_edges:
            child = b if parent.get(b) == a else a
            orders.append(subtotal[child])
        return orders


@dataclass
class BranchRun:
    k: int
    decompositions: List[BranchDecomposition]
    front: Optional[FrontEnd] = None
    expanded_decompositions: List[BranchDecomposition] = field(default_factory=list)
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def width(self) -> int:
        return max((bd.width for bd in self.decompositions), default=0)


# -------------------------------- Tree surgery ----------------------------- #

class _Tree:
    """Mutable unrooted tree with per-edge forest labels."""

    def __init__(self):
        self.adj: Dict[int, Set[int]] = {}
        self.labels: Dict[FrozenSet[int], Set[int]] = {}
        self.sigma: Dict[int, Pair] = {}

    def add_node(self, x: int) -> None:
        self.adj.setdefault(x, set())

    def add_edge(self, a: int, b: int, label: Optional[Set[int]] = None) -> None:
        self.add_node(a)
        self.add_node(b)
        self.adj[a].add(b)
        self.adj[b].add(a)
        self.labels[frozenset((a, b))] = set(label or ())

    def remove_edge(self, a: int, b: int) -> Set[int]:
        self.adj[a].discard(b)
        self.adj[b].discard(a)
        return self.labels.pop(frozenset((a, b)))

    def remove_node(self, x: int) -> None:
        for y in list(self.adj[x]):
            self.remove_edge(x, y)
        del self.adj[x]

    def prune(self) -> None:
        queue = deque(x for x in self.adj if len(self.adj[x]) <= 1 and x not in self.sigma)
        while queue:
            x = queue.popleft()
            if x not in self.adj or x in self.sigma or len(self.adj[x]) > 1:
                continue
            nbrs = list(self.adj[x])
            self.remove_node(x)
            for y in nbrs:
                if len(self.adj[y]) <= 1 and y not in self.sigma:
                    queue.append(y)

    def suppress(self) -> None:
        queue = deque(x for x in self.adj if len(self.adj[x]) == 2)
        while queue:
            x = queue.popleft()
            if x not in self.adj or len(self.adj[x]) != 2 or x in self.sigma:
                continue
            a, b = sorted(self.adj[x])
            label = self.remove_edge(x, a) | self.remove_edge(x, b)
            del self.adj[x]
            self.add_edge(a, b, label)
            queue.extend(y for y in (a, b) if len(self.adj[y]) == 2)

    def split(self) -> List[BranchDecomposition]:
        g = nx.Graph()
        g.add_nodes_from(self.adj)
        g.add_edges_from((a, b) for a in self.adj for b in self.adj[a] if a < b)
        parts = sorted((sorted(c) for c in nx.connected_components(g)), key=lambda c: c[0])
        out = []
        for i, nodes in enumerate(parts):
            dense = {x: j for j, x in enumerate(nodes)}
            edges = sorted((dense[a], dense[b]) for a in nodes for b in self.adj[a] if a < b)
            labels = [frozenset(self.labels[frozenset((nodes[a], nodes[b]))]) for a, b in edges]
            sigma = {dense[x]: self.sigma[x] for x in nodes if x in self.sigma}
            out.append(BranchDecomposition(n_nodes=len(nodes), tree_edges=edges, sigma=sigma,
                                           edge_labels=labels, component=i))
        return out


def sentinel(pair: Optional[Pair], component: int = 0) -> BranchDecomposition:
    """Single-node decomposition of width 0 for a component with one edge."""
    sigma = {0: pair} if pair is not None else {}
    return BranchDecomposition(n_nodes=1, tree_edges=[], sigma=sigma, component=component)


# --------------------------------- Building -------------------------------- #

def build_branch(emb: Embedding, forest: SpanningForest) -> List[BranchDecomposition]:
    """One decomposition per component with edges, ordered by lowest vertex id."""
    per_comp = Counter(emb.component_of[u] for u, _ in emb.edge_ends)
    small: Dict[int, Pair] = {}
    for c, count in per_comp.items():
        if count < 2:
            small[c] = next(p for p in emb.edge_ends if emb.component_of[p[0]] == c)

    tb = _Tree()
    for v in range(emb.n):
        if per_comp.get(emb.component_of[v]) and emb.component_of[v] not in small:
            tb.add_node(v)
    next_id = emb.n

    for e in forest.forest_edges():
        u, v = emb.edge_ends[e]
        if emb.component_of[u] in small:
            continue
        if emb.degree(u) >= 2 and emb.degree(v) >= 2:
            w, x = next_id, next_id + 1
            next_id += 2
            tb.add_edge(u, w, {e})
            tb.add_edge(w, v, {e})
            tb.add_edge(w, x)
            tb.sigma[x] = (u, v)
        else:
            tb.add_edge(u, v, {e})
            leaf = u if emb.degree(u) == 1 else v
            tb.sigma[leaf] = (u, v)

    for e in forest.non_forest_edges():
        u, v = emb.edge_ends[e]
        x = next_id
        next_id += 1
        tb.add_edge(min(u, v), x)
        tb.sigma[x] = (u, v)

    tb.prune()
    tb.suppress()
    built = tb.split()

    by_comp = {emb.component_of[next(iter(bd.sigma.values()))[0]]: bd for bd in built}
    out: List[BranchDecomposition] = []
    for c in sorted(per_comp):
        bd = sentinel(small[c]) if c in small else by_comp[c]
        bd.component = len(out)
        out.append(bd)
    logger.debug("build_branch: %d components, %d nodes total", len(out), sum(b.n_nodes for b in out))
    return out


def restrict_to_minor(bds: List[BranchDecomposition], rec: ExpansionRecord) -> List[BranchDecomposition]:
    """Drop replacement-path edges and relabel leaves onto original vertices."""
    if rec.is_identity:
        return bds
    back = rec.backward
    out: List[BranchDecomposition] = []
    for bd in bds:
        kept = {x: (back[u], back[v]) for x, (u, v) in bd.sigma.items() if back[u] != back[v]}
        if bd.is_sentinel or len(kept) < 2:
            pair = next(iter(kept.values()), None)
            out.append(sentinel(tuple(sorted(pair)) if pair else None, bd.component))
            continue
        tb = _Tree()
        for x in range(bd.n_nodes):
            tb.add_node(x)
        for (a, b), label in zip(bd.tree_edges, bd.edge_labels or [frozenset()] * len(bd.tree_edges)):
            tb.add_edge(a, b, set(label))
        tb.sigma = {x: (min(p), max(p)) for x, p in kept.items()}
        tb.prune()
        tb.suppress()
        (restricted,) = tb.split()
        restricted.component = bd.component
        out.append(restricted)
    return out


def leaf_attachment(bd: BranchDecomposition) -> Dict[Pair, int]:
    """Tree node adjacent to each edge's leaf."""
    nbr: Dict[int, int] = {}
    for a, b in bd.tree_edges:
        nbr.setdefault(a, b)
        nbr.setdefault(b, a)
    return {pair: nbr[x] for x, pair in bd.sigma.items() if x in nbr}


# --------------------------------- Pipeline -------------------------------- #

def run_branch_pipeline(emb: Embedding) -> BranchRun:
    timings: Dict[str, float] = {}
    if emb.m == 0:
        return BranchRun(k=1 if emb.n else 0, decompositions=[], timings=timings)
    front = front_end(emb, timings=timings)
    t0 = time.perf_counter()
    expanded_bds = build_branch(front.expanded, front.forest)
    t1 = time.perf_counter()
    bds = restrict_to_minor(expanded_bds, front.record)
    t2 = time.perf_counter()
    timings["bags"] = t1 - t0
    timings["restrict"] = t2 - t1
    run = BranchRun(k=front.layers.index_k, decompositions=bds, front=front,
                    expanded_decompositions=expanded_bds, timings=timings)
    logger.info("branch decomposition: k=%d, %d components, width %d",
                run.k, len(bds), run.width)
    return run


def branch_decompose(emb: Embedding) -> List[BranchDecomposition]:
    """Branch decompositions (one per component with edges) of width at most 2k + 1."""
    return run_branch_pipeline(emb).decompositions
