"""
Validators and brute-force oracles.

Nothing in here reuses the constructors' traversal code: decompositions are
checked against the definitions on networkx views, remember numbers are
recounted on a forest rooted here, and the oracles search exhaustively.
Validators report problems as a CheckResult instead of raising.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx

from .branch_decomposition import BranchDecomposition
from .errors import NotSpanning, TooLarge
from .graph_core import Embedding
from .tree_decomposition import TreeDecomposition

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]
GraphLike = Union[Embedding, nx.Graph]

TREEWIDTH_ORACLE_MAX_N = 10
BRANCHWIDTH_ORACLE_MAX_M = 8


@dataclass
class CheckResult:
    ok: bool
    kind: str = ""
    witness: Any = None
    width: Optional[int] = None

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return f"valid (width {self.width})"
        return f"{self.kind}: {self.witness}"


@dataclass
class RememberReport:
    vr: int
    er: int
    per_vertex: Dict[int, int] = field(default_factory=dict)
    per_edge: Dict[Pair, int] = field(default_factory=dict)


def _as_graph(graph: GraphLike) -> nx.Graph:
    if isinstance(graph, Embedding):
        return graph.to_networkx()
    return graph


def _pair(u: int, v: int) -> Pair:
    return (u, v) if u < v else (v, u)


# ------------------------------ Tree decomposition ------------------------- #

def check_td(graph: GraphLike, td: TreeDecomposition) -> CheckResult:
    g = _as_graph(graph)
    nodes = range(len(td.bags))
    t = nx.Graph()
    t.add_nodes_from(nodes)
    for a, b in td.tree_edges:
        if not (0 <= a < len(td.bags) and 0 <= b < len(td.bags)):
            return CheckResult(False, "tree", (a, b))
        t.add_edge(a, b)
    if len(td.bags) and not nx.is_forest(t):
        return CheckResult(False, "tree", nx.find_cycle(t))

    occurs: Dict[int, List[int]] = {v: [] for v in g.nodes}
    for i, bag in enumerate(td.bags):
        for v in bag:
            if v not in occurs:
                return CheckResult(False, "unknown_vertex", (i, v))
            occurs[v].append(i)

    for v in sorted(g.nodes):
        if not occurs[v]:
            return CheckResult(False, "vertex_coverage", v)

    for u, v in sorted(_pair(*e) for e in g.edges):
        a, b = (u, v) if len(occurs[u]) <= len(occurs[v]) else (v, u)
        if not any(b in td.bags[i] for i in occurs[a]):
            return CheckResult(False, "edge_coverage", (u, v))

    for v in sorted(g.nodes):
        if not nx.is_connected(t.subgraph(occurs[v])):
            return CheckResult(False, "connectivity", v)

    width = max((len(b) for b in td.bags), default=0) - 1
    return CheckResult(True, width=width)


# ----------------------------- Branch decomposition ------------------------ #

def edge_orders(graph: GraphLike, bd: BranchDecomposition) -> List[int]:
    """Middle-set order of each tree edge, by explicit leaf bipartition."""
    t = bd.to_networkx()
    orders = []
    for a, b in bd.tree_edges:
        t.remove_edge(a, b)
        side = nx.node_connected_component(t, a)
        t.add_edge(a, b)
        inside, outside = set(), set()
        for leaf, (u, v) in bd.sigma.items():
            (inside if leaf in side else outside).update((u, v))
        orders.append(len(inside & outside))
    return orders


def check_bd(graph: GraphLike, bds: Union[BranchDecomposition, Sequence[BranchDecomposition]]) -> CheckResult:
    g = _as_graph(graph)
    if isinstance(bds, BranchDecomposition):
        bds = [bds]
    edges = {_pair(*e) for e in g.edges}
    seen: Dict[Pair, int] = {}
    width = 0
    for i, bd in enumerate(bds):
        t = bd.to_networkx()
        if bd.n_nodes == 0 or not nx.is_tree(t):
            return CheckResult(False, "tree", i)
        if bd.n_nodes > 1:
            for x in t.nodes:
                if t.degree(x) not in (1, 3):
                    return CheckResult(False, "degree", (i, x, t.degree(x)))
            leaves = {x for x in t.nodes if t.degree(x) == 1}
            if set(bd.sigma) != leaves:
                return CheckResult(False, "bijection", (i, sorted(leaves ^ set(bd.sigma))))
        elif len(bd.sigma) > 1:
            return CheckResult(False, "bijection", (i, sorted(bd.sigma)))
        for leaf, (u, v) in bd.sigma.items():
            p = _pair(u, v)
            if p not in edges:
                return CheckResult(False, "unknown_edge", (i, leaf, p))
            if p in seen:
                return CheckResult(False, "bijection", (i, leaf, p))
            seen[p] = i
        width = max([width] + edge_orders(g, bd))
    missing = sorted(edges - set(seen))
    if missing:
        return CheckResult(False, "edge_coverage", missing[0])
    return CheckResult(True, width=width)


# ------------------------------ Remember numbers --------------------------- #

class _RootedForest:
    def __init__(self, g: nx.Graph, forest_pairs: Iterable[Pair]):
        self.f = nx.Graph()
        self.f.add_nodes_from(g.nodes)
        self.f.add_edges_from(forest_pairs)
        self.parent: Dict[int, int] = {}
        self.depth: Dict[int, int] = {}
        self.tree: Dict[int, int] = {}
        for i, comp in enumerate(nx.connected_components(self.f)):
            root = min(comp)
            self.depth[root] = 0
            self.tree[root] = i
            for child, par in nx.bfs_predecessors(self.f, root):
                self.parent[child] = par
            for x in nx.bfs_tree(self.f, root):
                if x != root:
                    self.depth[x] = self.depth[self.parent[x]] + 1
                self.tree[x] = i

    def path(self, v: int, w: int) -> List[int]:
        if self.tree[v] != self.tree[w]:
            raise NotSpanning(v, w)
        up, down = [v], [w]
        while self.depth[up[-1]] > self.depth[down[-1]]:
            up.append(self.parent[up[-1]])
        while self.depth[down[-1]] > self.depth[up[-1]]:
            down.append(self.parent[down[-1]])
        while up[-1] != down[-1]:
            up.append(self.parent[up[-1]])
            down.append(self.parent[down[-1]])
        return up + down[-2::-1]


def fundamental_cycle(graph: GraphLike, forest_pairs: Iterable[Pair], v: int, w: int) -> Tuple[List[int], List[Pair]]:
    """Vertices and forest edges of the cycle closed by the missing edge (v, w)."""
    rf = _RootedForest(_as_graph(graph), forest_pairs)
    path = rf.path(v, w)
    return path, [_pair(a, b) for a, b in zip(path, path[1:])]


def remember_numbers(graph: GraphLike, forest_pairs: Iterable[Pair]) -> RememberReport:
    g = _as_graph(graph)
    forest_pairs = [_pair(*p) for p in forest_pairs]
    rf = _RootedForest(g, forest_pairs)
    in_forest = set(forest_pairs)
    per_vertex = {v: 0 for v in g.nodes}
    per_edge = {p: 0 for p in in_forest}
    for u, v in sorted(_pair(*e) for e in g.edges):
        if (u, v) in in_forest:
            continue
        path = rf.path(u, v)
        per_edge[(u, v)] = 1
        for x in path:
            per_vertex[x] += 1
        for a, b in zip(path, path[1:]):
            per_edge[_pair(a, b)] += 1
    return RememberReport(vr=max(per_vertex.values(), default=0),
                          er=max(per_edge.values(), default=0),
                          per_vertex=per_vertex, per_edge=per_edge)


# --------------------------------- Oracles --------------------------------- #

def _bitmask_adjacency(g: nx.Graph) -> Tuple[List[int], List[int]]:
    order = sorted(g.nodes)
    index = {v: i for i, v in enumerate(order)}
    adj = [0] * len(order)
    for u, v in g.edges:
        adj[index[u]] |= 1 << index[v]
        adj[index[v]] |= 1 << index[u]
    return order, adj


def oracle_treewidth(graph: GraphLike) -> int:
    """Exact treewidth by dynamic programming over eliminated vertex sets."""
    g = _as_graph(graph)
    n = g.number_of_nodes()
    if n > TREEWIDTH_ORACLE_MAX_N:
        raise TooLarge("vertices", TREEWIDTH_ORACLE_MAX_N, n)
    if n == 0:
        return -1
    _, adj = _bitmask_adjacency(g)

    def q(eliminated: int, v: int) -> int:
        # vertices outside `eliminated` reachable from v through eliminated ones
        seen = 1 << v
        reach = 0
        stack = [v]
        while stack:
            x = stack.pop()
            nbrs = adj[x] & ~seen
            seen |= nbrs
            reach |= nbrs & ~eliminated
            inner = nbrs & eliminated
            while inner:
                low = inner & -inner
                stack.append(low.bit_length() - 1)
                inner ^= low
        return bin(reach).count("1")

    full = (1 << n) - 1
    tw = [0] * (full + 1)
    tw[0] = -1
    for s in range(1, full + 1):
        best = n
        rest = s
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            prev = s ^ low
            best = min(best, max(tw[prev], q(prev, v)))
        tw[s] = best
    return tw[full]


def _tree_width(tree_edges: List[Pair], masks: List[int]) -> int:
    """Max middle-set order of a tree whose leaves 0..len(masks)-1 carry vertex masks."""
    leaves = len(masks)
    adj: Dict[int, List[int]] = {}
    for a, b in tree_edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    total = 0
    for x in adj:
        if x < leaves:
            total |= masks[x]
    worst = 0
    for a, b in tree_edges:
        side = 0
        seen = {a, b}
        queue = deque([b])
        while queue:
            x = queue.popleft()
            if x < leaves:
                side |= masks[x]
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        other = 0
        for x in adj:
            if x < leaves and x not in seen or x == a and a < leaves:
                other |= masks[x]
        worst = max(worst, bin(side & other).count("1"))
    return worst


def _component_branchwidth(edge_masks: List[int]) -> int:
    m = len(edge_masks)
    if m <= 1:
        return 0
    if m == 2:
        return bin(edge_masks[0] & edge_masks[1]).count("1")

    best = [m + 2]

    def grow(tree_edges: List[Pair], placed: int, next_node: int) -> None:
        # widths only grow as leaves are added, so partial trees bound from below
        current = _tree_width(tree_edges, edge_masks[:placed])
        if current >= best[0]:
            return
        if placed == m:
            best[0] = current
            return
        for i, (a, b) in enumerate(tree_edges):
            c = next_node
            grown = tree_edges[:i] + tree_edges[i + 1:] + [(a, c), (c, b), (c, placed)]
            grow(grown, placed + 1, c + 1)

    # leaves are 0..m-1, internal nodes start at m
    grow([(0, m), (1, m), (2, m)], 3, m + 1)
    return best[0]


def oracle_branchwidth(graph: GraphLike) -> int:
    """Exact branchwidth by enumerating cubic trees leaf by leaf (max over components)."""
    g = _as_graph(graph)
    m = g.number_of_edges()
    if m > BRANCHWIDTH_ORACLE_MAX_M:
        raise TooLarge("edges", BRANCHWIDTH_ORACLE_MAX_M, m)
    order, _ = _bitmask_adjacency(g)
    index = {v: i for i, v in enumerate(order)}
    best = 0
    for comp in nx.connected_components(g):
        sub = g.subgraph(comp)
        masks = [(1 << index[u]) | (1 << index[v]) for u, v in sorted(_pair(*e) for e in sub.edges)]
        best = max(best, _component_branchwidth(masks))
    return best


def sandwich_holds(tw: int, bw: int) -> bool:
    """max(b, 2) <= t + 1 <= max(floor(3b/2), 2)."""
    return max(bw, 2) <= tw + 1 <= max(3 * bw // 2, 2)
