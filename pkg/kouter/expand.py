"""
Degree reduction: every vertex of degree d >= 4 becomes a path of d - 2
vertices of degree 3.

For a vertex v the incident face of minimum layer (ties: lowest face id) is
kept adjacent to every path vertex. The edges of v are handed out in
clockwise order starting right after that face: the first path vertex takes
two edges, every inner path vertex one, the last path vertex two. The first
path vertex keeps the id of v; the other d - 3 take fresh ids appended after
all original ids.
"""

import logging
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, List, Optional, Set, Tuple

from .embedding_analysis import compute_face_layers
from .graph_core import Embedding, build_embedding

logger = logging.getLogger(__name__)


@dataclass
class ExpansionRecord:
    forward: List[List[int]]
    backward: List[int]
    edge_forward: List[int]
    path_edges: FrozenSet[int] = field(default_factory=frozenset)

    @property
    def original_n(self) -> int:
        return len(self.forward)

    @property
    def is_identity(self) -> bool:
        return len(self.backward) == len(self.forward)

    def stats(self) -> dict:
        return {
            "expanded_n": len(self.backward),
            "added_vertices": len(self.backward) - len(self.forward),
            "added_edges": len(self.path_edges),
            "expanded_vertices": sum(1 for p in self.forward if len(p) > 1),
        }


def identity_record(emb: Embedding) -> ExpansionRecord:
    return ExpansionRecord(
        forward=[[v] for v in range(emb.n)],
        backward=list(range(emb.n)),
        edge_forward=list(range(emb.m)),
    )


def _split_rotation(neighbours: List[int], path: List[int]) -> List[List[int]]:
    """Clockwise rotations of the path vertices for neighbours g_0 .. g_{d-1}."""
    d = len(neighbours)
    last = len(path) - 1
    rots = [[neighbours[0], neighbours[1], path[1]]]
    for t in range(1, last):
        rots.append([path[t - 1], neighbours[t + 1], path[t + 1]])
    rots.append([path[last - 1], neighbours[d - 2], neighbours[d - 1]])
    return rots


def _holder_index(j: int, d: int) -> int:
    if j <= 1:
        return 0
    if j >= d - 2:
        return d - 3
    return j - 1


def expand_high_degree(emb: Embedding, face_layers: Optional[List[int]] = None) -> Tuple[Embedding, ExpansionRecord]:
    if emb.max_degree() <= 3:
        return emb, identity_record(emb)
    if face_layers is None:
        face_layers = compute_face_layers(emb)

    rot = emb.rotations()
    forward = [[v] for v in range(emb.n)]
    backward = list(range(emb.n))
    # ends[e][s] is the current id at the origin side of half-edge 2e + s
    ends = [[u, w] for u, w in emb.edge_ends]

    for v in range(emb.n):
        d = emb.degree(v)
        if d < 4:
            continue
        hs = emb.out[v]

        def angle_key(t: int) -> Tuple[int, int]:
            f = emb.face_of[hs[(t + 1) % d]]
            return face_layers[f], f

        best = min(range(d), key=angle_key)
        order = [(best + 1 + j) % d for j in range(d)]
        neighbours = [rot[v][p] for p in order]

        start = len(backward)
        path = [v] + list(range(start, start + d - 3))
        backward.extend([v] * (d - 3))
        forward[v] = path

        for j, p in enumerate(order):
            holder = path[_holder_index(j, d)]
            if holder == v:
                continue
            w = neighbours[j]
            rot[w][rot[w].index(v)] = holder
            h = hs[p]
            ends[h >> 1][h & 1] = holder

        new_rots = _split_rotation(neighbours, path)
        rot[v] = new_rots[0]
        rot.extend(new_rots[1:])

    hints = []
    for a, b in emb.hints:
        h = emb.half_edge(a, b)
        e, side = h >> 1, h & 1
        hints.append((ends[e][side], ends[e][1 - side]))

    expanded = build_embedding(len(backward), rot, hints)
    edge_forward = [expanded.edge_id(x, y) for x, y in ends]
    path_edges = frozenset(set(range(expanded.m)) - set(edge_forward))
    logger.info("expanded %d vertices: n %d -> %d, %d path edges",
                sum(1 for p in forward if len(p) > 1), emb.n, expanded.n, len(path_edges))
    return expanded, ExpansionRecord(forward=forward, backward=backward,
                                     edge_forward=edge_forward, path_edges=path_edges)


# ------------------------------- Contraction ------------------------------ #

def contract_vertices(vertices: Iterable[int], rec: ExpansionRecord) -> FrozenSet[int]:
    back = rec.backward
    return frozenset(back[x] for x in vertices)


def contract_record(labeling: Iterable[Iterable[int]], rec: ExpansionRecord) -> List[FrozenSet[int]]:
    """Relabel a sequence of vertex sets (bags, middle sets) onto original vertices."""
    return [contract_vertices(group, rec) for group in labeling]


def contract_graph(expanded: Embedding, rec: ExpansionRecord) -> Set[Tuple[int, int]]:
    """Edge set obtained by contracting every replacement path."""
    back = rec.backward
    edges = set()
    for x, y in expanded.edge_ends:
        a, b = back[x], back[y]
        if a != b:
            edges.add((a, b) if a < b else (b, a))
    return edges
