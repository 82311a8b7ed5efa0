"""
Combinatorial plane embeddings (rotation systems) and their faces.

An Embedding is a half-edge structure without geometry:

  - edge e owns half-edges 2e (lower id -> higher id) and 2e+1; twin(h) = h ^ 1.
  - next_around[h] is the clockwise successor of h around its origin.
  - faces are traced with next(h) = next_around[twin(h)]; with clockwise
    rotations every half-edge has its face on the left.

The outer face is never guessed. Callers designate it with a directed edge
(v, u): the outer face is the face to the left of v -> u. Disconnected graphs
take one hint per component that has edges; the union of the hinted faces is
"the" outer face.
"""

import logging
from collections import deque
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

import networkx as nx

from .errors import (
    AsymmetricRotation,
    BadHint,
    DuplicateEdge,
    EmbeddingError,
    EulerViolation,
    InvalidVertex,
    SelfLoop,
)

logger = logging.getLogger(__name__)

DirectedEdge = Tuple[int, int]
HintArg = Union[None, DirectedEdge, Sequence[DirectedEdge]]


class Embedding:
    """Immutable rotation system with extracted faces and designated outer face(s)."""

    __slots__ = (
        "n", "origin", "next_around", "out", "face_of", "faces",
        "outer_faces", "hints", "edge_ends", "_edge_index", "component_of",
    )

    def __init__(self, n: int, origin: List[int], next_around: List[int], out: List[List[int]],
                 face_of: List[int], faces: List[Tuple[int, ...]], outer_faces: Tuple[int, ...],
                 hints: List[DirectedEdge], edge_ends: List[Tuple[int, int]],
                 component_of: List[int]):
        self.n = n
        self.origin = origin
        self.next_around = next_around
        self.out = out
        self.face_of = face_of
        self.faces = faces
        self.outer_faces = outer_faces
        self.hints = hints
        self.edge_ends = edge_ends
        self._edge_index = {pair: e for e, pair in enumerate(edge_ends)}
        self.component_of = component_of

    # ------------------------------ Basics -------------------------------- #

    @property
    def m(self) -> int:
        return len(self.edge_ends)

    @property
    def outer_face(self) -> int:
        return self.outer_faces[0] if self.outer_faces else -1

    @staticmethod
    def twin(h: int) -> int:
        return h ^ 1

    def target(self, h: int) -> int:
        return self.origin[h ^ 1]

    @staticmethod
    def edge_of(h: int) -> int:
        return h >> 1

    def face_next(self, h: int) -> int:
        return self.next_around[h ^ 1]

    def degree(self, v: int) -> int:
        return len(self.out[v])

    def max_degree(self) -> int:
        return max((len(hs) for hs in self.out), default=0)

    def neighbors(self, v: int) -> List[int]:
        """Neighbours of v in clockwise rotation order."""
        return [self.origin[h ^ 1] for h in self.out[v]]

    def rotations(self) -> List[List[int]]:
        return [self.neighbors(v) for v in range(self.n)]

    def edges(self) -> List[Tuple[int, int]]:
        return list(self.edge_ends)

    def edge_id(self, u: int, v: int) -> Optional[int]:
        return self._edge_index.get((u, v) if u < v else (v, u))

    def half_edge(self, u: int, v: int) -> Optional[int]:
        e = self.edge_id(u, v)
        if e is None:
            return None
        return 2 * e if u < v else 2 * e + 1

    # ------------------------------- Faces -------------------------------- #

    def faces_of_edge(self, e: int) -> Tuple[int, int]:
        if not 0 <= e < self.m:
            raise IndexError(f"Edge id {e} outside [0, {self.m}).")
        return self.face_of[2 * e], self.face_of[2 * e + 1]

    def face_vertices(self, f: int) -> List[int]:
        return [self.origin[h] for h in self.faces[f]]

    def is_outer(self, f: int) -> bool:
        return f in self.outer_faces

    def face_count(self) -> int:
        """Number of faces, counting the outer face once for the whole graph."""
        if self.n == 0:
            return 0
        return len(self.faces) - len(self.outer_faces) + 1

    # ----------------------------- Components ----------------------------- #

    def component_count(self) -> int:
        return max(self.component_of, default=-1) + 1

    def components(self) -> List[List[int]]:
        groups: List[List[int]] = [[] for _ in range(self.component_count())]
        for v, c in enumerate(self.component_of):
            groups[c].append(v)
        return groups

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edge_ends)
        return g

    def __repr__(self) -> str:
        return f"Embedding(n={self.n}, m={self.m}, faces={self.face_count()})"


# ------------------------------- Helpers ---------------------------------- #

def _normalize_hints(hint: HintArg) -> List[DirectedEdge]:
    if hint is None:
        return []
    if len(hint) == 2 and not isinstance(hint[0], (tuple, list)):
        return [(int(hint[0]), int(hint[1]))]
    return [(int(a), int(b)) for a, b in hint]


def _label_components(n: int, neighbors: Sequence[Sequence[int]]) -> List[int]:
    comp = [-1] * n
    c = 0
    for s in range(n):
        if comp[s] != -1:
            continue
        comp[s] = c
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in neighbors[u]:
                if comp[w] == -1:
                    comp[w] = c
                    queue.append(w)
        c += 1
    return comp


def _trace_faces(origin: List[int], next_around: List[int]) -> Tuple[List[int], List[Tuple[int, ...]]]:
    face_of = [-1] * len(origin)
    faces: List[Tuple[int, ...]] = []
    for start in range(len(origin)):
        if face_of[start] != -1:
            continue
        fid = len(faces)
        cycle = []
        h = start
        while face_of[h] == -1:
            face_of[h] = fid
            cycle.append(h)
            h = next_around[h ^ 1]
        faces.append(tuple(cycle))
    return face_of, faces


def _assemble(n: int, rotations: Sequence[Sequence[int]]):
    """Validate a rotation system and derive half-edges, faces and components."""
    listed: List[Set[int]] = []
    for u in range(n):
        seen: Set[int] = set()
        for v in rotations[u]:
            if not 0 <= v < n:
                raise InvalidVertex(v, n)
            if v == u:
                raise SelfLoop(u)
            if v in seen:
                raise DuplicateEdge(u, v)
            seen.add(v)
        listed.append(seen)
    for u in range(n):
        for v in rotations[u]:
            if u not in listed[v]:
                raise AsymmetricRotation(u, v)

    edge_ends: List[Tuple[int, int]] = []
    index: Dict[Tuple[int, int], int] = {}
    for u in range(n):
        for v in rotations[u]:
            if u < v:
                index[(u, v)] = len(edge_ends)
                edge_ends.append((u, v))

    origin = [0] * (2 * len(edge_ends))
    out: List[List[int]] = []
    for u in range(n):
        hs = []
        for v in rotations[u]:
            e = index[(u, v) if u < v else (v, u)]
            h = 2 * e if u < v else 2 * e + 1
            origin[h] = u
            hs.append(h)
        out.append(hs)

    next_around = [0] * len(origin)
    for hs in out:
        d = len(hs)
        for i, h in enumerate(hs):
            next_around[h] = hs[(i + 1) % d]

    face_of, faces = _trace_faces(origin, next_around)
    component_of = _label_components(n, rotations)
    return origin, next_around, out, face_of, faces, edge_ends, component_of


def _check_euler(n: int, edge_ends, faces, origin, component_of) -> None:
    c_count = max(component_of, default=-1) + 1
    v_count = [0] * c_count
    e_count = [0] * c_count
    f_count = [0] * c_count
    for v in range(n):
        v_count[component_of[v]] += 1
    for u, _ in edge_ends:
        e_count[component_of[u]] += 1
    for cycle in faces:
        f_count[component_of[origin[cycle[0]]]] += 1
    roots = {}
    for v in range(n - 1, -1, -1):
        roots[component_of[v]] = v
    for c in range(c_count):
        if e_count[c] and v_count[c] - e_count[c] + f_count[c] != 2:
            raise EulerViolation(roots[c], v_count[c], e_count[c], f_count[c])


def _resolve_outer(n, origin, face_of, edge_ends, component_of, hints) -> Tuple[int, ...]:
    index = {pair: e for e, pair in enumerate(edge_ends)}
    outer: List[int] = []
    chosen: Dict[int, int] = {}
    for v, u in hints:
        if not (0 <= v < n and 0 <= u < n):
            raise BadHint(f"Hint ({v}, {u}) references a vertex outside [0, {n}).")
        e = index.get((v, u) if v < u else (u, v))
        if e is None:
            raise BadHint(f"Hint ({v}, {u}) is not an edge of the embedding.")
        h = 2 * e if v < u else 2 * e + 1
        f = face_of[h]
        c = component_of[v]
        if c in chosen and chosen[c] != f:
            raise BadHint(f"Hint ({v}, {u}) designates a second outer face in the component of vertex {v}.")
        if c not in chosen:
            chosen[c] = f
            outer.append(f)
    for u, _ in edge_ends:
        if component_of[u] not in chosen:
            raise BadHint(f"Component containing vertex {u} has edges but no outer-face hint.")
    return tuple(outer)


# ------------------------------ Operations -------------------------------- #

def build_embedding(n: int, rotations: Sequence[Sequence[int]], outer_face_hint: HintArg = None) -> Embedding:
    """
    Build an Embedding from clockwise rotations.

    ``outer_face_hint`` is a directed edge (v, u), or a list of them for
    disconnected graphs; the face to the left of v -> u becomes the outer face.
    """
    if isinstance(rotations, Mapping):
        for v in rotations:
            if not 0 <= v < n:
                raise InvalidVertex(v, n)
        rotations = [list(rotations.get(v, ())) for v in range(n)]
    elif len(rotations) != n:
        raise EmbeddingError(f"Expected {n} rotation lists, got {len(rotations)}.")
    else:
        rotations = [list(r) for r in rotations]
    origin, next_around, out, face_of, faces, edge_ends, component_of = _assemble(n, rotations)
    _check_euler(n, edge_ends, faces, origin, component_of)
    hints = _normalize_hints(outer_face_hint)
    outer = _resolve_outer(n, origin, face_of, edge_ends, component_of, hints)
    return Embedding(n, origin, next_around, out, face_of, faces, outer,
                     hints, edge_ends, component_of)


def faces_of_edge(emb: Embedding, e: int) -> Tuple[int, int]:
    return emb.faces_of_edge(e)


def delete_edges(emb: Embedding, edges: Iterable[int]) -> Embedding:
    """
    Remove a set of edges, keeping the rotation order of the survivors.

    A new face is outer when it merged with an old outer face. A component
    that detaches inside an inner face has no such face; it takes as outer the
    face whose merge class it shares with another component, or its lowest
    face id.
    """
    removed = set(edges)
    for e in removed:
        if not 0 <= e < emb.m:
            raise IndexError(f"Edge id {e} outside [0, {emb.m}).")
    if not removed:
        return emb

    parent = list(range(len(emb.faces)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in removed:
        a, b = find(emb.face_of[2 * e]), find(emb.face_of[2 * e + 1])
        if a != b:
            parent[a] = b
    outer_classes = {find(f) for f in emb.outer_faces}

    rotations = [[emb.origin[h ^ 1] for h in emb.out[v] if (h >> 1) not in removed]
                 for v in range(emb.n)]
    origin, next_around, out, face_of, faces, edge_ends, component_of = _assemble(emb.n, rotations)

    def old_class(h: int) -> int:
        old_h = emb.half_edge(origin[h], origin[h ^ 1])
        return find(emb.face_of[old_h])

    face_class = [old_class(cycle[0]) for cycle in faces]
    face_comp = [component_of[origin[cycle[0]]] for cycle in faces]
    outer_by_comp: Dict[int, int] = {}
    for f, cls in enumerate(face_class):
        if cls in outer_classes and face_comp[f] not in outer_by_comp:
            outer_by_comp[face_comp[f]] = f

    comps_per_class: Dict[int, Set[int]] = {}
    for f, cls in enumerate(face_class):
        comps_per_class.setdefault(cls, set()).add(face_comp[f])
    for f in range(len(faces)):
        c = face_comp[f]
        if c in outer_by_comp:
            continue
        shared = [g for g in range(len(faces))
                  if face_comp[g] == c and len(comps_per_class[face_class[g]]) > 1]
        outer_by_comp[c] = shared[0] if shared else f

    hints = []
    for c in sorted(outer_by_comp):
        h = faces[outer_by_comp[c]][0]
        hints.append((origin[h], origin[h ^ 1]))
    logger.debug("delete_edges: removed %d edges, %d faces remain", len(removed), len(faces))
    return build_embedding(emb.n, rotations, hints)


def delete_vertices(emb: Embedding, vertices: Iterable[int]) -> Embedding:
    """Remove every edge incident to the given vertices (the vertices stay, isolated)."""
    drop = set(vertices)
    return delete_edges(emb, {e for e, (u, v) in enumerate(emb.edge_ends) if u in drop or v in drop})
