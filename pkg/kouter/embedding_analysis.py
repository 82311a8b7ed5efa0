"""
Vertex layers, face layers and the outerplanarity index k.

Layers come from peeling: round i removes every vertex still on the outer face
(layer i) and merges all faces around those vertices into the outer face. The
faces merged in round i get face layer i; the hinted outer face has layer 0.
Each vertex and face is touched once, so a full pass is O(n).
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List

from .graph_core import Embedding

logger = logging.getLogger(__name__)


@dataclass
class LayerAssignment:
    vertex_layer: List[int]
    face_layer: List[int]
    index_k: int

    def layer_sizes(self) -> Dict[int, int]:
        return dict(sorted(Counter(self.vertex_layer).items()))

    def vertices_in_layer(self, layer: int) -> List[int]:
        return [v for v, lv in enumerate(self.vertex_layer) if lv == layer]


def compute_layers(emb: Embedding) -> LayerAssignment:
    vertex_layer = [0] * emb.n
    face_layer = [-1] * len(emb.faces)

    for v in range(emb.n):
        if not emb.out[v]:
            vertex_layer[v] = 1

    frontier = list(emb.outer_faces)
    for f in frontier:
        face_layer[f] = 0

    layer = 0
    while frontier:
        layer += 1
        peeled = []
        for f in frontier:
            for h in emb.faces[f]:
                v = emb.origin[h]
                if vertex_layer[v] == 0:
                    vertex_layer[v] = layer
                    peeled.append(v)
        merged = []
        for v in peeled:
            for h in emb.out[v]:
                g = emb.face_of[h]
                if face_layer[g] == -1:
                    face_layer[g] = layer
                    merged.append(g)
        logger.debug("peel round %d: %d vertices, %d faces merged", layer, len(peeled), len(merged))
        frontier = merged

    index_k = max(vertex_layer, default=0)
    return LayerAssignment(vertex_layer=vertex_layer, face_layer=face_layer, index_k=index_k)


def compute_vertex_layers(emb: Embedding) -> LayerAssignment:
    """Vertex layers and k (the face part is filled in by the same pass)."""
    return compute_layers(emb)


def compute_face_layers(emb: Embedding) -> List[int]:
    return compute_layers(emb).face_layer


def outerplanarity_index(emb: Embedding) -> int:
    return compute_layers(emb).index_k
