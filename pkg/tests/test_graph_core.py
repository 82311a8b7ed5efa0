import numpy as np
import pytest

from kouter.errors import AsymmetricRotation, BadHint, DuplicateEdge, EulerViolation, InvalidVertex, SelfLoop
from kouter.generator import canned
from kouter.graph_core import build_embedding, delete_edges, delete_vertices


def test_k4_counts_and_outer_face(k4):
    assert k4.n == 4
    assert k4.m == 6
    assert k4.face_count() == 4
    assert sorted(k4.face_vertices(k4.outer_face)) == [0, 1, 2]
    assert k4.max_degree() == 3


def test_half_edge_numbering(k4):
    for e, (u, v) in enumerate(k4.edge_ends):
        assert u < v
        assert k4.half_edge(u, v) == 2 * e
        assert k4.half_edge(v, u) == 2 * e + 1
        assert k4.twin(2 * e) == 2 * e + 1
        assert k4.target(2 * e) == v
        assert k4.edge_id(v, u) == e


def test_every_half_edge_lies_on_exactly_one_face(k4):
    seen = [h for face in k4.faces for h in face]
    assert sorted(seen) == list(range(2 * k4.m))


def test_rotations_round_trip():
    rotations = [[1, 2, 3], [2, 0, 3], [0, 1, 3], [2, 1, 0]]
    emb = build_embedding(4, rotations, (1, 0))
    assert emb.rotations() == rotations


def test_mapping_rotations_leave_missing_vertices_isolated():
    emb = build_embedding(4, {0: [1], 1: [0]}, (0, 1))
    assert emb.m == 1
    assert emb.degree(3) == 0
    assert emb.component_count() == 3


@pytest.mark.parametrize("rotations, error", [
    ([[1], [], []], AsymmetricRotation),
    ([[0], [], []], SelfLoop),
    ([[1, 1], [0], []], DuplicateEdge),
    ([[5], [], []], InvalidVertex),
])
def test_invalid_rotations(rotations, error):
    with pytest.raises(error):
        build_embedding(3, rotations)


def test_non_plane_rotation_is_rejected():
    # every rotation ascending: two faces only, so v - e + f = 0
    rotations = [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]]
    with pytest.raises(EulerViolation) as info:
        build_embedding(4, rotations, (1, 0))
    assert info.value.component_root == 0


def test_missing_or_wrong_hint():
    rotations = [[1, 3], [2, 0], [3, 1], [0, 2]]
    with pytest.raises(BadHint):
        build_embedding(4, rotations)
    with pytest.raises(BadHint):
        build_embedding(4, rotations, (0, 2))


def test_second_outer_face_in_one_component_is_rejected(k4):
    with pytest.raises(BadHint):
        build_embedding(4, k4.rotations(), [(1, 0), (0, 1)])


def test_disconnected_graph(disconnected):
    assert disconnected.component_count() == 4
    assert len(disconnected.outer_faces) == 3
    # two triangles with two faces each, one face for the lone edge
    assert len(disconnected.faces) == 5
    assert disconnected.face_count() == 3
    assert disconnected.components()[3] == [8]


def test_delete_vertex_keeps_outer_face(k4):
    smaller = delete_vertices(k4, [3])
    assert smaller.m == 3
    assert smaller.degree(3) == 0
    assert sorted(smaller.face_vertices(smaller.outer_face)) == [0, 1, 2]
    assert len(smaller.faces) == 2


def test_delete_outer_edge_merges_into_outer_face(k4):
    e = k4.edge_id(0, 1)
    smaller = delete_edges(k4, [e])
    assert smaller.m == 5
    outer = set(smaller.face_vertices(smaller.outer_face))
    assert outer == {0, 1, 2, 3}


def test_to_networkx_matches_edges():
    grid = canned("grid3x4")
    g = grid.to_networkx()
    assert g.number_of_nodes() == 12
    assert g.number_of_edges() == 17
    assert sorted(tuple(sorted(e)) for e in g.edges) == sorted(grid.edges())


def test_is_outer_marks_one_face_per_component(disconnected, k4):
    assert [f for f in range(len(k4.faces)) if k4.is_outer(f)] == [k4.outer_face]
    outer = [f for f in range(len(disconnected.faces)) if disconnected.is_outer(f)]
    assert sorted(outer) == sorted(disconnected.outer_faces)
    assert len({disconnected.component_of[disconnected.origin[disconnected.faces[f][0]]] for f in outer}) == 3


def _edge_components(emb):
    return {emb.component_of[u] for u, _ in emb.edge_ends}


def test_face_lengths_sum_to_twice_the_edges(generated):
    rng = np.random.default_rng(7)
    for _, emb in generated:
        assert sum(len(face) for face in emb.faces) == 2 * emb.m
        drop = rng.choice(emb.m, size=emb.m // 3, replace=False)
        smaller = delete_edges(emb, drop.tolist())
        assert smaller.m == emb.m - len(drop)
        assert sum(len(face) for face in smaller.faces) == 2 * smaller.m


def test_delete_edges_composes(generated):
    rng = np.random.default_rng(11)
    for _, emb in generated:
        picked = rng.choice(emb.m, size=min(emb.m, 6), replace=False).tolist()
        first, second = picked[:3], picked[3:]
        at_once = delete_edges(emb, first + second)

        step = delete_edges(emb, first)
        second_ids = [step.edge_id(*emb.edge_ends[e]) for e in second]
        in_steps = delete_edges(step, second_ids)

        assert in_steps.edge_ends == at_once.edge_ends
        assert in_steps.rotations() == at_once.rotations()
        assert in_steps.faces == at_once.faces
        if len(_edge_components(at_once)) == 1:
            assert in_steps.outer_faces == at_once.outer_faces
