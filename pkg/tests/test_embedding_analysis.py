import pytest

from kouter.embedding_analysis import compute_face_layers, compute_layers, outerplanarity_index
from kouter.generator import canned
from kouter.graph_core import build_embedding, delete_vertices


@pytest.mark.parametrize("name, k", [
    ("c5", 1), ("p4", 1), ("star5", 1), ("k4", 2), ("wheel6", 2),
    ("grid3x3", 2), ("grid5x5", 3), ("grid2x7", 1),
    ("nested1", 1), ("nested2", 2), ("nested3", 3), ("nested5", 5), ("fig2", 2),
])
def test_index_of_canned_graphs(name, k):
    assert outerplanarity_index(canned(name)) == k


def test_k4_layers(k4):
    layers = compute_layers(k4)
    assert layers.vertex_layer == [1, 1, 1, 2]
    assert layers.layer_sizes() == {1: 3, 2: 1}
    assert layers.vertices_in_layer(2) == [3]


def test_face_layers_start_at_outer_face(k4):
    face_layer = compute_face_layers(k4)
    assert face_layer[k4.outer_face] == 0
    assert sorted(face_layer) == [0, 1, 1, 1]


def test_isolated_vertices_are_layer_one():
    emb = build_embedding(3, [[], [], []])
    layers = compute_layers(emb)
    assert layers.vertex_layer == [1, 1, 1]
    assert layers.index_k == 1


def test_empty_graph_has_index_zero():
    assert outerplanarity_index(build_embedding(0, [])) == 0


def test_disconnected_layers(disconnected):
    layers = compute_layers(disconnected)
    assert layers.index_k == 1
    assert set(layers.vertex_layer) == {1}


def test_fig2_inner_vertices(fig2):
    layers = compute_layers(fig2)
    assert layers.vertices_in_layer(2) == [6, 13]


def test_grid_center_is_deepest():
    layers = compute_layers(canned("grid5x5"))
    assert layers.vertices_in_layer(3) == [12]
    assert layers.layer_sizes() == {1: 16, 2: 8, 3: 1}


def test_edge_endpoints_differ_by_at_most_one_layer(generated):
    for _, emb in generated:
        layer = compute_layers(emb).vertex_layer
        assert all(abs(layer[u] - layer[v]) <= 1 for u, v in emb.edge_ends)


def test_adjacent_faces_differ_by_at_most_one_layer(generated):
    for _, emb in generated:
        face_layer = compute_face_layers(emb)
        assert min(face_layer) == 0
        for e in range(emb.m):
            f, g = emb.faces_of_edge(e)
            assert abs(face_layer[f] - face_layer[g]) <= 1


def test_peeling_the_outer_layer_shifts_the_rest(generated):
    for k, emb in generated:
        if k < 2:
            continue
        before = compute_layers(emb)
        inner = compute_layers(delete_vertices(emb, before.vertices_in_layer(1)))
        assert inner.index_k == k - 1
        for v, layer in enumerate(before.vertex_layer):
            expected = 1 if layer == 1 else layer - 1
            assert inner.vertex_layer[v] == expected
