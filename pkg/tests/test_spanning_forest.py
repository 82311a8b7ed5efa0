import pytest

from kouter.errors import CycleCreated, MalformedLayer, NotMaximal
from kouter.expand import expand_high_degree
from kouter.generator import canned
from kouter.spanning_forest import (
    ALPHA,
    BETA,
    GAMMA,
    ForestBuilder,
    build_step_labels,
    dump_forest_lines,
    spanning_forest,
    strip,
    stripping_numbers,
)


def _missing_pairs(emb, forest):
    return sorted(emb.edge_ends[e] for e in forest.non_forest_edges())


def test_k4_stripping(k4):
    s = stripping_numbers(k4)
    assert s[k4.outer_face] == 0
    assert sorted(s) == [0, 1, 1, 1]
    trace, layers, residual = strip(k4)
    assert trace.k_prime == 2
    assert residual == []
    inner = sorted(k4.edge_ends[e] for e in layers[0])
    assert inner == [(0, 3), (1, 3), (2, 3)]


def test_k4_forest_is_the_inner_star(k4):
    forest, _ = spanning_forest(k4)
    assert sorted(forest.forest_pairs()) == [(0, 3), (1, 3), (2, 3)]
    assert _missing_pairs(k4, forest) == [(0, 1), (0, 2), (1, 2)]


def test_fig2_labels(fig2):
    labels = build_step_labels(fig2)
    outer = labels[1]
    assert outer.vertices_of_kind(ALPHA) == [0, 9]
    assert outer.vertices_of_kind(BETA) == [2, 4, 11]
    assert len(outer.wheels) == 2
    inner = labels[2]
    assert inner.wheels == []
    assert set(inner.kind.values()) == {GAMMA}
    assert sorted(fig2.edge_ends[e] for e in inner.branch_edges) == [(2, 6), (4, 6), (11, 13)]


def test_fig2_wheels_start_at_alpha(fig2):
    labels = build_step_labels(fig2)
    hexagon, square = labels[1].wheels
    assert hexagon.vertices == [0, 5, 4, 3, 2, 1]
    assert square.vertices == [9, 12, 11, 10]
    assert fig2.edge_ends[hexagon.closing_edge] == (0, 1)
    assert fig2.edge_ends[square.closing_edge] == (9, 10)


def test_fig2_missing_edges(fig2):
    forest, trace = spanning_forest(fig2)
    assert trace.k_prime == 2
    assert _missing_pairs(fig2, forest) == [(0, 1), (2, 3), (9, 10)]
    vertices, edges = forest.fundamental_path(2, 3)
    assert vertices == [2, 6, 4, 3]
    assert [fig2.edge_ends[e] for e in edges] == [(2, 6), (4, 6), (3, 4)]


@pytest.mark.parametrize("name", ["c7", "p5", "k4", "grid4x4", "grid5x6", "nested4", "wheel8", "star6", "fig2"])
def test_forest_is_maximal(name):
    emb, _ = expand_high_degree(canned(name))
    forest, _ = spanning_forest(emb)
    assert len(forest.forest_edges()) == emb.n - emb.component_count()
    assert len(forest.roots()) == emb.component_count()


def test_generated_forests_are_maximal(generated):
    for _, emb in generated:
        expanded, _ = expand_high_degree(emb)
        forest, trace = spanning_forest(expanded)
        assert len(forest.forest_edges()) == expanded.n - expanded.component_count()
        assert trace.k_prime <= trace.index_k


def test_disconnected_forest(disconnected):
    forest, _ = spanning_forest(disconnected)
    assert len(forest.forest_edges()) == 9 - 4
    assert len(forest.non_forest_edges()) == 2


def test_high_degree_is_rejected():
    with pytest.raises(MalformedLayer):
        spanning_forest(canned("star4"))


def test_builder_detects_cycles_and_gaps(k4):
    builder = ForestBuilder(k4)
    builder.add(0, 1)
    with pytest.raises(CycleCreated):
        builder.add(0, 1)
    builder.include_in_graph(range(k4.m))
    with pytest.raises(NotMaximal):
        builder.check_maximal(1)


def test_dump_forest_lines(fig2):
    forest, trace = spanning_forest(fig2)
    lines = dump_forest_lines(fig2, forest, trace)
    assert len(lines) == fig2.m
    assert "x 3 4 1" in lines
    assert "f 3 7 2" in lines
    assert sum(1 for line in lines if line.startswith("x")) == 3
