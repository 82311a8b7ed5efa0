import pytest

from kouter.errors import NotOuterplanar
from kouter.generator import canned
from kouter.tree_decomposition import augmented_bags, decompose, decompose_outerplanar, forest_edge_nodes
from kouter.verify import check_td, fundamental_cycle, remember_numbers


def _check(emb, td):
    result = check_td(emb, td)
    assert result.ok, result.describe()
    return result


def test_cycle_has_width_two():
    c5 = canned("c5")
    td = decompose(c5)
    assert td.width == 2
    _check(c5, td)


@pytest.mark.parametrize("name", ["p2", "p6", "c3", "c9", "star6", "grid2x5"])
def test_outerplanar_peeling(name):
    emb = canned(name)
    td = decompose_outerplanar(emb)
    assert td.width <= 2
    _check(emb, td)


def test_outerplanar_peeling_rejects_higher_index(k4):
    with pytest.raises(NotOuterplanar) as info:
        decompose_outerplanar(k4)
    assert info.value.k == 2


def test_k4(k4):
    td = decompose(k4)
    assert 3 <= td.width <= 5
    _check(k4, td)


def test_fig2_width_and_open_face_tree(fig2):
    run = decompose(fig2, with_details=True)
    assert run.k == 2
    assert run.td.width == 3
    assert len(run.oft) == 4
    assert run.oft.order[0] == fig2.outer_face
    _check(fig2, run.td)


def test_fig2_touched_nodes(fig2):
    run = decompose(fig2, with_details=True)
    e = fig2.edge_id(2, 3)
    touched = augmented_bags(run.front.expanded, run.front.forest, run.oft)[e]
    assert {2, 6, 4} <= touched
    assert 3 not in touched


@pytest.mark.parametrize("name, k", [("grid4x4", 2), ("grid5x5", 3), ("nested3", 3), ("nested4", 4),
                                     ("wheel7", 2), ("wheel12", 2)])
def test_width_bound_on_canned(name, k):
    emb = canned(name)
    run = decompose(emb, with_details=True)
    assert run.k == k
    assert run.td.width <= 3 * k - 1
    _check(emb, run.td)


def test_shrink_maps_back_to_original_vertices():
    wheel = canned("wheel8")
    run = decompose(wheel, with_details=True)
    assert run.td_expanded.n_vertices > wheel.n
    assert run.td.n_vertices == wheel.n
    assert set().union(*run.td.bags) == set(range(wheel.n))


def test_generated_instances(generated):
    for k, emb in generated:
        td = decompose(emb)
        assert td.width <= max(3 * k - 1, 2)
        _check(emb, td)


def test_disconnected_graph_is_joined(disconnected):
    td = decompose(disconnected)
    joined = td.joined()
    assert len(joined.tree_edges) == len(joined.bags) - 1
    _check(disconnected, joined)


def test_empty_graph():
    from kouter.graph_core import build_embedding

    td = decompose(build_embedding(0, []))
    assert len(td) == 0
    assert td.width == -1


def test_filled_width_within_remember_bound(generated):
    for k, emb in generated:
        if k < 2:
            continue
        run = decompose(emb, with_details=True)
        rr = remember_numbers(run.front.expanded, run.front.forest.forest_pairs())
        assert run.td_expanded.width <= max(rr.vr, rr.er + 1)
        assert run.td.width <= run.td_expanded.width


def test_touched_nodes_follow_fundamental_cycles(generated):
    for k, emb in generated:
        if k < 2:
            continue
        run = decompose(emb, with_details=True)
        expanded, forest = run.front.expanded, run.front.forest
        node_of = forest_edge_nodes(expanded, forest)
        touched = augmented_bags(expanded, forest, run.oft)
        assert set(touched) == set(forest.non_forest_edges())
        pairs = forest.forest_pairs()
        for e, nodes in touched.items():
            a, b = expanded.edge_ends[e]
            path, path_pairs = fundamental_cycle(expanded, pairs, a, b)
            expected = {x for x in path if x != b} | {node_of[expanded.edge_id(*p)] for p in path_pairs}
            assert nodes == expected
            assert all(a in run.td_expanded.bags[x] for x in nodes)
