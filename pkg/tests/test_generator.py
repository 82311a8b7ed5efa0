import pytest

import kouter.generator as generator
from kouter.embedding_analysis import LayerAssignment, compute_layers
from kouter.errors import KouterError, Unsatisfiable, UnknownName
from kouter.formats import format_emb
from kouter.generator import GenSpec, canned, derive_seed, generate, generate_many


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_generated_index_is_exact(k):
    emb = generate(GenSpec(k=k, n_target=20 * k, seed=7))
    assert compute_layers(emb).index_k == k


def test_larger_instance():
    emb = generate(GenSpec(k=3, n_target=300, seed=42))
    assert compute_layers(emb).index_k == 3
    assert emb.n == 300


def test_plane_graph_relations(generated):
    for _, emb in generated:
        assert emb.m <= 3 * emb.n - 6
        assert emb.n - emb.m + emb.face_count() == 2


def test_same_seed_same_bytes():
    spec = GenSpec(k=3, n_target=90, seed=1234)
    assert format_emb(generate(spec)) == format_emb(generate(spec))


def test_different_seeds_differ():
    a = generate(GenSpec(k=2, n_target=60, seed=1))
    b = generate(GenSpec(k=2, n_target=60, seed=2))
    assert format_emb(a) != format_emb(b)


def test_no_chords_keeps_cycles_and_spokes_only():
    emb = generate(GenSpec(k=1, n_target=12, seed=3, chord_density=0.0))
    assert emb.m == 12


def test_generate_many():
    spec = GenSpec(k=2, n_target=30, seed=5)
    first = [format_emb(e) for e in generate_many(spec, 4)]
    again = [format_emb(e) for e in generate_many(spec, 4)]
    assert len(first) == 4
    assert first == again
    assert len(set(first)) == 4


def test_too_few_vertices():
    with pytest.raises(KouterError):
        generate(GenSpec(k=4, n_target=10))


def test_unsatisfiable_after_retries(monkeypatch):
    monkeypatch.setattr(generator, "compute_layers", lambda emb: LayerAssignment([], [], 99))
    with pytest.raises(Unsatisfiable) as info:
        generate(GenSpec(k=2, n_target=20, seed=0, max_retries=3))
    assert info.value.achieved_k == 99
    assert "after 4 attempts" in str(info.value)


def test_derive_seed_wraps():
    assert derive_seed(5, 0) == 5
    assert 0 <= derive_seed(2 ** 64 - 1, 3) < 2 ** 64


@pytest.mark.parametrize("name, n, m", [
    ("c6", 6, 6), ("p4", 4, 3), ("p1", 1, 0), ("k4", 4, 6), ("grid3x4", 12, 17),
    ("star5", 6, 5), ("wheel5", 6, 10), ("nested3", 9, 15), ("fig2", 14, 16),
])
def test_canned_sizes(name, n, m):
    emb = canned(name)
    assert (emb.n, emb.m) == (n, m)


@pytest.mark.parametrize("name", ["foo", "c2", "grid0x3", "wheel2", "nested0", ""])
def test_unknown_names(name):
    with pytest.raises(UnknownName):
        canned(name)
