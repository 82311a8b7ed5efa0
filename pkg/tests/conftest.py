import pytest

from kouter.generator import GenSpec, canned, generate
from kouter.graph_core import build_embedding

CANNED_SMALL = ["c3", "c5", "p2", "p4", "k4", "star3", "wheel4", "nested2", "grid2x3"]
CANNED_MEDIUM = ["c12", "grid4x4", "grid5x5", "wheel8", "star6", "nested3", "nested4", "fig2"]


def two_triangles_and_edge():
    """Triangles 0-1-2 and 3-4-5, the edge 6-7 and the isolated vertex 8."""
    rotations = [[1, 2], [2, 0], [0, 1], [4, 5], [5, 3], [3, 4], [7], [6], []]
    return build_embedding(9, rotations, [(1, 0), (4, 3), (6, 7)])


@pytest.fixture
def k4():
    return canned("k4")


@pytest.fixture
def fig2():
    return canned("fig2")


@pytest.fixture
def disconnected():
    return two_triangles_and_edge()


@pytest.fixture(scope="session")
def generated():
    """A few seeded instances per index, as (k, embedding) pairs."""
    out = []
    for k in (1, 2, 3, 4):
        for seed in range(4):
            out.append((k, generate(GenSpec(k=k, n_target=25 * k, seed=seed))))
    return out
