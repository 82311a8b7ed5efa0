"""Tree and branch decompositions of k-outerplanar graphs."""

__version__ = "0.1.0"

from .branch_decomposition import BranchDecomposition, branch_decompose
from .embedding_analysis import compute_layers, outerplanarity_index
from .errors import KouterError
from .formats import read_bd, read_emb, read_td, write_bd, write_emb, write_td
from .generator import GenSpec, canned, generate
from .graph_core import Embedding, build_embedding
from .tree_decomposition import TreeDecomposition, decompose
from .verify import check_bd, check_td

__all__ = [
    "BranchDecomposition",
    "Embedding",
    "GenSpec",
    "KouterError",
    "TreeDecomposition",
    "branch_decompose",
    "build_embedding",
    "canned",
    "check_bd",
    "check_td",
    "compute_layers",
    "decompose",
    "generate",
    "outerplanarity_index",
    "read_bd",
    "read_emb",
    "read_td",
    "write_bd",
    "write_emb",
    "write_td",
]
