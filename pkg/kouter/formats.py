"""
Text formats: `.emb` embeddings, PACE `.td` tree decompositions and `.bd`
branch decompositions.

All files use 1-based vertex ids; everything in memory is 0-based. Writers
are canonical, so reading a written file and writing it again reproduces it
byte for byte.

  .emb   c <comment>
         p emb <n> <m>
         r <v> <u1> ... <ud>        clockwise rotation of v, one line per vertex
         o <v> <u>                  outer face = face left of v -> u (one per component)

  .td    s td <bags> <max bag size> <n>
         b <i> <v> ...
         <i> <j>                    tree edge

  .bd    c component <i>            one block per component
         s bd <nodes> <leaves> <m>
         l <node> <u> <v>           leaf node representing edge (u, v)
         t <a> <b>                  tree edge
"""

import os
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .branch_decomposition import BranchDecomposition
from .errors import (
    AsymmetricRotation,
    BadHint,
    DuplicateEdge,
    EmbeddingError,
    EulerViolation,
    FormatError,
    InvalidVertex,
    SelfLoop,
)
from .graph_core import Embedding, build_embedding
from .tree_decomposition import TreeDecomposition


# ------------------------------- Helpers ---------------------------------- #

def _ints(tokens: Sequence[str], path: str, line_no: int) -> List[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(path, line_no, f"Expected integers, got '{' '.join(tokens)}'.") from None


def _lines(text: str) -> Iterable[Tuple[int, List[str]]]:
    for i, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if tokens:
            yield i, tokens


def comment_lines(text: str) -> List[str]:
    """Leading `c` comment lines (without the `c `), as written by the formatters."""
    out = []
    for line in text.splitlines():
        if not line.startswith("c"):
            break
        out.append(line[2:] if line.startswith("c ") else "")
    return out


def _write_text(path: str, text: str) -> None:
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)


def _read_text(path: str) -> str:
    with open(path, "rb") as f:
        raw = f.read()
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        line_no = raw[:exc.start].count(b"\n") + 1
        raise FormatError(path, line_no, f"Invalid UTF-8 byte 0x{raw[exc.start]:02x}.") from exc


# --------------------------------- .emb ----------------------------------- #

def parse_emb(text: str, path: str = "<string>") -> Embedding:
    header_line = 0
    n = m = -1
    rotations: Dict[int, List[int]] = {}
    rotation_line: Dict[int, int] = {}
    hints: List[Tuple[int, int]] = []
    hint_lines: List[int] = []

    for line_no, tokens in _lines(text):
        kind = tokens[0]
        if kind == "c":
            continue
        if kind == "p":
            if header_line:
                raise FormatError(path, line_no, "Second 'p' header line.")
            if len(tokens) != 4 or tokens[1] != "emb":
                raise FormatError(path, line_no, "Header must read 'p emb <n> <m>'.")
            n, m = _ints(tokens[2:], path, line_no)
            if n < 0 or m < 0:
                raise FormatError(path, line_no, "Negative vertex or edge count.")
            header_line = line_no
            continue
        if not header_line:
            raise FormatError(path, line_no, "Missing 'p emb <n> <m>' header before data lines.")
        if kind == "r":
            ids = _ints(tokens[1:], path, line_no)
            if not ids:
                raise FormatError(path, line_no, "Rotation line without a vertex id.")
            for x in ids:
                if not 1 <= x <= n:
                    raise FormatError(path, line_no, f"Vertex {x} outside [1, {n}].")
            v = ids[0] - 1
            if v in rotations:
                raise FormatError(path, line_no, f"Second rotation line for vertex {v + 1}.")
            rotations[v] = [x - 1 for x in ids[1:]]
            rotation_line[v] = line_no
        elif kind == "o":
            ids = _ints(tokens[1:], path, line_no)
            if len(ids) != 2:
                raise FormatError(path, line_no, "Outer-face line must read 'o <v> <u>'.")
            hints.append((ids[0] - 1, ids[1] - 1))
            hint_lines.append(line_no)
        else:
            raise FormatError(path, line_no, f"Unknown line type '{kind}'.")

    if not header_line:
        raise FormatError(path, 1, "Missing 'p emb <n> <m>' header.")
    listed = sum(len(r) for r in rotations.values())
    if listed != 2 * m:
        raise FormatError(path, header_line, f"Header declares {m} edges, rotations list {listed / 2:g}.")

    try:
        return build_embedding(n, rotations, hints)
    except EmbeddingError as exc:
        raise FormatError(path, _anchor(exc, header_line, rotation_line, hint_lines), str(exc)) from exc


def _anchor(exc: EmbeddingError, header_line: int, rotation_line: Dict[int, int], hint_lines: List[int]) -> int:
    if isinstance(exc, (AsymmetricRotation, DuplicateEdge)):
        return rotation_line.get(exc.u, header_line)
    if isinstance(exc, SelfLoop):
        return rotation_line.get(exc.v, header_line)
    if isinstance(exc, EulerViolation):
        return rotation_line.get(exc.component_root, header_line)
    if isinstance(exc, BadHint) and hint_lines:
        return hint_lines[0]
    if isinstance(exc, InvalidVertex):
        return rotation_line.get(exc.v, header_line)
    return header_line


def format_emb(emb: Embedding, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" if c else "c" for c in comments]
    lines.append(f"p emb {emb.n} {emb.m}")
    for v in range(emb.n):
        lines.append(" ".join(["r", str(v + 1)] + [str(u + 1) for u in emb.neighbors(v)]))
    for v, u in emb.hints:
        lines.append(f"o {v + 1} {u + 1}")
    return "\n".join(lines) + "\n"


def read_emb(path: str) -> Embedding:
    return parse_emb(_read_text(path), path)


def write_emb(path: str, emb: Embedding, comments: Iterable[str] = ()) -> None:
    _write_text(path, format_emb(emb, comments))


# ---------------------------------- .td ----------------------------------- #

def format_td(td: TreeDecomposition, comments: Iterable[str] = ()) -> str:
    joined = td.joined()
    lines = [f"c {c}" if c else "c" for c in comments]
    max_bag = max((len(b) for b in joined.bags), default=0)
    lines.append(f"s td {len(joined.bags)} {max_bag} {joined.n_vertices}")
    for i, bag in enumerate(joined.bags, start=1):
        lines.append(" ".join(["b", str(i)] + [str(v + 1) for v in sorted(bag)]))
    for a, b in joined.tree_edges:
        lines.append(f"{a + 1} {b + 1}")
    return "\n".join(lines) + "\n"


def parse_td(text: str, path: str = "<string>") -> TreeDecomposition:
    header: Optional[Tuple[int, int, int]] = None
    bags: Dict[int, frozenset] = {}
    edges: List[Tuple[int, int]] = []
    for line_no, tokens in _lines(text):
        kind = tokens[0]
        if kind == "c":
            continue
        if kind == "s":
            if header is not None:
                raise FormatError(path, line_no, "Second 's td' header line.")
            if len(tokens) != 5 or tokens[1] != "td":
                raise FormatError(path, line_no, "Header must read 's td <bags> <max bag size> <n>'.")
            header = tuple(_ints(tokens[2:], path, line_no))
            continue
        if header is None:
            raise FormatError(path, line_no, "Missing 's td' header before data lines.")
        n_bags, _, n = header
        if kind == "b":
            ids = _ints(tokens[1:], path, line_no)
            if not ids or not 1 <= ids[0] <= n_bags:
                raise FormatError(path, line_no, f"Bag id outside [1, {n_bags}].")
            if ids[0] - 1 in bags:
                raise FormatError(path, line_no, f"Bag {ids[0]} listed twice.")
            for v in ids[1:]:
                if not 1 <= v <= n:
                    raise FormatError(path, line_no, f"Vertex {v} outside [1, {n}].")
            bags[ids[0] - 1] = frozenset(v - 1 for v in ids[1:])
        else:
            ids = _ints(tokens, path, line_no)
            if len(ids) != 2 or not all(1 <= x <= n_bags for x in ids):
                raise FormatError(path, line_no, "Tree edge must read '<i> <j>' with valid bag ids.")
            edges.append((ids[0] - 1, ids[1] - 1))
    if header is None:
        raise FormatError(path, 1, "Missing 's td' header.")
    n_bags, max_bag, n = header
    if len(bags) != n_bags:
        raise FormatError(path, 1, f"Header declares {n_bags} bags, found {len(bags)}.")
    ordered = [bags[i] for i in range(n_bags)]
    if max((len(b) for b in ordered), default=0) != max_bag:
        raise FormatError(path, 1, f"Header declares max bag size {max_bag}.")
    return TreeDecomposition(ordered, edges, n)


def read_td(path: str) -> TreeDecomposition:
    return parse_td(_read_text(path), path)


def write_td(path: str, td: TreeDecomposition, comments: Iterable[str] = ()) -> None:
    _write_text(path, format_td(td, comments))


# ---------------------------------- .bd ----------------------------------- #

def format_bd(bds: Sequence[BranchDecomposition]) -> str:
    lines = []
    for i, bd in enumerate(bds, start=1):
        lines.append(f"c component {i}")
        lines.append(f"s bd {bd.n_nodes} {len(bd.sigma)} {bd.m}")
        for x in sorted(bd.sigma):
            u, v = bd.sigma[x]
            lines.append(f"l {x + 1} {u + 1} {v + 1}")
        for a, b in bd.tree_edges:
            lines.append(f"t {a + 1} {b + 1}")
    return "\n".join(lines) + "\n" if lines else ""


def parse_bd(text: str, path: str = "<string>") -> List[BranchDecomposition]:
    blocks: List[dict] = []
    for line_no, tokens in _lines(text):
        kind = tokens[0]
        if kind == "c":
            continue
        if kind == "s":
            if len(tokens) != 5 or tokens[1] != "bd":
                raise FormatError(path, line_no, "Header must read 's bd <nodes> <leaves> <m>'.")
            nodes, leaves, m = _ints(tokens[2:], path, line_no)
            blocks.append({"line": line_no, "nodes": nodes, "leaves": leaves, "m": m,
                           "sigma": {}, "edges": []})
            continue
        if not blocks:
            raise FormatError(path, line_no, "Missing 's bd' header before data lines.")
        block = blocks[-1]
        if kind == "l":
            ids = _ints(tokens[1:], path, line_no)
            if len(ids) != 3 or not 1 <= ids[0] <= block["nodes"]:
                raise FormatError(path, line_no, "Leaf line must read 'l <node> <u> <v>'.")
            if ids[0] - 1 in block["sigma"]:
                raise FormatError(path, line_no, f"Node {ids[0]} carries two edges.")
            u, v = ids[1] - 1, ids[2] - 1
            block["sigma"][ids[0] - 1] = (min(u, v), max(u, v))
        elif kind == "t":
            ids = _ints(tokens[1:], path, line_no)
            if len(ids) != 2 or not all(1 <= x <= block["nodes"] for x in ids):
                raise FormatError(path, line_no, "Tree edge must read 't <a> <b>' with valid node ids.")
            block["edges"].append((ids[0] - 1, ids[1] - 1))
        else:
            raise FormatError(path, line_no, f"Unknown line type '{kind}'.")

    out = []
    for i, block in enumerate(blocks):
        if len(block["sigma"]) != block["leaves"]:
            raise FormatError(path, block["line"],
                              f"Header declares {block['leaves']} leaves, found {len(block['sigma'])}.")
        out.append(BranchDecomposition(n_nodes=block["nodes"], tree_edges=block["edges"],
                                       sigma=block["sigma"], component=i))
    return out


def read_bd(path: str) -> List[BranchDecomposition]:
    return parse_bd(_read_text(path), path)


def write_bd(path: str, bds: Sequence[BranchDecomposition]) -> None:
    _write_text(path, format_bd(bds))
