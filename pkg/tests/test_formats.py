import pytest

from kouter.branch_decomposition import branch_decompose
from kouter.errors import FormatError
from kouter.formats import (
    comment_lines,
    format_bd,
    format_emb,
    format_td,
    parse_bd,
    parse_emb,
    parse_td,
    read_emb,
    write_bd,
    write_emb,
    write_td,
    read_bd,
    read_td,
)
from kouter.generator import GenSpec, canned, generate
from kouter.tree_decomposition import decompose


K4_TEXT = "c k4\np emb 4 6\nr 1 2 3 4\nr 2 3 1 4\nr 3 1 2 4\nr 4 3 2 1\no 2 1\n"


def test_parse_k4():
    emb = parse_emb(K4_TEXT)
    assert (emb.n, emb.m) == (4, 6)
    assert emb.rotations() == canned("k4").rotations()
    assert emb.hints == [(1, 0)]


def test_emb_text_is_canonical():
    assert format_emb(parse_emb(K4_TEXT), comment_lines(K4_TEXT)) == K4_TEXT


@pytest.mark.parametrize("name", ["fig2", "grid4x5", "wheel7", "p1"])
def test_emb_reformat_is_byte_identical(name):
    text = format_emb(canned(name), ["fixture"])
    assert format_emb(parse_emb(text), comment_lines(text)) == text


def test_generated_emb_reformat_is_byte_identical():
    text = format_emb(generate(GenSpec(k=3, n_target=70, seed=11)))
    assert format_emb(parse_emb(text)) == text


def test_disconnected_hints_survive(disconnected):
    again = parse_emb(format_emb(disconnected))
    assert again.hints == disconnected.hints
    assert again.outer_faces == disconnected.outer_faces


@pytest.mark.parametrize("text, line", [
    ("r 1 2\np emb 2 1\n", 1),
    ("p emb 2 1\nr 1 2\nr 2\no 1 2\n", 1),
    ("p emb 4 2\nr 1 2\nr 2 3\nr 3 4\nr 4 1\no 2 1\n", 2),
    ("p emb 2 1\nr 1 2\nr 2 1\nq 1\n", 4),
    ("p emb 2 1\nr 1 2\nr 1 2\n", 3),
    ("p emb 2 1\nr 1 3\nr 2 1\n", 2),
    ("p emb 2 1\nr 1 x\n", 2),
    ("c only a comment\n", 1),
    ("p emb 2 1\np emb 2 1\n", 2),
])
def test_emb_errors_carry_line_numbers(text, line):
    with pytest.raises(FormatError) as info:
        parse_emb(text, "g.emb")
    assert info.value.line_no == line
    assert str(info.value).startswith(f"g.emb:{line}:")


def test_invalid_utf8_reports_line(tmp_path):
    path = tmp_path / "g.emb"
    path.write_bytes(b"c ok\np emb 2 1\nr 1 \xc3\x28\n")
    with pytest.raises(FormatError) as info:
        read_emb(str(path))
    assert info.value.line_no == 3
    assert "UTF-8" in info.value.message


def test_emb_file_round_trip(tmp_path):
    path = tmp_path / "nested" / "k4.emb"
    write_emb(str(path), canned("k4"), ["k4"])
    assert path.read_text(encoding="utf-8") == K4_TEXT
    assert read_emb(str(path)).m == 6


def test_td_round_trip(tmp_path, fig2):
    td = decompose(fig2)
    text = format_td(td)
    assert text.splitlines()[0] == f"s td {len(td)} {td.width + 1} {fig2.n}"
    parsed = parse_td(text)
    assert format_td(parsed) == text
    write_td(str(tmp_path / "fig2.td"), td)
    assert format_td(read_td(str(tmp_path / "fig2.td"))) == text


def test_td_errors():
    with pytest.raises(FormatError):
        parse_td("b 1 1\n")
    with pytest.raises(FormatError):
        parse_td("s td 2 1 2\nb 1 1\n")
    with pytest.raises(FormatError):
        parse_td("s td 1 2 2\nb 1 1\n")
    with pytest.raises(FormatError):
        parse_td("s td 1 1 2\nb 1 3\n")


def test_bd_round_trip(tmp_path, disconnected):
    bds = branch_decompose(disconnected)
    text = format_bd(bds)
    assert text.count("c component") == 3
    parsed = parse_bd(text)
    assert format_bd(parsed) == text
    assert [bd.is_sentinel for bd in parsed] == [False, False, True]
    write_bd(str(tmp_path / "d.bd"), bds)
    assert format_bd(read_bd(str(tmp_path / "d.bd"))) == text


def test_bd_errors():
    with pytest.raises(FormatError):
        parse_bd("l 1 1 2\n")
    with pytest.raises(FormatError):
        parse_bd("s bd 1 2 2\nl 1 1 2\n")
    with pytest.raises(FormatError):
        parse_bd("s bd 4 3 3\nl 1 1 2\nl 1 2 3\n")
    with pytest.raises(FormatError):
        parse_bd("s bd 2 1 1\nt 1 9\n")


def test_empty_bd_text():
    assert format_bd([]) == ""
    assert parse_bd("") == []
