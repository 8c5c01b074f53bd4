import pytest
from hypothesis import given, settings

from geodex.constructions import complete_digraph, directed_cycle
from geodex.digraph import Digraph
from geodex.errors import ParseError
from geodex.io import parse, read, render, write

from test_digraph import digraphs


def test_parse_examples():
    assert parse("3\n1 2\n0 2\n0 1\n") == complete_digraph(3)
    assert parse("3\n1\n2\n0\n") == directed_cycle(3)


def test_comments_and_sinks():
    g = parse("# header\n3\n1 2\n# inline comment\n\n0\n")
    assert g.out_adj == ((1, 2), (), (0,))


def test_unsorted_neighbours_accepted():
    assert parse("3\n2 1\n0 2\n1 0\n") == complete_digraph(3)


@pytest.mark.parametrize(
    "text, line, column, fragment",
    [
        ("2\n0\n1\n", 2, 1, "loop"),
        ("3\n1 x\n0\n0\n", 2, 3, "integer"),
        ("3\n1 3\n0\n0\n", 2, 3, "out of range"),
        ("3\n1 2 1\n0\n0\n", 2, 5, "duplicate"),
        ("3\n1\n2\n", 4, 1, "adjacency lines"),
        ("2\n1\n0\n1\n", 4, 1, "adjacency lines"),
        ("", 1, 1, "vertex count"),
        ("2 3\n1\n0\n", 1, 1, "vertex count"),
        ("-1\n", 1, 1, "integer"),
        ("0\n", 1, 1, "at least 1"),
    ],
)
def test_parse_errors(text, line, column, fragment):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.line == line
    assert info.value.column == column
    assert fragment in info.value.message


def test_render_format():
    assert render(complete_digraph(3)) == "3\n1 2\n0 2\n0 1\n"
    assert render(Digraph(2, [[], [0]])) == "2\n\n0\n"


@settings(max_examples=200, deadline=None)
@given(digraphs(max_n=10))
def test_round_trip(g):
    text = render(g)
    assert parse(text) == g
    assert render(parse(text)) == text


def test_file_round_trip(tmp_path):
    g = directed_cycle(5)
    path = tmp_path / "c5.gdx"
    write(g, path)
    assert path.read_bytes() == b"5\n1\n2\n3\n4\n0\n"
    assert read(path) == g
