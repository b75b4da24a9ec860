import pytest

from lawrence_toric.base import ComplexError, ParseError
from lawrence_toric.exactlin import RatMatrix
from lawrence_toric.graphs import DiGraph, Graph, SignedGraph
from lawrence_toric.utility import (
    is_graph_text,
    load_json,
    parse_complex_text,
    parse_fractions,
    parse_graph_text,
    parse_matrix_text,
    read_text,
    save_json,
)


MATRIX_TEXT = """\
# Example matrix
4 5
-1  0  0  1  1
 1  1  0  0  0
 0 -1  1  0 -1
 0  0 -1 -1  0
"""


def test_parse_matrix(example_matrix):
    assert parse_matrix_text(MATRIX_TEXT) == example_matrix
    assert parse_matrix_text("1 2\n3 4  # trailing comment\n") == RatMatrix.from_rows([[3, 4]])


@pytest.mark.parametrize(
    "text",
    [
        "",
        "2\n1 2\n",
        "2 2\n1 0\n",
        "1 2\n1 0 1\n",
        "1 2\n1 x\n",
        "0 2\n",
    ],
)
def test_bad_matrix_text(text):
    with pytest.raises(ParseError):
        parse_matrix_text(text)


def test_parse_graphs():
    graph = parse_graph_text("3 3\n1 2\n2 3\n1 3\n")
    assert isinstance(graph, Graph)
    assert graph.edges == ((0, 1), (1, 2), (0, 2))

    directed = parse_graph_text("3 2 directed\n1 2\n3 2\n")
    assert isinstance(directed, DiGraph)
    assert directed.arcs == ((0, 1), (2, 1))

    signed = parse_graph_text("3 2 signed\n1 2 +\n2 3 -\n")
    assert isinstance(signed, SignedGraph)
    assert signed.signs == (1, -1)


@pytest.mark.parametrize(
    "text",
    [
        "3 1 weighted\n1 2\n",
        "3 2\n1 2\n",
        "3 1\n1 4\n",
        "3 1 signed\n1 2 *\n",
        "3 1 signed\n1 2\n",
    ],
)
def test_bad_graph_text(text):
    with pytest.raises(ParseError):
        parse_graph_text(text)


def test_parse_complex():
    path = parse_complex_text("3\n1 2\n2 3\n")
    assert path.n == 3
    assert path.facets == ((1, 2), (2, 3))

    with pytest.raises(ParseError):
        parse_complex_text("3\n")
    with pytest.raises(ParseError):
        parse_complex_text("3 1\n1 2\n")
    with pytest.raises(ComplexError):
        parse_complex_text("2\n1 3\n")


def test_graph_files_are_told_from_matrix_files():
    assert not is_graph_text(MATRIX_TEXT)
    assert is_graph_text("4 4\n1 2\n2 3\n3 4\n1 4\n")
    assert is_graph_text("2 1 directed\n1 2\n")
    # Two rows of two entries reads as a matrix
    assert not is_graph_text("2 2\n1 2\n2 1\n")
    assert not is_graph_text("")


def test_parse_fractions():
    assert parse_fractions(None) is None
    assert parse_fractions(["3", "-7/2"]) == ["3", "-7/2"]

    with pytest.raises(ParseError):
        parse_fractions(["1/0"])
    with pytest.raises(ParseError):
        parse_fractions(["half"])


def test_json_settings(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert load_json("missing.json") == {}

    save_json("setting.json", {"cap_ground": 20})
    assert load_json("setting.json") == {"cap_ground": 20}


def test_read_text(write_file):
    assert read_text(write_file("a.txt", "1 1\n1\n")) == "1 1\n1\n"

    with pytest.raises(ParseError):
        read_text("no/such/file")
