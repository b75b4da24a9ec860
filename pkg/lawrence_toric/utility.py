import json
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from .base import ParseError
from .exactlin import RatMatrix
from .graphs import AnyGraph, DiGraph, Graph, SignedGraph
from .model import SimplicialComplex


GRAPH_KINDS: Tuple[str, ...] = ("undirected", "directed", "signed")


def get_file_path(filename: str) -> Path:
    """Settings files live in the working directory"""
    return Path.cwd().joinpath(filename)


def load_json(filename: str) -> dict:
    """Load data from json file in the working directory"""
    filepath: Path = get_file_path(filename)

    if not filepath.exists():
        return {}

    with open(filepath, mode="r", encoding="UTF-8") as f:
        data: dict = json.load(f)
    return data


def save_json(filename: str, data: dict) -> None:
    """Save data into json file in the working directory"""
    filepath: Path = get_file_path(filename)
    with open(filepath, mode="w+", encoding="UTF-8") as f:
        json.dump(data, f, indent=4, ensure_ascii=False)


def read_text(path: str) -> str:
    """"""
    try:
        return Path(path).read_text(encoding="UTF-8")
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}")


def _content_lines(text: str) -> List[Tuple[int, List[str]]]:
    """Non-empty, non-comment lines as (line number, tokens)"""
    result: List[Tuple[int, List[str]]] = []
    for number, line in enumerate(text.splitlines(), start=1):
        stripped: str = line.split("#", 1)[0].strip()
        if stripped:
            result.append((number, stripped.split()))
    return result


def _to_int(token: str, number: int) -> int:
    """"""
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"line {number}: expected an integer, got {token!r}")


def parse_matrix_text(text: str) -> RatMatrix:
    """`d n` header then d rows of n integers"""
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty matrix file")

    number, header = lines[0]
    if len(header) != 2:
        raise ParseError(f"line {number}: matrix header must be `d n`")
    d, n = (_to_int(t, number) for t in header)
    if d < 1 or n < 1:
        raise ParseError(f"line {number}: matrix must have positive shape, got {d} x {n}")

    body = lines[1:]
    if len(body) != d:
        raise ParseError(f"expected {d} rows, found {len(body)}")

    rows: List[List[int]] = []
    for number, tokens in body:
        if len(tokens) != n:
            raise ParseError(f"line {number}: expected {n} entries, found {len(tokens)}")
        rows.append([_to_int(t, number) for t in tokens])

    return RatMatrix.from_rows(rows)


def parse_graph_text(text: str) -> AnyGraph:
    """`V E [undirected|directed|signed]` then E lines `u v [+|-]`, 1-based"""
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty graph file")

    number, header = lines[0]
    if len(header) not in (2, 3):
        raise ParseError(f"line {number}: graph header must be `V E [kind]`")

    kind: str = header[2] if len(header) == 3 else "undirected"
    if kind not in GRAPH_KINDS:
        raise ParseError(f"line {number}: unknown graph kind {kind!r}")

    vertex_count: int = _to_int(header[0], number)
    edge_count: int = _to_int(header[1], number)
    if vertex_count < 1 or edge_count < 0:
        raise ParseError(f"line {number}: invalid graph size {vertex_count} {edge_count}")

    body = lines[1:]
    if len(body) != edge_count:
        raise ParseError(f"expected {edge_count} edges, found {len(body)}")

    edges: List[Tuple[int, int]] = []
    signs: List[int] = []
    for number, tokens in body:
        width: int = 3 if kind == "signed" else 2
        if len(tokens) != width:
            raise ParseError(f"line {number}: expected {width} fields, found {len(tokens)}")

        u: int = _to_int(tokens[0], number)
        v: int = _to_int(tokens[1], number)
        if not (1 <= u <= vertex_count and 1 <= v <= vertex_count):
            raise ParseError(f"line {number}: vertex outside 1..{vertex_count}")
        edges.append((u - 1, v - 1))

        if kind == "signed":
            if tokens[2] not in ("+", "-"):
                raise ParseError(f"line {number}: edge sign must be + or -")
            signs.append(1 if tokens[2] == "+" else -1)

    if kind == "directed":
        return DiGraph(vertex_count, tuple(edges))

    graph: Graph = Graph(vertex_count, tuple(edges))
    if kind == "signed":
        return SignedGraph(graph, tuple(signs))
    return graph


def parse_complex_text(text: str) -> SimplicialComplex:
    """`n` header then one facet per line"""
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty complex file")

    number, header = lines[0]
    if len(header) != 1:
        raise ParseError(f"line {number}: complex header must be `n`")
    n: int = _to_int(header[0], number)

    facets: List[Tuple[int, ...]] = [
        tuple(_to_int(t, number) for t in tokens) for number, tokens in lines[1:]
    ]
    if not facets:
        raise ParseError("complex has no facets")
    return SimplicialComplex(n, tuple(facets))


def is_graph_text(text: str) -> bool:
    """
    Tell graph files from matrix files by their header.

    A kind word marks a graph. Otherwise the file is a matrix when its body
    has d rows of n entries and a graph when it has E rows of two vertices.
    """
    lines = _content_lines(text)
    if not lines:
        return False

    header: List[str] = lines[0][1]
    if len(header) == 3:
        return True
    if len(header) != 2:
        return False

    try:
        first, second = int(header[0]), int(header[1])
    except ValueError:
        return False

    body = lines[1:]
    matrix_shaped: bool = len(body) == first and all(len(t) == second for _, t in body)
    return not matrix_shaped


def parse_fractions(tokens: Optional[Sequence[str]]) -> Optional[List[str]]:
    """Validate rational tokens such as 3 or 7/2"""
    if tokens is None:
        return None

    for token in tokens:
        numerator, _, denominator = token.partition("/")
        try:
            int(numerator)
            if denominator and int(denominator) == 0:
                raise ParseError(f"zero denominator in {token!r}")
        except ValueError:
            raise ParseError(f"expected a rational number, got {token!r}")
    return list(tokens)
