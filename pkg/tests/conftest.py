import json
from pathlib import Path

import pytest

from lawrence_toric import SCHEMA_PATH, AnalysisEngine
from lawrence_toric.exactlin import RatMatrix
from lawrence_toric.graphs import Graph, complete_bipartite, cycle_graph


# Directed 4-cycle 1-2-3-4 with chord 1-3
EXAMPLE_MATRIX = [
    [-1, 0, 0, 1, 1],
    [1, 1, 0, 0, 0],
    [0, -1, 1, 0, -1],
    [0, 0, -1, -1, 0],
]


@pytest.fixture
def example_matrix() -> RatMatrix:
    return RatMatrix.from_rows(EXAMPLE_MATRIX)


@pytest.fixture
def triangle() -> Graph:
    return cycle_graph(3)


@pytest.fixture
def square() -> Graph:
    return cycle_graph(4)


@pytest.fixture
def tree() -> Graph:
    """Star with three leaves"""
    return Graph(4, ((0, 1), (0, 2), (0, 3)))


@pytest.fixture
def k23() -> Graph:
    return complete_bipartite(2, 3)


@pytest.fixture
def engine(tmp_path, monkeypatch) -> AnalysisEngine:
    """Engine with built-in models only, run from an empty directory"""
    monkeypatch.chdir(tmp_path)
    engine = AnalysisEngine()
    engine.init_engine()
    return engine


@pytest.fixture(scope="session")
def report_schema() -> dict:
    with open(SCHEMA_PATH, encoding="UTF-8") as f:
        return json.load(f)


@pytest.fixture
def write_file(tmp_path):
    """Write text to a file under tmp_path and return its path as str"""
    def write(name: str, text: str) -> str:
        path: Path = tmp_path.joinpath(name)
        path.write_text(text, encoding="UTF-8")
        return str(path)
    return write
