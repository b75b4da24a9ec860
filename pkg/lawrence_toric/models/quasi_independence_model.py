from typing import List, Optional

from lawrence_toric import AnalysisEngine, ModelTemplate
from lawrence_toric.base import DimensionMismatch, ParseError
from lawrence_toric.exactlin import RatMatrix
from lawrence_toric.graphs import Graph, complete_bipartite
from lawrence_toric.matroid import Matroid, has_only_two_circuits
from lawrence_toric.model import ModelValues, complete_bipartite_incidence, quasi_independence_matrix


class QuasiIndependenceModel(ModelTemplate):
    """Independence model with structural zeros, as a bipartite graph"""

    model_name = "quasi"
    author = "lawrence_toric"

    m1 = 2
    m2 = 2
    removed = ""

    mldeg_one = False

    parameters = ["m1", "m2", "removed"]
    variables = ["mldeg_one"]

    def __init__(self, analysis_engine: AnalysisEngine, setting: dict) -> None:
        """Constructor"""
        super().__init__(analysis_engine, setting)

    @classmethod
    def parse_args(cls, args: List[str]) -> dict:
        """M1 M2 [CELLS], cells as 11,23"""
        if len(args) not in (2, 3):
            raise ParseError("model quasi takes M1 M2 [CELLS], e.g. 3 3 11,22")

        setting: dict = {}
        for name, value in zip(("m1", "m2"), args):
            try:
                setting[name] = int(value)
            except ValueError:
                raise ParseError(f"{name} must be an integer, got {value!r}")
        setting["removed"] = args[2] if len(args) == 3 else ""
        return setting

    def removed_columns(self) -> List[int]:
        """Cell labels ij (1-based) to column indices"""
        graph: Graph = complete_bipartite(self.m1, self.m2)
        index = {label: k for k, label in enumerate(graph.labels)}

        columns: List[int] = []
        for label in filter(None, self.removed.split(",")):
            if label not in index:
                raise DimensionMismatch(f"cell {label} is not in a {self.m1} x {self.m2} table")
            columns.append(index[label])
        return columns

    def on_init(self) -> None:
        """"""
        self.mldeg_one = has_only_two_circuits(Matroid(self.base_matrix()))
        super().on_init()

    def base_matrix(self) -> RatMatrix:
        """"""
        return quasi_independence_matrix(
            complete_bipartite_incidence(self.m1, self.m2),
            self.removed_columns(),
        )

    def closed_form(self) -> Optional[ModelValues]:
        """A forest of cells has a single basis"""
        if not self.mldeg_one:
            return None
        return ModelValues(1, 1)
