from typing import Optional

from lawrence_toric import AnalysisEngine, ModelTemplate
from lawrence_toric.exactlin import RatMatrix
from lawrence_toric.model import (
    ModelValues,
    closed_degree_K,
    closed_mldeg_K,
    complete_bipartite_incidence,
)


class BipartiteModel(ModelTemplate):
    """Independence model of two variables, lifted"""

    model_name = "bipartite"
    author = "lawrence_toric"

    m1 = 2
    m2 = 2

    parameters = ["m1", "m2"]
    variables = []

    def __init__(self, analysis_engine: AnalysisEngine, setting: dict) -> None:
        """Constructor"""
        super().__init__(analysis_engine, setting)

    def base_matrix(self) -> RatMatrix:
        """A_K(m1,m2)"""
        return complete_bipartite_incidence(self.m1, self.m2)

    def closed_form(self) -> Optional[ModelValues]:
        """"""
        return ModelValues(
            closed_degree_K(self.m1, self.m2),
            closed_mldeg_K(self.m1, self.m2),
        )
