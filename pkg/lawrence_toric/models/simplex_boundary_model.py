from typing import Optional

from lawrence_toric import AnalysisEngine, ModelTemplate
from lawrence_toric.exactlin import RatMatrix
from lawrence_toric.model import (
    ModelValues,
    Permutation,
    hierarchical_matrix,
    simplex_boundary_base,
    simplex_boundary_complex,
    simplex_boundary_permutation,
)


class SimplexBoundaryModel(ModelTemplate):
    """Binary hierarchical model of the boundary of the n-simplex"""

    model_name = "boundary"
    author = "lawrence_toric"

    n = 3

    parameters = ["n"]
    variables = []

    def __init__(self, analysis_engine: AnalysisEngine, setting: dict) -> None:
        """Constructor"""
        super().__init__(analysis_engine, setting)

    def base_matrix(self) -> RatMatrix:
        """Iterated lift of A_K(2,2)"""
        return simplex_boundary_base(self.n)

    def model_matrix(self) -> RatMatrix:
        """"""
        return hierarchical_matrix(simplex_boundary_complex(self.n), (2,) * (self.n + 1))

    def closed_form(self) -> Optional[ModelValues]:
        """"""
        return ModelValues(2 ** self.n, 2 ** self.n - 1)

    def lift_orders(self) -> Optional[Permutation]:
        """"""
        return simplex_boundary_permutation(self.n)
