from typing import List, Optional

from lawrence_toric import AnalysisEngine, ModelTemplate
from lawrence_toric.base import HypothesisFailed
from lawrence_toric.exactlin import RatMatrix
from lawrence_toric.model import (
    ModelValues,
    Permutation,
    closed_degree_K,
    closed_mldeg_K,
    complete_bipartite_incidence,
    no_three_way_matrix,
    no_three_way_permutation,
)


class NoThreeWayModel(ModelTemplate):
    """No-three-way interaction with one binary variable"""

    model_name = "n3w"
    author = "lawrence_toric"

    m1 = 2
    m2 = 2
    m3 = 2

    binary_axis = 0

    parameters = ["m1", "m2", "m3"]
    variables = ["binary_axis"]

    def __init__(self, analysis_engine: AnalysisEngine, setting: dict) -> None:
        """Constructor"""
        super().__init__(analysis_engine, setting)

    def on_init(self) -> None:
        """Pick the binary variable, preferring the last one"""
        sizes: List[int] = [self.m1, self.m2, self.m3]
        if 2 not in sizes:
            raise HypothesisFailed("binary-variable", f"no variable of {sizes} is binary")

        self.binary_axis = max(i for i, m in enumerate(sizes) if m == 2) + 1
        self.write_log(f"binary variable {self.binary_axis}")
        super().on_init()

    def _other_sizes(self) -> List[int]:
        """"""
        sizes: List[int] = [self.m1, self.m2, self.m3]
        sizes.pop(self.binary_axis - 1)
        return sizes

    def base_matrix(self) -> RatMatrix:
        """A_K of the two remaining variables"""
        a, b = self._other_sizes()
        return complete_bipartite_incidence(a, b)

    def model_matrix(self) -> RatMatrix:
        """"""
        return no_three_way_matrix(self.m1, self.m2, self.m3)

    def closed_form(self) -> Optional[ModelValues]:
        """"""
        a, b = self._other_sizes()
        return ModelValues(closed_degree_K(a, b), closed_mldeg_K(a, b))

    def lift_orders(self) -> Optional[Permutation]:
        """Defined when the binary variable comes last"""
        if self.binary_axis != 3:
            return None
        return no_three_way_permutation(self.m1, self.m2)
