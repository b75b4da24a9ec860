from pathlib import Path
from typing import List, Optional, Tuple

from lawrence_toric import AnalysisEngine, ModelTemplate
from lawrence_toric.base import ParseError
from lawrence_toric.exactlin import RatMatrix
from lawrence_toric.model import (
    ModelValues,
    Permutation,
    SimplicialComplex,
    hierarchical_matrix,
    lawrence_complex,
    lawrence_lift_permutation,
    two_facet_formulas,
)
from lawrence_toric.utility import parse_complex_text, read_text


def parse_facets(text: str) -> Tuple[Tuple[int, ...], ...]:
    """Facets written as 1,2/2,3"""
    try:
        return tuple(
            tuple(int(i) for i in facet.split(",") if i)
            for facet in text.split("/")
        )
    except ValueError:
        raise ParseError(f"facets must look like 1,2/2,3, got {text!r}")


def parse_states(text: str) -> Tuple[int, ...]:
    """State counts written as 3,2,2"""
    try:
        return tuple(int(r) for r in text.split(","))
    except ValueError:
        raise ParseError(f"states must look like 3,2,2, got {text!r}")


class HierarchicalModel(ModelTemplate):
    """Lawrence lift of a hierarchical model: facets of G plus one binary variable"""

    model_name = "hier"
    author = "lawrence_toric"

    facets = "1/2"
    states = "2,2"

    facet_count = 0

    parameters = ["facets", "states"]
    variables = ["facet_count"]

    def __init__(self, analysis_engine: AnalysisEngine, setting: dict) -> None:
        """Constructor"""
        super().__init__(analysis_engine, setting)

        self.complex: Optional[SimplicialComplex] = None
        self.r: Tuple[int, ...] = ()

    @classmethod
    def parse_args(cls, args: List[str]) -> dict:
        """FACETS STATES, e.g. 1,2/2,3 3,2,2; FACETS may also name a complex file"""
        if len(args) != 2:
            raise ParseError("model hier takes FACETS STATES, e.g. 1,2/2,3 3,2,2")
        return {"facets": args[0], "states": args[1]}

    def on_init(self) -> None:
        """"""
        self.r = parse_states(self.states)
        if Path(self.facets).is_file():
            self.complex = parse_complex_text(read_text(self.facets))
            if self.complex.n != len(self.r):
                raise ParseError(f"complex on {self.complex.n} vertices needs {self.complex.n} state counts")
        else:
            self.complex = SimplicialComplex(len(self.r), parse_facets(self.facets))
        self.facet_count = len(self.complex.facets)
        super().on_init()

    def base_matrix(self) -> RatMatrix:
        """"""
        return hierarchical_matrix(self.complex, self.r)

    def model_matrix(self) -> RatMatrix:
        """Hierarchical matrix of the lifted complex"""
        return hierarchical_matrix(lawrence_complex(self.complex), self.r + (2,))

    def closed_form(self) -> Optional[ModelValues]:
        """Two facets reduce to disjoint complete bipartite graphs"""
        if self.facet_count != 2:
            return None
        return two_facet_formulas(self.complex, self.r)

    def lift_orders(self) -> Optional[Permutation]:
        """"""
        return lawrence_lift_permutation(self.complex, self.r)
