from abc import ABC, abstractmethod
from copy import copy
from typing import TYPE_CHECKING, List, Optional

from .base import DimensionMismatch, ParseError
from .exactlin import RatMatrix
from .model import ModelValues, Permutation
from .toric import lawrence_lift

if TYPE_CHECKING:
    from .engine import AnalysisEngine


class ModelTemplate(ABC):
    """Statistical model whose matrix is the Lawrence lift of a base matrix"""

    model_name: str = ""
    author: str = ""
    parameters: list = []
    variables: list = []

    def __init__(self, analysis_engine: "AnalysisEngine", setting: dict) -> None:
        """Constructor"""
        self.analysis_engine: "AnalysisEngine" = analysis_engine

        # State control variable
        self.inited: bool = False

        # Copy the list of variable names and insert the default variable contents
        self.variables: list = copy(self.variables)
        self.variables.insert(0, "inited")

        self.update_setting(setting)

    def update_setting(self, setting: dict) -> None:
        """Set the model parameters"""
        for name in self.parameters:
            if name in setting:
                setattr(self, name, setting[name])

    @classmethod
    def get_class_parameters(cls) -> dict:
        """Look up the default parameters of the model"""
        class_parameters: dict = {}
        for name in cls.parameters:
            class_parameters[name] = getattr(cls, name)
        return class_parameters

    def get_parameters(self) -> dict:
        """Query model parameters"""
        model_parameters: dict = {}
        for name in self.parameters:
            model_parameters[name] = getattr(self, name)
        return model_parameters

    def get_variables(self) -> dict:
        """Query model variables"""
        model_variables: dict = {}
        for name in self.variables:
            model_variables[name] = getattr(self, name)
        return model_variables

    @classmethod
    def parse_args(cls, args: List[str]) -> dict:
        """Positional command line values, one integer per parameter"""
        if len(args) != len(cls.parameters):
            raise ParseError(
                f"model {cls.model_name} takes {len(cls.parameters)} values "
                f"({' '.join(cls.parameters)}), got {len(args)}"
            )

        setting: dict = {}
        for name, value in zip(cls.parameters, args):
            try:
                setting[name] = int(value)
            except ValueError:
                raise ParseError(f"{name} must be an integer, got {value!r}")
            if setting[name] < 1:
                raise DimensionMismatch(f"{name} must be positive, got {value}")
        return setting

    def on_init(self) -> None:
        """Model initialization callback"""
        self.inited = True

    @abstractmethod
    def base_matrix(self) -> RatMatrix:
        """Matrix A whose Lawrence lift is the model matrix"""
        pass

    def model_matrix(self) -> RatMatrix:
        """"""
        return lawrence_lift(self.base_matrix())

    def closed_form(self) -> Optional[ModelValues]:
        """Closed formula values, when the model has one"""
        return None

    def lift_orders(self) -> Optional[Permutation]:
        """Row and column orders taking model_matrix onto the lift of base_matrix"""
        return None

    def write_log(self, msg: str) -> None:
        """Write a log message"""
        self.analysis_engine.write_log(msg, self)
