from enum import Enum
from typing import Any, Optional


APP_NAME = "LawrenceToric"

SCHEMA_ID = "lawrence-toric/report/1"

# Default resource caps, overridable through the setting file and CLI flags
CAP_MINORS: int = 18
CAP_GROUND: int = 22
CAP_CYCLES: int = 100_000
DEFAULT_SEED: int = 0


class Parity(Enum):
    EVEN = "even"
    ODD = "odd"


class SystemForm(Enum):
    FULL = "full"
    ELIMINATED = "eliminated"


class TutteMethod(Enum):
    CENSUS = "census"
    ACTIVITY = "activity"
    DC = "dc"


class Method(Enum):
    CLOSED_FORM = "closed-form"
    PIPELINE = "pipeline"


class GraphKind(Enum):
    UNDIRECTED = "undirected"
    DIRECTED = "directed"
    SIGNED = "signed"


class TermOrder(Enum):
    DEGREVLEX = "degrevlex"
    DEGLEX = "deglex"


class TaxonomyClass(Enum):
    EVEN_CYCLE = "even-cycle"
    SHARED_VERTEX = "shared-vertex odd pair"
    JOINED_BY_PATH = "path-joined odd pair"


class ExitCode(Enum):
    OK = 0
    INPUT_ERROR = 1
    HYPOTHESIS_FAILED = 2
    CAP_EXCEEDED = 3


class LawrenceError(Exception):
    """Base class of all package errors"""

    reason: str = "error"
    exit_code: ExitCode = ExitCode.INPUT_ERROR

    def __init__(self, msg: str = "", detail: Optional[Any] = None) -> None:
        """"""
        super().__init__(msg or self.reason)
        self.detail: Optional[Any] = detail


# Input errors
class ParseError(LawrenceError):
    reason = "parse-error"


class NotIntegerMatrix(LawrenceError):
    reason = "not-integer-matrix"


class DimensionMismatch(LawrenceError):
    reason = "dimension-mismatch"


class NotABasis(LawrenceError):
    reason = "not-a-basis"


class NonUnitCircuitEntry(LawrenceError):
    reason = "non-unit-circuit-entry"


class GraphError(LawrenceError):
    reason = "invalid-graph"


class ComplexError(LawrenceError):
    reason = "invalid-complex"


class UnknownModel(LawrenceError):
    reason = "unknown-model"


class InvalidCircuit(LawrenceError):
    reason = "invalid-circuit"


# Hypothesis failures
class NotTotallyUnimodular(LawrenceError):
    reason = "not-totally-unimodular"
    exit_code = ExitCode.HYPOTHESIS_FAILED


class OddCircuitPresent(LawrenceError):
    """Carries the offending circuit in detail"""

    reason = "odd-circuit-present"
    exit_code = ExitCode.HYPOTHESIS_FAILED


class HypothesisFailed(LawrenceError):
    exit_code = ExitCode.HYPOTHESIS_FAILED

    def __init__(self, which: str, msg: str = "") -> None:
        """"""
        super().__init__(msg or f"hypothesis failed: {which}")
        self.which: str = which
        self.reason = which


# Resource caps
class ResourceCapExceeded(LawrenceError):
    reason = "resource-cap-exceeded"
    exit_code = ExitCode.CAP_EXCEEDED


class GroundSetTooLarge(ResourceCapExceeded):
    reason = "ground-set-too-large"


class GraphTooLarge(ResourceCapExceeded):
    reason = "graph-too-large"


class MinorCapExceeded(ResourceCapExceeded):
    reason = "minor-cap-exceeded"
