from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .base import DimensionMismatch


Exponent = Tuple[int, ...]


class SparsePoly:
    """Multivariate polynomial with exact rational coefficients"""

    def __init__(
        self,
        arity: int,
        terms: Optional[Dict[Exponent, Fraction]] = None,
        names: Optional[Sequence[str]] = None
    ) -> None:
        """Constructor"""
        self.arity: int = arity
        self.names: Tuple[str, ...] = tuple(names) if names else tuple(f"x{i + 1}" for i in range(arity))
        if len(self.names) != arity:
            raise DimensionMismatch(f"{len(self.names)} names for {arity} variables")

        self.terms: Dict[Exponent, Fraction] = {}
        for exponent, coeff in (terms or {}).items():
            self.add_term(exponent, coeff)

    @classmethod
    def constant(cls, value, arity: int, names: Optional[Sequence[str]] = None) -> "SparsePoly":
        """"""
        return cls(arity, {(0,) * arity: Fraction(value)}, names)

    @classmethod
    def variable(cls, index: int, arity: int, names: Optional[Sequence[str]] = None) -> "SparsePoly":
        """"""
        exponent: List[int] = [0] * arity
        exponent[index] = 1
        return cls(arity, {tuple(exponent): Fraction(1)}, names)

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff=1, names: Optional[Sequence[str]] = None) -> "SparsePoly":
        """"""
        return cls(len(exponent), {tuple(exponent): Fraction(coeff)}, names)

    def add_term(self, exponent: Sequence[int], coeff) -> None:
        """Accumulate a term, dropping it when the coefficient cancels"""
        exponent = tuple(exponent)
        if len(exponent) != self.arity:
            raise DimensionMismatch(f"exponent of length {len(exponent)} in arity {self.arity}")

        coeff = Fraction(coeff)
        if not coeff:
            return

        total: Fraction = self.terms.get(exponent, Fraction(0)) + coeff
        if total:
            self.terms[exponent] = total
        else:
            self.terms.pop(exponent, None)

    def _check(self, other: "SparsePoly") -> None:
        """"""
        if other.arity != self.arity:
            raise DimensionMismatch(f"arity {self.arity} against {other.arity}")

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        """"""
        self._check(other)
        result: SparsePoly = SparsePoly(self.arity, self.terms, self.names)
        for exponent, coeff in other.terms.items():
            result.add_term(exponent, coeff)
        return result

    def __neg__(self) -> "SparsePoly":
        """"""
        return SparsePoly(self.arity, {e: -c for e, c in self.terms.items()}, self.names)

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        """"""
        return self + (-other)

    def __mul__(self, other: "SparsePoly") -> "SparsePoly":
        """"""
        self._check(other)
        result: SparsePoly = SparsePoly(self.arity, None, self.names)
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                result.add_term(tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
        return result

    def scale(self, factor) -> "SparsePoly":
        """"""
        factor = Fraction(factor)
        return SparsePoly(self.arity, {e: c * factor for e, c in self.terms.items()}, self.names)

    def __pow__(self, power: int) -> "SparsePoly":
        """"""
        result: SparsePoly = SparsePoly.constant(1, self.arity, self.names)
        for _ in range(power):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        """"""
        return (
            isinstance(other, SparsePoly)
            and self.arity == other.arity
            and self.terms == other.terms
        )

    def is_zero(self) -> bool:
        """"""
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial"""
        return max((sum(e) for e in self.terms), default=-1)

    def homogeneous_part(self, degree: int) -> "SparsePoly":
        """"""
        return SparsePoly(
            self.arity,
            {e: c for e, c in self.terms.items() if sum(e) == degree},
            self.names
        )

    def top_part(self) -> "SparsePoly":
        """Homogeneous part of highest degree"""
        return self.homogeneous_part(self.degree())

    def is_homogeneous(self) -> bool:
        """"""
        return len({sum(e) for e in self.terms}) <= 1

    def evaluate(self, point: Sequence) -> Fraction:
        """"""
        if len(point) != self.arity:
            raise DimensionMismatch(f"point of length {len(point)} in arity {self.arity}")

        total: Fraction = Fraction(0)
        for exponent, coeff in self.terms.items():
            value: Fraction = coeff
            for x, k in zip(point, exponent):
                if k:
                    value *= Fraction(x) ** k
            total += value
        return total

    def sorted_terms(self) -> List[Tuple[Exponent, Fraction]]:
        """Terms by exponent vector, lexicographically descending"""
        return sorted(self.terms.items(), key=lambda item: item[0], reverse=True)

    def to_text(self) -> str:
        """One-line text form, e.g. x1*x5*y2 -x2*y1*y5"""
        if not self.terms:
            return "0"

        pieces: List[str] = []
        for k, (exponent, coeff) in enumerate(self.sorted_terms()):
            factors: List[str] = []
            for name, power in zip(self.names, exponent):
                if power == 1:
                    factors.append(name)
                elif power > 1:
                    factors.append(f"{name}^{power}")

            magnitude: Fraction = abs(coeff)
            if factors and magnitude == 1:
                body: str = "*".join(factors)
            else:
                body = "*".join([format_fraction(magnitude)] + factors)

            if k == 0:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f"+{body}" if coeff > 0 else f"-{body}")

        return " ".join(pieces)

    def __repr__(self) -> str:
        """"""
        return f"SparsePoly({self.to_text()})"


def format_fraction(value: Fraction) -> str:
    """Integer or p/q"""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_poly(text: str, names: Sequence[str]) -> SparsePoly:
    """Read back the one-line form written by SparsePoly.to_text"""
    index: Dict[str, int] = {name: i for i, name in enumerate(names)}
    poly: SparsePoly = SparsePoly(len(names), None, names)

    text = text.strip()
    if text == "0":
        return poly

    tokens: List[str] = text.replace("- ", "-").replace("+ ", "+").split()
    for token in tokens:
        sign: int = -1 if token.startswith("-") else 1
        token = token.lstrip("+-")

        coeff: Fraction = Fraction(1)
        exponent: List[int] = [0] * len(names)
        for factor in token.split("*"):
            if factor in index or "^" in factor:
                name, _, power = factor.partition("^")
                exponent[index[name]] += int(power) if power else 1
            else:
                coeff *= Fraction(factor)

        poly.add_term(exponent, sign * coeff)
    return poly
