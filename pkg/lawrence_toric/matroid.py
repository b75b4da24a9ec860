from functools import cached_property, lru_cache
from itertools import combinations
from math import comb, gcd
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from pandas import DataFrame

from .base import CAP_GROUND, DimensionMismatch, GroundSetTooLarge, NotABasis
from .exactlin import (
    IntVector,
    RatMatrix,
    bareiss_determinant,
    bareiss_rank,
    circuits,
    primitive_vector,
    row_reduce,
)


Monomial = Tuple[int, int]


class TuttePoly:
    """Coefficient table t_ij of a Tutte polynomial in x (i) and y (j)"""

    def __init__(self, coeffs: Optional[Dict[Monomial, int]] = None) -> None:
        """Constructor"""
        self.coeffs: Dict[Monomial, int] = {
            k: v for k, v in (coeffs or {}).items() if v
        }

    @classmethod
    def one(cls) -> "TuttePoly":
        """"""
        return cls({(0, 0): 1})

    @classmethod
    def monomial(cls, i: int, j: int) -> "TuttePoly":
        """"""
        return cls({(i, j): 1})

    def __add__(self, other: "TuttePoly") -> "TuttePoly":
        """"""
        coeffs: Dict[Monomial, int] = dict(self.coeffs)
        for k, v in other.coeffs.items():
            coeffs[k] = coeffs.get(k, 0) + v
        return TuttePoly(coeffs)

    def __mul__(self, other: "TuttePoly") -> "TuttePoly":
        """"""
        coeffs: Dict[Monomial, int] = {}
        for (i1, j1), v1 in self.coeffs.items():
            for (i2, j2), v2 in other.coeffs.items():
                k: Monomial = (i1 + i2, j1 + j2)
                coeffs[k] = coeffs.get(k, 0) + v1 * v2
        return TuttePoly(coeffs)

    def shift(self, i: int, j: int) -> "TuttePoly":
        """Multiply by x^i y^j"""
        return TuttePoly({(a + i, b + j): v for (a, b), v in self.coeffs.items()})

    def __eq__(self, other: object) -> bool:
        """"""
        return isinstance(other, TuttePoly) and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        """"""
        terms: List[str] = [f"{t}*x^{i}*y^{j}" for (i, j), t in sorted(self.coeffs.items())]
        return f"TuttePoly({' + '.join(terms) or '0'})"

    def evaluate(self, a: int, b: int) -> int:
        """Sum of t_ij a^i b^j, with 0^0 = 1"""
        return sum(t * a ** i * b ** j for (i, j), t in self.coeffs.items())

    @property
    def bases_count(self) -> int:
        """"""
        return self.evaluate(1, 1)

    @property
    def mobius(self) -> int:
        """Bases of external activity zero"""
        return self.evaluate(1, 0)

    def to_json(self) -> dict:
        """"""
        return {"coeffs": [[i, j, t] for (i, j), t in sorted(self.coeffs.items())]}

    @classmethod
    def from_json(cls, data: dict) -> "TuttePoly":
        """"""
        return cls({(int(i), int(j)): int(t) for i, j, t in data["coeffs"]})

    def as_dataframe(self) -> DataFrame:
        """Coefficient grid with x exponents as rows and y exponents as columns"""
        if not self.coeffs:
            return DataFrame()

        width: int = max(j for _, j in self.coeffs) + 1
        height: int = max(i for i, _ in self.coeffs) + 1
        grid: List[List[int]] = [
            [self.coeffs.get((i, j), 0) for j in range(width)] for i in range(height)
        ]
        df: DataFrame = DataFrame(grid)
        df.index.name = "x"
        df.columns.name = "y"
        return df


class Matroid:
    """Column matroid of a rational matrix"""

    def __init__(self, matrix: RatMatrix, cap_ground: int = CAP_GROUND) -> None:
        """Constructor"""
        self.matrix: RatMatrix = matrix
        self.ground_size: int = matrix.cols
        self.cap_ground: int = cap_ground

        # Row scaling keeps the column matroid
        self.columns: List[List[int]] = _integer_columns(matrix)
        self.rank: int = bareiss_rank([list(r) for r in zip(*self.columns)])

        self.rank_cache: Dict[FrozenSet[int], int] = {}

    def rank_of(self, subset: Iterable[int]) -> int:
        """"""
        key: FrozenSet[int] = frozenset(subset)
        if key not in self.rank_cache:
            if not key:
                self.rank_cache[key] = 0
            else:
                rows: List[List[int]] = [list(r) for r in zip(*(self.columns[j] for j in sorted(key)))]
                self.rank_cache[key] = bareiss_rank(rows)
        return self.rank_cache[key]

    def is_independent(self, subset: Iterable[int]) -> bool:
        """"""
        subset = list(subset)
        return self.rank_of(subset) == len(subset)

    def check_cap(self) -> None:
        """"""
        if self.ground_size > self.cap_ground:
            raise GroundSetTooLarge(
                f"exhaustive enumeration limited to {self.cap_ground} elements, matroid has {self.ground_size}"
            )

    @cached_property
    def circuit_cache(self) -> List[Tuple[int, ...]]:
        """Circuit supports, computed once"""
        return [c.support for c in circuits(self.matrix)]

    @cached_property
    def basis_set(self) -> Set[FrozenSet[int]]:
        """"""
        return {frozenset(b) for b in bases(self)}

    def is_basis(self, subset: Iterable[int]) -> bool:
        """"""
        return frozenset(subset) in self.basis_set

    def fundamental_circuit(self, basis: Sequence[int], e: int) -> Tuple[int, ...]:
        """The unique circuit inside basis + e"""
        base: Set[int] = set(basis)
        members: List[int] = [e] + [
            b for b in base if self.is_basis((base - {b}) | {e})
        ]
        return tuple(sorted(members))

    def fundamental_cocircuit(self, basis: Sequence[int], b: int) -> Tuple[int, ...]:
        """The unique cocircuit inside the complement of basis - b"""
        base: Set[int] = set(basis)
        members: List[int] = [b] + [
            f for f in range(self.ground_size)
            if f not in base and self.is_basis((base - {b}) | {f})
        ]
        return tuple(sorted(members))


def _integer_columns(matrix: RatMatrix) -> List[List[int]]:
    """Columns after clearing denominators row by row"""
    rows: List[List[int]] = []
    for row in matrix.to_rows():
        scale: int = 1
        for x in row:
            scale = scale * x.denominator // gcd(scale, x.denominator)
        rows.append([int(x * scale) for x in row])
    return [list(c) for c in zip(*rows)]


def _position_map(M: Matroid, order: Optional[Sequence[int]]) -> Dict[int, int]:
    """Position of each element in a total order; natural order by default"""
    if order is None:
        order = range(M.ground_size)

    order = list(order)
    if sorted(order) != list(range(M.ground_size)):
        raise DimensionMismatch(f"order {order} is not a permutation of the ground set")
    return {e: k for k, e in enumerate(order)}


def bases(M: Matroid) -> List[Tuple[int, ...]]:
    """All bases in lexicographic order"""
    M.check_cap()
    return [
        b for b in combinations(range(M.ground_size), M.rank)
        if M.rank_of(b) == M.rank
    ]


def external_activity(M: Matroid, B: Sequence[int], order: Optional[Sequence[int]] = None) -> int:
    """Number of e outside B that are smallest in their fundamental circuit"""
    if not M.is_basis(B):
        raise NotABasis(f"{sorted(B)} is not a basis")

    position: Dict[int, int] = _position_map(M, order)
    base: Set[int] = set(B)

    count: int = 0
    for e in range(M.ground_size):
        if e in base:
            continue
        circuit: Tuple[int, ...] = M.fundamental_circuit(B, e)
        if min(circuit, key=position.__getitem__) == e:
            count += 1
    return count


def internal_activity(M: Matroid, B: Sequence[int], order: Optional[Sequence[int]] = None) -> int:
    """Number of b in B that are smallest in their fundamental cocircuit"""
    if not M.is_basis(B):
        raise NotABasis(f"{sorted(B)} is not a basis")

    position: Dict[int, int] = _position_map(M, order)

    count: int = 0
    for b in B:
        cocircuit: Tuple[int, ...] = M.fundamental_cocircuit(B, b)
        if min(cocircuit, key=position.__getitem__) == b:
            count += 1
    return count


def tutte_census(M: Matroid) -> TuttePoly:
    """Corank-nullity sum over every subset of the ground set"""
    M.check_cap()

    # Count subsets by (corank, nullity) first
    census: Dict[Tuple[int, int], int] = {}
    for size in range(M.ground_size + 1):
        for subset in combinations(range(M.ground_size), size):
            r: int = M.rank_of(subset)
            key: Tuple[int, int] = (M.rank - r, size - r)
            census[key] = census.get(key, 0) + 1

    # Expand (x - 1)^p (y - 1)^q
    coeffs: Dict[Monomial, int] = {}
    for (p, q), count in census.items():
        for i in range(p + 1):
            for j in range(q + 1):
                term: int = count * comb(p, i) * comb(q, j) * (-1) ** (p - i + q - j)
                coeffs[(i, j)] = coeffs.get((i, j), 0) + term

    return TuttePoly(coeffs)


def tutte_activity(M: Matroid, order: Optional[Sequence[int]] = None) -> TuttePoly:
    """Count bases by (internal, external) activity"""
    coeffs: Dict[Monomial, int] = {}
    for b in bases(M):
        key: Monomial = (internal_activity(M, b, order), external_activity(M, b, order))
        coeffs[key] = coeffs.get(key, 0) + 1
    return TuttePoly(coeffs)


def tutte_dc(M: Matroid) -> TuttePoly:
    """Deletion-contraction over loop/coloop-free connected components"""
    rows: List[List[int]] = [list(r) for r in zip(*M.columns)]
    return _tutte_of_rows(rows, M.ground_size)


def tutte_dc_cache_clear() -> None:
    """"""
    _tutte_of_component.cache_clear()


def _tutte_of_rows(rows: List[List[int]], width: int) -> TuttePoly:
    """Strip loops and coloops, then multiply the component polynomials"""
    if not rows or width == 0:
        return TuttePoly.monomial(0, width)

    reduced, pivots = row_reduce(rows)

    loops: List[int] = [j for j in range(width) if all(not row[j] for row in reduced)]
    coloops: List[int] = [
        p for row, p in zip(reduced, pivots)
        if sum(1 for x in row if x) == 1
    ]

    # Join each non-pivot column with the pivots of its fundamental circuit
    pivot_row: Dict[int, int] = {p: k for k, p in enumerate(pivots)}
    parent: Dict[int, int] = {}

    def find(e: int) -> int:
        while parent.setdefault(e, e) != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    skip: Set[int] = set(loops) | set(coloops)
    for j in range(width):
        if j in skip or j in pivot_row:
            continue
        find(j)
        for k, row in enumerate(reduced):
            if row[j]:
                parent[find(pivots[k])] = find(j)

    components: Dict[int, List[int]] = {}
    for e in range(width):
        if e not in skip:
            components.setdefault(find(e), []).append(e)

    result: TuttePoly = TuttePoly.monomial(len(coloops), len(loops))
    for members in components.values():
        component_rows: List[int] = [pivot_row[e] for e in members if e in pivot_row]
        key: Tuple[IntVector, ...] = tuple(sorted(
            primitive_vector([reduced[k][e] for k in component_rows], normalize_sign=True)
            for e in members
        ))
        result = result * _tutte_of_component(key)

    return result


@lru_cache(maxsize=None)
def _tutte_of_component(key: Tuple[IntVector, ...]) -> TuttePoly:
    """Connected, loop-free, coloop-free matroid given by its sorted columns"""
    columns: List[IntVector] = list(key)
    width: int = len(columns)
    height: int = len(columns[0])

    # Branch on the densest column
    e: int = max(range(width), key=lambda j: (sum(1 for x in columns[j] if x), -j))
    rest: List[IntVector] = columns[:e] + columns[e + 1:]

    deleted: List[List[int]] = [[c[i] for c in rest] for i in range(height)]

    p: int = next(i for i in range(height) if columns[e][i])
    pivot: int = columns[e][p]
    contracted: List[List[int]] = [
        [pivot * c[i] - columns[e][i] * c[p] for c in rest]
        for i in range(height) if i != p
    ]

    return _tutte_of_rows(deleted, width - 1) + _tutte_of_rows(contracted, width - 1)


def evaluate(T: TuttePoly, a: int, b: int) -> int:
    """"""
    return T.evaluate(a, b)


def basis_count(M: Matroid) -> int:
    """
    Number of bases of a unimodular column matroid.

    Cauchy-Binet over a maximal independent row set A' gives the sum of the
    squared maximal minors, det(A' A'^T), which counts bases when every
    maximal minor is 0 or +-1.
    """
    if M.rank == 0:
        return 1

    rows: List[List[int]] = [list(r) for r in zip(*M.columns)]
    chosen: List[List[int]] = []
    for row in rows:
        if bareiss_rank(chosen + [row]) > len(chosen):
            chosen.append(row)
        if len(chosen) == M.rank:
            break

    gram: List[List[int]] = [
        [sum(x * y for x, y in zip(r1, r2)) for r2 in chosen] for r1 in chosen
    ]
    return bareiss_determinant(gram)


def has_only_two_circuits(M: Matroid) -> bool:
    """
    True iff every circuit has exactly two elements.

    Such a matroid has no loops and its parallel classes are independent, so
    the test reads off distinct column directions instead of enumerating
    circuits.
    """
    directions: Set[IntVector] = set()
    for column in M.columns:
        if not any(column):
            return False
        directions.add(primitive_vector(column, normalize_sign=True))

    representatives: List[List[int]] = [list(r) for r in zip(*directions)]
    return bareiss_rank(representatives) == len(directions)


def has_only_two_circuits_by_enumeration(M: Matroid) -> bool:
    """"""
    return all(len(s) == 2 for s in M.circuit_cache)


def mobius_count(M: Matroid, order: Optional[Sequence[int]] = None) -> int:
    """Bases with external activity zero"""
    return sum(1 for b in bases(M) if external_activity(M, b, order) == 0)
