"""
Matrices of log-linear models and closed formulas for their degrees.

Index conventions: marginal cells and joint states run in lexicographic order
with the first variable slowest; facets keep the order they are given in.
"""

from dataclasses import dataclass
from itertools import product
from math import comb, prod
from typing import Dict, List, Sequence, Tuple

from sympy import factorial
from sympy.functions.combinatorial.numbers import stirling

from .base import CAP_GROUND, ComplexError, DimensionMismatch, HypothesisFailed
from .exactlin import RatMatrix
from .graphs import Graph, complete_bipartite, disjoint_union, incidence
from .toric import degree, lawrence_lift, mldeg


Permutation = Tuple[List[int], List[int]]


@dataclass(frozen=True)
class SimplicialComplex:
    """Facets on the ground set 1..n"""

    n: int
    facets: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        """"""
        facets: Tuple[Tuple[int, ...], ...] = tuple(tuple(sorted(set(f))) for f in self.facets)
        for f in facets:
            if any(i < 1 or i > self.n for i in f):
                raise ComplexError(f"facet {f} leaves the ground set 1..{self.n}")

        for a in range(len(facets)):
            for b in range(len(facets)):
                if a != b and set(facets[a]) <= set(facets[b]):
                    raise ComplexError(f"facets {facets[a]} and {facets[b]} are comparable")

        object.__setattr__(self, "facets", facets)


def _check_states(n: int, r: Sequence[int]) -> Tuple[int, ...]:
    """"""
    r = tuple(int(x) for x in r)
    if len(r) != n:
        raise DimensionMismatch(f"{len(r)} state counts for {n} variables")
    if any(x < 1 for x in r):
        raise DimensionMismatch("state counts must be positive")
    return r


def complete_bipartite_incidence(m1: int, m2: int) -> RatMatrix:
    """A_K(m1,m2): rows left_1..left_m1, right_1..right_m2; columns ij"""
    return incidence(complete_bipartite(m1, m2))


def no_three_way_matrix(m1: int, m2: int, m3: int) -> RatMatrix:
    """Rows (a, ij), (b, jk), (c, ik); columns ijk in row-major order"""
    cells: List[Tuple[int, int, int]] = list(product(range(m1), range(m2), range(m3)))

    data: List[List[int]] = []
    for i, j in product(range(m1), range(m2)):
        data.append([1 if (c[0], c[1]) == (i, j) else 0 for c in cells])
    for j, k in product(range(m2), range(m3)):
        data.append([1 if (c[1], c[2]) == (j, k) else 0 for c in cells])
    for i, k in product(range(m1), range(m3)):
        data.append([1 if (c[0], c[2]) == (i, k) else 0 for c in cells])

    return RatMatrix.from_rows(data)


def no_three_way_permutation(m1: int, m2: int) -> Permutation:
    """
    Orders with no_three_way_matrix(m1, m2, 2).permute(rows, cols) equal to
    the Lawrence lift of A_K(m1,m2).
    """
    b_offset: int = m1 * m2
    c_offset: int = m1 * m2 + 2 * m2

    rows: List[int] = []
    for copy in range(2):
        rows.extend(c_offset + i * 2 + copy for i in range(m1))
        rows.extend(b_offset + j * 2 + copy for j in range(m2))
    rows.extend(range(m1 * m2))

    cols: List[int] = [
        (i * m2 + j) * 2 + copy
        for copy in range(2) for i in range(m1) for j in range(m2)
    ]
    return rows, cols


def hierarchical_matrix(complex_: SimplicialComplex, r: Sequence[int]) -> RatMatrix:
    """A_(F,i),k = 1 if k restricted to F is i"""
    r = _check_states(complex_.n, r)
    states: List[Tuple[int, ...]] = list(product(*(range(x) for x in r)))

    data: List[List[int]] = []
    for facet in complex_.facets:
        positions: List[int] = [i - 1 for i in facet]
        for marginal in product(*(range(r[p]) for p in positions)):
            data.append([
                1 if all(k[p] == m for p, m in zip(positions, marginal)) else 0
                for k in states
            ])

    return RatMatrix.from_rows(data)


def lawrence_complex(complex_: SimplicialComplex) -> SimplicialComplex:
    """Facets [n] and F + {n+1} for every facet F"""
    n: int = complex_.n
    facets: List[Tuple[int, ...]] = [tuple(range(1, n + 1))]
    facets.extend(f + (n + 1,) for f in complex_.facets)
    return SimplicialComplex(n + 1, tuple(facets))


def lawrence_lift_permutation(complex_: SimplicialComplex, r: Sequence[int]) -> Permutation:
    """
    Orders with hierarchical_matrix(lawrence_complex(G), r + (2,)) permuted
    onto lawrence_lift(hierarchical_matrix(G, r)).
    """
    r = _check_states(complex_.n, r)
    total: int = prod(r)
    sizes: List[int] = [prod(r[i - 1] for i in f) for f in complex_.facets]

    offsets: List[int] = []
    offset: int = total
    for size in sizes:
        offsets.append(offset)
        offset += 2 * size

    rows: List[int] = []
    for copy in range(2):
        for size, start in zip(sizes, offsets):
            rows.extend(start + m * 2 + copy for m in range(size))
    rows.extend(range(total))

    cols: List[int] = [k * 2 + copy for copy in range(2) for k in range(total)]
    return rows, cols


def lift_permutation(permutation: Permutation, shape: Tuple[int, int]) -> Permutation:
    """If B = A.permute(rows, cols) then Lambda(B) = Lambda(A).permute(result)"""
    rows, cols = permutation
    d, n = shape
    lifted_rows: List[int] = list(rows) + [d + i for i in rows] + [2 * d + j for j in cols]
    lifted_cols: List[int] = list(cols) + [n + j for j in cols]
    return lifted_rows, lifted_cols


def compose_permutations(first: Permutation, second: Permutation) -> Permutation:
    """Apply first, then second"""
    return (
        [first[0][i] for i in second[0]],
        [first[1][j] for j in second[1]],
    )


def quasi_independence_matrix(base: RatMatrix, removed_columns: Sequence[int]) -> RatMatrix:
    """Drop the listed columns"""
    removed = set(removed_columns)
    if any(j < 0 or j >= base.cols for j in removed):
        raise DimensionMismatch(f"removed columns {sorted(removed)} outside 0..{base.cols - 1}")

    kept: List[int] = [j for j in range(base.cols) if j not in removed]
    if not kept:
        raise DimensionMismatch("every column was removed")
    return base.select_columns(kept)


def closed_degree_K(m1: int, m2: int) -> int:
    """m1^(m2-1) * m2^(m1-1)"""
    return m1 ** (m2 - 1) * m2 ** (m1 - 1)


def closed_mldeg_K(m1: int, m2: int) -> int:
    """Sum over k of (1/k sum_i (-1)^(m1-i) C(k,i) i^m1) k^m2"""
    total: int = 0
    for k in range(1, m1 + 1):
        inner: int = sum(
            (-1) ** (m1 - i) * comb(k, i) * i ** m1 for i in range(1, k + 1)
        )
        if inner % k:
            raise ArithmeticError(f"inner sum {inner} not divisible by {k}")
        total += inner // k * k ** m2
    return total


def closed_mldeg_K_stirling(m1: int, m2: int) -> int:
    """Same value through Stirling numbers of the second kind"""
    return sum(
        int((-1) ** (m1 - k) * factorial(k - 1) * stirling(m1, k) * k ** m2)
        for k in range(1, m1 + 1)
    )


ROW_FORMULAS: Dict[int, Tuple[Tuple[int, int], ...]] = {
    2: ((1, 2), (-1, 1)),
    3: ((2, 3), (-3, 2), (1, 1)),
    4: ((6, 4), (-12, 3), (7, 2), (-1, 1)),
    5: ((24, 5), (-60, 4), (50, 3), (-15, 2), (1, 1)),
}


def row_mldeg_K(m: int, k: int) -> int:
    """ML degree of K(m, k) from the per-row formula, k in 2..5"""
    if k not in ROW_FORMULAS:
        raise DimensionMismatch(f"row formulas exist for 2..5, not {k}")
    return sum(c * base ** m for c, base in ROW_FORMULAS[k])


@dataclass
class ModelValues:
    """"""

    degree: int
    mldeg: int
    verified: bool = False

    def to_dict(self) -> dict:
        """"""
        return {"degree": self.degree, "mldeg": self.mldeg, "verified": self.verified}


def _two_facet_split(complex_: SimplicialComplex, r: Sequence[int]) -> Tuple[int, int, int]:
    """(m1, m2, r_S) with S the intersection of the two facets"""
    if len(complex_.facets) != 2:
        raise ComplexError(f"expected two facets, got {len(complex_.facets)}")
    r = _check_states(complex_.n, r)

    first, second = (set(f) for f in complex_.facets)
    shared = first & second
    m1: int = prod(r[i - 1] for i in first - shared)
    m2: int = prod(r[i - 1] for i in second - shared)
    r_s: int = prod(r[i - 1] for i in shared)
    return m1, m2, r_s


def two_facet_formulas(complex_: SimplicialComplex, r: Sequence[int]) -> ModelValues:
    """Degree and ML degree of the lifted two-facet model as powers of K(m1, m2)"""
    m1, m2, r_s = _two_facet_split(complex_, r)
    return ModelValues(closed_degree_K(m1, m2) ** r_s, closed_mldeg_K(m1, m2) ** r_s)


def two_facet_graph_matrix(complex_: SimplicialComplex, r: Sequence[int]) -> RatMatrix:
    """Incidence matrix of r_S disjoint copies of K(m1, m2)"""
    m1, m2, r_s = _two_facet_split(complex_, r)
    graph: Graph = complete_bipartite(m1, m2)
    union: Graph = graph
    for _ in range(r_s - 1):
        union = disjoint_union(union, graph)
    return incidence(union)


def disjoint_binary_degree(n: int, m: int) -> int:
    """Degree for two disjoint facets of n and m binary variables"""
    return 2 ** (m * (2 ** n - 1) + n * (2 ** m - 1))


def simplex_boundary_complex(n: int) -> SimplicialComplex:
    """Boundary of the n-simplex: all n-subsets of 1..n+1"""
    if n < 2:
        raise DimensionMismatch(f"simplex dimension must be at least 2, got {n}")

    complex_: SimplicialComplex = SimplicialComplex(2, ((1,), (2,)))
    for _ in range(n - 1):
        complex_ = lawrence_complex(complex_)
    return complex_


def simplex_boundary_base(n: int) -> RatMatrix:
    """Lambda^(n-2)(A_K(2,2)); its lift is the binary boundary model"""
    if n < 2:
        raise DimensionMismatch(f"simplex dimension must be at least 2, got {n}")

    matrix: RatMatrix = complete_bipartite_incidence(2, 2)
    for _ in range(n - 2):
        matrix = lawrence_lift(matrix)
    return matrix


def simplex_boundary_permutation(n: int) -> Permutation:
    """
    Orders with the binary boundary model of the n-simplex permuted onto
    the (n-1)-fold lift of A_K(2,2).

    The complex {1}, {2} has hierarchical matrix exactly A_K(2,2); each
    further lift composes one more lawrence_lift_permutation.
    """
    complex_: SimplicialComplex = SimplicialComplex(2, ((1,), (2,)))
    shape: Tuple[int, int] = (4, 4)
    current: Permutation = (list(range(4)), list(range(4)))

    for _ in range(n - 1):
        step: Permutation = lawrence_lift_permutation(complex_, (2,) * complex_.n)
        current = compose_permutations(step, lift_permutation(current, shape))

        d, m = shape
        shape = (2 * d + m, 2 * m)
        complex_ = lawrence_complex(complex_)

    return current


def simplex_boundary_values(n: int, verify_up_to: int = 4, cap_ground: int = CAP_GROUND) -> ModelValues:
    """(2^n, 2^n - 1), checked through the pipeline for small n"""
    values: ModelValues = ModelValues(2 ** n, 2 ** n - 1)

    if n <= verify_up_to:
        base: RatMatrix = simplex_boundary_base(n)
        if base.cols <= cap_ground:
            computed: Tuple[int, int] = (degree(base), mldeg(base))
            if computed != (values.degree, values.mldeg):
                raise HypothesisFailed(
                    "closed-form-agreement",
                    f"pipeline gives {computed} for the boundary of the {n}-simplex"
                )
            values.verified = True

    return values
