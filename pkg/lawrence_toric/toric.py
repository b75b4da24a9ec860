"""
Lawrence lifts, circuit binomials and the likelihood systems they define.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import FrozenSet, List, Optional, Sequence, Set, TextIO, Tuple

import numpy as np

from .base import (
    CAP_GROUND,
    CAP_MINORS,
    DimensionMismatch,
    HypothesisFailed,
    NonUnitCircuitEntry,
    NotTotallyUnimodular,
    OddCircuitPresent,
    SystemForm,
    TermOrder,
)
from .exactlin import (
    Circuit,
    IntVector,
    RatMatrix,
    circuit_from_support,
    circuits,
    first_odd_circuit,
    fundamental_circuits,
    is_totally_unimodular,
)
from .matroid import Matroid, bases, basis_count, has_only_two_circuits, tutte_dc
from .polynomial import SparsePoly, format_fraction


def variable_names(n: int) -> Tuple[str, ...]:
    """x1..xn followed by y1..yn"""
    return tuple(f"x{i + 1}" for i in range(n)) + tuple(f"y{i + 1}" for i in range(n))


def lawrence_lift(A: RatMatrix) -> RatMatrix:
    """[A 0; 0 A; I I]"""
    A.integer_rows()

    zero: RatMatrix = RatMatrix.zeros(A.rows, A.cols)
    identity: RatMatrix = RatMatrix.identity(A.cols)
    return RatMatrix.block([
        [A, zero],
        [zero, A],
        [identity, identity],
    ])


def higher_lawrence_lift(A: RatMatrix, k: int) -> RatMatrix:
    """k diagonal copies of A over a row of k identity blocks"""
    if k < 2:
        raise DimensionMismatch(f"lift order must be at least 2, got {k}")
    A.integer_rows()

    zero: RatMatrix = RatMatrix.zeros(A.rows, A.cols)
    identity: RatMatrix = RatMatrix.identity(A.cols)

    blocks: List[List[RatMatrix]] = []
    for b in range(k):
        blocks.append([A if c == b else zero for c in range(k)])
    blocks.append([identity] * k)
    return RatMatrix.block(blocks)


@dataclass(frozen=True)
class Binomial:
    """x^plus - x^minus over the variables x1..xn, y1..yn"""

    plus: IntVector
    minus: IntVector

    def __post_init__(self) -> None:
        """"""
        if len(self.plus) != len(self.minus) or len(self.plus) % 2:
            raise DimensionMismatch("binomial exponents must have equal even length")
        if any(a and b for a, b in zip(self.plus, self.minus)):
            raise DimensionMismatch("binomial exponents must have disjoint supports")

    @property
    def arity(self) -> int:
        """"""
        return len(self.plus)

    @property
    def names(self) -> Tuple[str, ...]:
        """"""
        return variable_names(self.arity // 2)

    def to_poly(self) -> SparsePoly:
        """"""
        poly: SparsePoly = SparsePoly(self.arity, None, self.names)
        poly.add_term(self.plus, 1)
        poly.add_term(self.minus, -1)
        return poly

    def lead(self, order: TermOrder = TermOrder.DEGREVLEX) -> IntVector:
        """Exponent of the leading monomial"""
        return max(self.plus, self.minus, key=lambda e: order_key(e, order))

    def lead_support(self, order: TermOrder = TermOrder.DEGREVLEX) -> FrozenSet[int]:
        """"""
        return frozenset(i for i, k in enumerate(self.lead(order)) if k)


def order_key(exponent: Sequence[int], order: TermOrder) -> tuple:
    """Sort key, larger is greater, with x1 > ... > xn > y1 > ... > yn"""
    degree: int = sum(exponent)
    if order is TermOrder.DEGLEX:
        return (degree, tuple(exponent))
    # Ties broken by the smaller power in the last differing variable
    return (degree, tuple(-k for k in reversed(exponent)))


def circuit_binomial(v: Circuit) -> Binomial:
    """f_v = x^{v+} y^{v-} - x^{v-} y^{v+}"""
    return Binomial(v.plus + v.minus, v.minus + v.plus)


def initial_supports(A: RatMatrix, order: TermOrder = TermOrder.DEGREVLEX) -> List[FrozenSet[int]]:
    """Lead monomial supports of every circuit binomial"""
    return [circuit_binomial(c).lead_support(order) for c in circuits(A)]


@dataclass
class OracleResult:
    """Both counts of the combinatorial degree oracle"""

    bijection: int
    search: int
    sets: List[Tuple[int, ...]] = field(default_factory=list)
    names: Tuple[str, ...] = ()

    @property
    def agree(self) -> bool:
        """"""
        return self.bijection == self.search

    @property
    def degree(self) -> int:
        """"""
        if not self.agree:
            raise HypothesisFailed(
                "oracle-agreement",
                f"bijection count {self.bijection} differs from search count {self.search}"
            )
        return self.bijection

    def components(self) -> List[Tuple[str, ...]]:
        """Generators of each top-dimensional coordinate component"""
        universe: Set[int] = set(range(len(self.names)))
        return [
            tuple(self.names[i] for i in sorted(universe - set(s)))
            for s in self.sets
        ]


def _require_tu(A: RatMatrix, cap_minors: int) -> None:
    """"""
    if not is_totally_unimodular(A, cap_minors):
        raise NotTotallyUnimodular("matrix is not totally unimodular")


def lead_free_sets_by_bijection(
    A: RatMatrix,
    order: TermOrder = TermOrder.DEGREVLEX,
    cap_ground: int = CAP_GROUND
) -> List[Tuple[int, ...]]:
    """
    Build T_B for every basis B.

    Start from the x and y copies of B; for each e outside B add whichever of
    e_x, e_y is missing from the lead monomial of its fundamental circuit.
    """
    n: int = A.cols
    M: Matroid = Matroid(A, cap_ground)

    result: List[Tuple[int, ...]] = []
    for B in bases(M):
        chosen: Set[int] = set(B) | {b + n for b in B}

        for e in range(n):
            if e in B:
                continue
            circuit: Circuit = circuit_from_support(A, M.fundamental_circuit(B, e))
            lead: FrozenSet[int] = circuit_binomial(circuit).lead_support(order)
            chosen.add(e + n if e in lead else e)

        # B is recovered as the elements with both copies chosen
        recovered: Tuple[int, ...] = tuple(e for e in range(n) if e in chosen and e + n in chosen)
        if recovered != tuple(B):
            raise HypothesisFailed("lead-free-bijection", f"basis {B} recovered as {recovered}")

        result.append(tuple(sorted(chosen)))

    return result


def lead_free_sets_by_search(
    A: RatMatrix,
    order: TermOrder = TermOrder.DEGREVLEX
) -> List[Tuple[int, ...]]:
    """
    Largest subsets of the 2n variables containing no lead support.

    Their complements are the smallest hitting sets of the lead supports,
    found by increasing size.
    """
    universe: int = 2 * A.cols
    edges: List[FrozenSet[int]] = initial_supports(A, order)
    if not edges:
        return [tuple(range(universe))]

    for size in range(1, universe + 1):
        found: List[Tuple[int, ...]] = []
        for hitting in combinations(range(universe), size):
            chosen: Set[int] = set(hitting)
            if all(edge & chosen for edge in edges):
                found.append(tuple(i for i in range(universe) if i not in chosen))
        if found:
            return sorted(found)

    return []


def degree_oracle_lawrence(
    A: RatMatrix,
    order: TermOrder = TermOrder.DEGREVLEX,
    cap_minors: int = CAP_MINORS,
    cap_ground: int = CAP_GROUND
) -> OracleResult:
    """Count maximal lead-free variable sets of the Lawrence ideal two ways"""
    _require_tu(A, cap_minors)

    by_bijection: List[Tuple[int, ...]] = lead_free_sets_by_bijection(A, order, cap_ground)
    by_search: List[Tuple[int, ...]] = lead_free_sets_by_search(A, order)

    edges: List[FrozenSet[int]] = initial_supports(A, order)
    for s in by_bijection:
        chosen: Set[int] = set(s)
        if any(edge <= chosen for edge in edges):
            raise HypothesisFailed("lead-free-bijection", f"set {s} contains a lead monomial")

    return OracleResult(
        bijection=len(set(by_bijection)),
        search=len(by_search),
        sets=by_search,
        names=variable_names(A.cols),
    )


def coordinate_components(A: RatMatrix, order: TermOrder = TermOrder.DEGREVLEX) -> List[Tuple[str, ...]]:
    """Generators of the top-dimensional primes of the initial ideal"""
    result: OracleResult = OracleResult(0, 0, lead_free_sets_by_search(A, order), variable_names(A.cols))
    return result.components()


def degree(A: RatMatrix, cap_minors: int = CAP_MINORS) -> int:
    """Degree of the Lawrence toric variety: the number of bases of M(A)"""
    _require_tu(A, cap_minors)
    return basis_count(Matroid(A))


def odd_circuit(A: RatMatrix) -> Optional[Circuit]:
    """
    An odd circuit of a TU matrix, or None.

    Fundamental circuits of one basis generate the integer kernel of a
    unimodular matrix, so parity of all circuits is decided by them.
    """
    return first_odd_circuit(fundamental_circuits(A))


def mldeg(A: RatMatrix, cap_minors: int = CAP_MINORS) -> int:
    """ML degree of the Lawrence toric variety: T(1, 0) of M(A)"""
    _require_tu(A, cap_minors)

    offending: Optional[Circuit] = odd_circuit(A)
    if offending:
        raise OddCircuitPresent(f"odd circuit {offending.v}", detail=offending)

    return tutte_dc(Matroid(A)).mobius


def is_mldeg_one(A: RatMatrix) -> bool:
    """ML degree one exactly when every circuit has two elements"""
    return has_only_two_circuits(Matroid(A))


def _check_data(n: int, u: Sequence, w: Sequence) -> Tuple[Fraction, ...]:
    """"""
    if len(u) != n or len(w) != n:
        raise DimensionMismatch(f"data of lengths {len(u)}, {len(w)} for {n} columns")
    return tuple(Fraction(a) + Fraction(b) for a, b in zip(u, w))


def _substitute(v: Circuit, s: Sequence[Fraction]) -> SparsePoly:
    """f_v(x, s - x) for any integer circuit"""
    n: int = len(v.v)
    names: Tuple[str, ...] = variable_names(n)[:n]

    def complement(i: int) -> SparsePoly:
        return SparsePoly.constant(s[i], n, names) - SparsePoly.variable(i, n, names)

    first: SparsePoly = SparsePoly.monomial(v.plus, 1, names)
    second: SparsePoly = SparsePoly.monomial(v.minus, 1, names)
    for i in range(n):
        if v.minus[i]:
            first = first * complement(i) ** v.minus[i]
        if v.plus[i]:
            second = second * complement(i) ** v.plus[i]
    return first - second


def expand_g(v: Circuit, u: Sequence, w: Sequence) -> SparsePoly:
    """g_v(x, u, w) = f_v(x, u + w - x)"""
    if not v.is_unit():
        raise NonUnitCircuitEntry(f"circuit {v.v} has entries outside -1, 0, 1")
    return _substitute(v, _check_data(len(v.v), u, w))


def h_formula(v: Circuit, s: Sequence) -> SparsePoly:
    """
    Top-degree part of g_v in closed form.

    Even v: (-1)^|v-| * sum_i v_i s_i x^(supp - i), degree |v| - 1.
    Odd v: 2 (-1)^|v-| x^supp, degree |v|.
    """
    if not v.is_unit():
        raise NonUnitCircuitEntry(f"circuit {v.v} has entries outside -1, 0, 1")

    n: int = len(v.v)
    if len(s) != n:
        raise DimensionMismatch(f"data of length {len(s)} for {n} columns")

    names: Tuple[str, ...] = variable_names(n)[:n]
    sign: int = -1 if sum(v.minus) % 2 else 1
    support: List[int] = list(v.support)
    poly: SparsePoly = SparsePoly(n, None, names)

    if not v.is_even:
        exponent: List[int] = [1 if i in support else 0 for i in range(n)]
        poly.add_term(exponent, 2 * sign)
        return poly

    for i in support:
        exponent = [1 if j in support and j != i else 0 for j in range(n)]
        poly.add_term(exponent, sign * v.v[i] * Fraction(s[i]))
    return poly


@dataclass
class MLSystem:
    """Likelihood equations of a Lawrence toric model for fixed data"""

    polynomials: List[SparsePoly]
    linear_rows: RatMatrix
    rhs: Tuple[Fraction, ...]
    names: Tuple[str, ...]
    u: Tuple[Fraction, ...]
    w: Tuple[Fraction, ...]
    form: SystemForm
    matrix: RatMatrix
    seed: Optional[int] = None

    def linear_polynomials(self) -> List[SparsePoly]:
        """Each linear row as the polynomial row . x - rhs"""
        arity: int = len(self.names)
        result: List[SparsePoly] = []
        for i in range(self.linear_rows.rows):
            poly: SparsePoly = SparsePoly.constant(-self.rhs[i], arity, self.names)
            for j in range(arity):
                coeff: Fraction = self.linear_rows[i, j]
                if coeff:
                    poly = poly + SparsePoly.variable(j, arity, self.names).scale(coeff)
            result.append(poly)
        return result


def build_ml_system(
    A: RatMatrix,
    u: Sequence,
    w: Sequence,
    eliminated: bool = False,
    seed: Optional[int] = None
) -> MLSystem:
    """Binomial form on 2n variables, or the y-eliminated form on n"""
    n: int = A.cols
    s: Tuple[Fraction, ...] = _check_data(n, u, w)
    u = tuple(Fraction(x) for x in u)
    w = tuple(Fraction(x) for x in w)
    Au: Tuple[Fraction, ...] = A.apply(u)
    circs: List[Circuit] = circuits(A)

    if eliminated:
        return MLSystem(
            polynomials=[_substitute(c, s) for c in circs],
            linear_rows=A,
            rhs=Au,
            names=variable_names(n)[:n],
            u=u,
            w=w,
            form=SystemForm.ELIMINATED,
            matrix=A,
            seed=seed,
        )

    identity: RatMatrix = RatMatrix.identity(n)
    linear_rows: RatMatrix = RatMatrix.block([
        [A, RatMatrix.zeros(A.rows, n)],
        [identity, identity],
    ])
    return MLSystem(
        polynomials=[circuit_binomial(c).to_poly() for c in circs],
        linear_rows=linear_rows,
        rhs=Au + s,
        names=variable_names(n),
        u=u,
        w=w,
        form=SystemForm.FULL,
        matrix=A,
        seed=seed,
    )


def emit_system(S: MLSystem, sink: Optional[TextIO] = None) -> str:
    """Plain-text system: header comments, then one polynomial per line"""
    lines: List[str] = [
        "# lawrence-toric likelihood system",
        f"# form: {S.form.value}",
        f"# A: {S.matrix.rows} {S.matrix.cols}",
    ]
    for i in range(S.matrix.rows):
        lines.append("# A: " + " ".join(format_fraction(x) for x in S.matrix.row(i)))
    lines.append("# u: " + " ".join(format_fraction(x) for x in S.u))
    lines.append("# w: " + " ".join(format_fraction(x) for x in S.w))
    if S.seed is not None:
        lines.append(f"# seed: {S.seed}")
    lines.append("# variables: " + " ".join(S.names))

    lines.append(f"# polynomials: {len(S.polynomials)}")
    lines.extend(p.to_text() for p in S.polynomials)

    linear: List[SparsePoly] = S.linear_polynomials()
    lines.append(f"# linear: {len(linear)}")
    lines.extend(p.to_text() for p in linear)

    text: str = "\n".join(lines) + "\n"
    if sink is not None:
        sink.write(text)
    return text


def random_data(n: int, seed: int = 0) -> Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]:
    """Seeded positive rational data u, w with nonzero total"""
    rng: np.random.Generator = np.random.default_rng(seed)

    while True:
        numerators = rng.integers(1, 10, size=(2, n))
        denominators = rng.integers(1, 6, size=(2, n))
        u: Tuple[Fraction, ...] = tuple(
            Fraction(int(a), int(b)) for a, b in zip(numerators[0], denominators[0])
        )
        w: Tuple[Fraction, ...] = tuple(
            Fraction(int(a), int(b)) for a, b in zip(numerators[1], denominators[1])
        )
        if sum(u) + sum(w) != 0:
            return u, w
