"""
Exact rational linear algebra over integer matrices.

Everything here works on Fraction or int values; there is no floating point.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from .base import (
    CAP_MINORS,
    Parity,
    NotIntegerMatrix,
    DimensionMismatch,
    InvalidCircuit,
    MinorCapExceeded,
)


IntVector = Tuple[int, ...]


@dataclass(frozen=True)
class RatMatrix:
    """Row-major exact rational matrix"""

    rows: int
    cols: int
    entries: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        """"""
        if self.rows < 1 or self.cols < 1:
            raise DimensionMismatch(f"matrix must be at least 1x1, got {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, data: Sequence[Sequence]) -> "RatMatrix":
        """Build from a list of rows of ints, Fractions or numeric strings"""
        rows: List[List[Fraction]] = [[Fraction(x) for x in row] for row in data]
        if not rows:
            raise DimensionMismatch("matrix has no rows")

        width: int = len(rows[0])
        for row in rows:
            if len(row) != width:
                raise DimensionMismatch("ragged matrix rows")

        entries: Tuple[Fraction, ...] = tuple(x for row in rows for x in row)
        return cls(len(rows), width, entries)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "RatMatrix":
        """"""
        return cls.from_rows(list(zip(*columns)))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        """"""
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        """"""
        return cls(rows, cols, tuple(Fraction(0) for _ in range(rows * cols)))

    @classmethod
    def block(cls, blocks: Sequence[Sequence["RatMatrix"]]) -> "RatMatrix":
        """Assemble a block matrix; every block row must agree in height"""
        data: List[List[Fraction]] = []
        for block_row in blocks:
            height: int = block_row[0].rows
            for m in block_row:
                if m.rows != height:
                    raise DimensionMismatch("block heights differ")

            for i in range(height):
                line: List[Fraction] = []
                for m in block_row:
                    line.extend(m.row(i))
                data.append(line)
        return cls.from_rows(data)

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        """"""
        i, j = index
        return self.entries[i * self.cols + j]

    @property
    def shape(self) -> Tuple[int, int]:
        """"""
        return (self.rows, self.cols)

    def row(self, i: int) -> Tuple[Fraction, ...]:
        """"""
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Tuple[Fraction, ...]:
        """"""
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> List[List[Fraction]]:
        """"""
        return [list(self.row(i)) for i in range(self.rows)]

    def is_integer(self) -> bool:
        """True when every denominator is 1"""
        return all(x.denominator == 1 for x in self.entries)

    def integer_rows(self) -> List[List[int]]:
        """Integer view of the matrix"""
        if not self.is_integer():
            raise NotIntegerMatrix("matrix has a non-integer entry")
        return [[int(x) for x in self.row(i)] for i in range(self.rows)]

    def transpose(self) -> "RatMatrix":
        """"""
        return RatMatrix.from_columns(self.to_rows())

    def select_columns(self, columns: Sequence[int]) -> "RatMatrix":
        """"""
        return RatMatrix.from_rows([[self[i, j] for j in columns] for i in range(self.rows)])

    def select_rows(self, rows: Sequence[int]) -> "RatMatrix":
        """"""
        return RatMatrix.from_rows([self.row(i) for i in rows])

    def permute(self, row_order: Sequence[int], col_order: Sequence[int]) -> "RatMatrix":
        """Row i of the result is row row_order[i] of self, same for columns"""
        return RatMatrix.from_rows(
            [[self[i, j] for j in col_order] for i in row_order]
        )

    def apply(self, v: Sequence) -> Tuple[Fraction, ...]:
        """Matrix-vector product"""
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} against {self.cols} columns")
        return tuple(
            sum((self[i, j] * v[j] for j in range(self.cols) if v[j]), Fraction(0))
            for i in range(self.rows)
        )

    def __str__(self) -> str:
        """"""
        return "\n".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))


@dataclass(frozen=True, order=True)
class Circuit:
    """Primitive kernel vector of minimal support, first nonzero entry positive"""

    support: Tuple[int, ...] = field(init=False)
    v: IntVector
    parity: Parity = field(init=False, compare=False)

    def __post_init__(self) -> None:
        """"""
        nonzero: List[int] = [x for x in self.v if x]
        if not nonzero:
            raise InvalidCircuit("the zero vector is not a circuit")

        g: int = 0
        for x in nonzero:
            g = gcd(g, abs(x))
        if g != 1 or nonzero[0] < 0:
            raise InvalidCircuit(f"vector {self.v} is not primitive and sign-normalized")

        support: Tuple[int, ...] = tuple(i for i, x in enumerate(self.v) if x)
        parity: Parity = Parity.EVEN if len(support) % 2 == 0 else Parity.ODD
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "parity", parity)

    @classmethod
    def from_vector(cls, vector: Sequence) -> "Circuit":
        """Scale any nonzero rational vector to its normalized primitive form"""
        return cls(primitive_vector(vector, normalize_sign=True))

    @property
    def size(self) -> int:
        """"""
        return len(self.support)

    @property
    def plus(self) -> IntVector:
        """"""
        return tuple(max(x, 0) for x in self.v)

    @property
    def minus(self) -> IntVector:
        """"""
        return tuple(max(-x, 0) for x in self.v)

    @property
    def is_even(self) -> bool:
        """"""
        return self.parity is Parity.EVEN

    def is_unit(self) -> bool:
        """All entries in {-1, 0, 1}"""
        return all(abs(x) <= 1 for x in self.v)


def primitive_vector(vector: Sequence, normalize_sign: bool = False) -> IntVector:
    """Smallest integer multiple of a rational vector with coprime entries"""
    values: List[Fraction] = [Fraction(x) for x in vector]

    denominator: int = 1
    for x in values:
        denominator = denominator * x.denominator // gcd(denominator, x.denominator)

    integers: List[int] = [int(x * denominator) for x in values]
    g: int = 0
    for x in integers:
        g = gcd(g, abs(x))
    if g == 0:
        return tuple(integers)

    integers = [x // g for x in integers]
    if normalize_sign:
        first: int = next(x for x in integers if x)
        if first < 0:
            integers = [-x for x in integers]
    return tuple(integers)


def _scaled_integer_rows(rows: Iterable[Sequence]) -> List[List[int]]:
    """Clear denominators row by row; rank and determinant up to scale survive"""
    result: List[List[int]] = []
    for row in rows:
        values: List[Fraction] = [Fraction(x) for x in row]
        denominator: int = 1
        for x in values:
            denominator = denominator * x.denominator // gcd(denominator, x.denominator)
        result.append([int(x * denominator) for x in values])
    return result


def bareiss_rank(a: List[List[int]]) -> int:
    """Fraction-free elimination rank of an integer matrix"""
    a = [row[:] for row in a]
    m: int = len(a)
    n: int = len(a[0]) if a else 0

    r: int = 0
    previous: int = 1
    for c in range(n):
        pivot: Optional[int] = next((i for i in range(r, m) if a[i][c]), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]

        for i in range(r + 1, m):
            for j in range(c + 1, n):
                a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) // previous
            a[i][c] = 0

        previous = a[r][c]
        r += 1
        if r == m:
            break
    return r


def bareiss_determinant(a: List[List[int]]) -> int:
    """Exact determinant of a square integer matrix"""
    n: int = len(a)
    if n == 0:
        return 1
    a = [row[:] for row in a]

    sign: int = 1
    previous: int = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap: Optional[int] = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign

        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // previous
        previous = a[k][k]

    return sign * a[n - 1][n - 1]


def rank(M: RatMatrix) -> int:
    """Rank over the rationals"""
    return bareiss_rank(_scaled_integer_rows(M.to_rows()))


def determinant(M: RatMatrix) -> Fraction:
    """Exact determinant of a square matrix"""
    if M.rows != M.cols:
        raise DimensionMismatch(f"determinant of a {M.rows}x{M.cols} matrix")

    scale: Fraction = Fraction(1)
    rows: List[List[int]] = []
    for row in M.to_rows():
        denominator: int = 1
        for x in row:
            denominator = denominator * x.denominator // gcd(denominator, x.denominator)
        scale *= denominator
        rows.append([int(x * denominator) for x in row])

    return Fraction(bareiss_determinant(rows)) / scale


def row_reduce(rows: List[List[Fraction]]) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form and pivot columns; zero rows are dropped"""
    a: List[List[Fraction]] = [[Fraction(x) for x in row] for row in rows]
    m: int = len(a)
    n: int = len(a[0]) if a else 0

    pivots: List[int] = []
    r: int = 0
    for c in range(n):
        pivot: Optional[int] = next((i for i in range(r, m) if a[i][c]), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]

        lead: Fraction = a[r][c]
        a[r] = [x / lead for x in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                factor: Fraction = a[i][c]
                a[i] = [x - factor * y for x, y in zip(a[i], a[r])]

        pivots.append(c)
        r += 1
        if r == m:
            break

    return a[:r], pivots


def kernel_basis(M: RatMatrix) -> List[IntVector]:
    """Primitive integer vectors spanning the rational null space"""
    reduced, pivots = row_reduce(M.to_rows())
    pivot_set = set(pivots)

    basis: List[IntVector] = []
    for free in range(M.cols):
        if free in pivot_set:
            continue

        vector: List[Fraction] = [Fraction(0)] * M.cols
        vector[free] = Fraction(1)
        for row, p in zip(reduced, pivots):
            vector[p] = -row[free]
        basis.append(primitive_vector(vector, normalize_sign=True))

    return basis


def balanced_switching(
    vertex_count: int,
    signed_edges: Sequence[Tuple[int, int, int]]
) -> Optional[Dict[int, int]]:
    """
    Vertex signs s with sign(e) = s(u) * s(v) on every edge, or None.

    Edges are (u, v, sign) with 0-based vertices and sign in {+1, -1}.
    """
    graph: nx.MultiGraph = nx.MultiGraph()
    graph.add_nodes_from(range(vertex_count))
    for u, v, sign in signed_edges:
        graph.add_edge(u, v, sign=sign)

    switching: Dict[int, int] = {}
    for component in nx.connected_components(graph):
        root: int = min(component)
        switching[root] = 1
        for u, v in nx.bfs_edges(graph, root):
            sign: int = next(iter(graph.get_edge_data(u, v).values()))["sign"]
            switching[v] = switching[u] * sign

    for u, v, sign in signed_edges:
        if switching[u] * switching[v] != sign:
            return None
    return switching


def _network_signed_edges(a: List[List[int]]) -> Optional[List[Tuple[int, int, int]]]:
    """Read a {0,1,-1} matrix with at most two nonzeros per column as a signed graph"""
    edges: List[Tuple[int, int, int]] = []
    for j in range(len(a[0])):
        support: List[int] = [i for i in range(len(a)) if a[i][j]]
        if len(support) > 2:
            return None
        if len(support) == 2:
            u, v = support
            # Equal signs behave like an undirected edge, which is negative
            sign: int = -1 if a[u][j] == a[v][j] else 1
            edges.append((u, v, sign))
    return edges


def _lawrence_base(a: List[List[int]]) -> Optional[List[List[int]]]:
    """The block A when a is exactly [A 0; 0 A; I I], otherwise None"""
    if not a or len(a[0]) % 2:
        return None
    n: int = len(a[0]) // 2
    if len(a) <= n or (len(a) - n) % 2:
        return None
    d: int = (len(a) - n) // 2

    for i in range(d):
        if any(a[i][n:]) or any(a[d + i][:n]) or a[i][:n] != a[d + i][n:]:
            return None
    for k in range(n):
        expected: List[int] = [1 if j % n == k else 0 for j in range(2 * n)]
        if a[2 * d + k] != expected:
            return None

    return [row[:n] for row in a[:d]]


def _all_minors_unit(a: List[List[int]]) -> bool:
    """Bottom-up Laplace expansion over every square submatrix"""
    d: int = len(a)
    n: int = len(a[0])

    previous: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], int] = {
        ((i,), (j,)): a[i][j] for i in range(d) for j in range(n) if a[i][j]
    }

    for k in range(2, min(d, n) + 1):
        current: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], int] = {}

        for rows in combinations(range(d), k):
            top: int = rows[0]
            rest: Tuple[int, ...] = rows[1:]

            for cols in combinations(range(n), k):
                total: int = 0
                for t, c in enumerate(cols):
                    entry: int = a[top][c]
                    if not entry:
                        continue
                    minor: int = previous.get((rest, cols[:t] + cols[t + 1:]), 0)
                    if minor:
                        total += entry * minor if t % 2 == 0 else -entry * minor

                if total:
                    if total not in (-1, 1):
                        return False
                    current[(rows, cols)] = total

        # Every larger minor expands over these, so all vanish
        if not current:
            return True
        previous = current

    return True


def is_totally_unimodular(
    M: RatMatrix,
    cap_minors: int = CAP_MINORS,
    exhaustive: bool = False
) -> bool:
    """Every square minor lies in {-1, 0, 1}"""
    a: List[List[int]] = M.integer_rows()

    if any(x not in (-1, 0, 1) for row in a for x in row):
        return False

    # A Lawrence lift is TU exactly when its base is
    base: Optional[List[List[int]]] = None if exhaustive else _lawrence_base(a)
    if base:
        return is_totally_unimodular(RatMatrix.from_rows(base), cap_minors)

    # Matrices of signed graphs are TU exactly when the graph is balanced
    for candidate in (() if exhaustive else (a, M.transpose().integer_rows())):
        edges: Optional[List[Tuple[int, int, int]]] = _network_signed_edges(candidate)
        if edges is not None:
            return balanced_switching(len(candidate), edges) is not None

    if M.cols > cap_minors:
        raise MinorCapExceeded(
            f"exhaustive minor test limited to {cap_minors} columns, matrix has {M.cols}"
        )

    return _all_minors_unit(a)


def circuit_from_support(M: RatMatrix, support: Sequence[int]) -> Circuit:
    """The circuit whose support is exactly the given column set"""
    columns: List[int] = sorted(support)
    basis: List[IntVector] = kernel_basis(M.select_columns(columns))
    if len(basis) != 1 or not all(basis[0]):
        raise InvalidCircuit(f"columns {columns} are not a minimal dependent set")

    vector: List[int] = [0] * M.cols
    for j, x in zip(columns, basis[0]):
        vector[j] = x
    return Circuit.from_vector(vector)


def circuits(M: RatMatrix) -> List[Circuit]:
    """All circuits up to sign, sorted by support"""
    integer: List[List[int]] = _scaled_integer_rows(M.to_rows())
    r: int = bareiss_rank(integer)
    columns: List[List[int]] = [list(c) for c in zip(*integer)]

    result: List[Circuit] = []
    for size in range(1, r + 2):
        for subset in combinations(range(M.cols), size):
            sub: List[List[int]] = [list(row) for row in zip(*(columns[j] for j in subset))]
            if bareiss_rank(sub) != size - 1:
                continue

            # Corank one: the kernel is a line, a circuit when it has full support
            line: List[IntVector] = kernel_basis(M.select_columns(subset))
            if not all(line[0]):
                continue

            vector: List[int] = [0] * M.cols
            for j, x in zip(subset, line[0]):
                vector[j] = x
            result.append(Circuit.from_vector(vector))

    result.sort()
    return result


def all_circuits_even(circs: Iterable[Circuit]) -> bool:
    """"""
    return all(c.is_even for c in circs)


def first_odd_circuit(circs: Iterable[Circuit]) -> Optional[Circuit]:
    """"""
    return next((c for c in circs if not c.is_even), None)


def fundamental_circuits(M: RatMatrix) -> List[Circuit]:
    """Circuits of each non-pivot column against the pivot basis of the RREF"""
    reduced, pivots = row_reduce(M.to_rows())
    pivot_set = set(pivots)

    result: List[Circuit] = []
    for j in range(M.cols):
        if j in pivot_set:
            continue

        vector: List[Fraction] = [Fraction(0)] * M.cols
        vector[j] = Fraction(1)
        for row, p in zip(reduced, pivots):
            vector[p] = -row[j]
        result.append(Circuit.from_vector(vector))

    return result
