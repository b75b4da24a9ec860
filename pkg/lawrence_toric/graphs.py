from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

import networkx as nx

from .base import (
    CAP_CYCLES,
    GraphKind,
    GraphError,
    GraphTooLarge,
    HypothesisFailed,
    TaxonomyClass,
)
from .exactlin import RatMatrix, balanced_switching, determinant, rank
from .matroid import Matroid, bases, basis_count, external_activity, tutte_dc


Edge = Tuple[int, int]


def _check_edges(vertex_count: int, edges: Sequence[Edge]) -> None:
    """"""
    for u, v in edges:
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise GraphError(f"edge ({u + 1}, {v + 1}) outside {vertex_count} vertices")
        if u == v:
            raise GraphError(f"loop at vertex {u + 1} is not supported")


@dataclass(frozen=True)
class Graph:
    """Undirected multigraph on vertices 0..vertex_count-1"""

    vertex_count: int
    edges: Tuple[Edge, ...]
    labels: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        """"""
        edges: Tuple[Edge, ...] = tuple((int(u), int(v)) for u, v in self.edges)
        _check_edges(self.vertex_count, edges)
        object.__setattr__(self, "edges", edges)

        labels: Tuple[str, ...] = tuple(self.labels) or tuple(
            f"{min(u, v) + 1}{max(u, v) + 1}" for u, v in edges
        )
        if len(labels) != len(edges):
            raise GraphError(f"{len(labels)} labels for {len(edges)} edges")
        object.__setattr__(self, "labels", labels)

    @property
    def edge_count(self) -> int:
        """"""
        return len(self.edges)

    def to_networkx(self) -> nx.MultiGraph:
        """Multigraph keyed by edge index"""
        graph: nx.MultiGraph = nx.MultiGraph()
        graph.add_nodes_from(range(self.vertex_count))
        for index, (u, v) in enumerate(self.edges):
            graph.add_edge(u, v, key=index)
        return graph


@dataclass(frozen=True)
class DiGraph:
    """Directed graph; arc (u, v) leaves u"""

    vertex_count: int
    arcs: Tuple[Edge, ...]

    def __post_init__(self) -> None:
        """"""
        arcs: Tuple[Edge, ...] = tuple((int(u), int(v)) for u, v in self.arcs)
        _check_edges(self.vertex_count, arcs)
        object.__setattr__(self, "arcs", arcs)

    def underlying(self) -> Graph:
        """"""
        return Graph(self.vertex_count, self.arcs)


@dataclass(frozen=True)
class SignedGraph:
    """Graph with a sign +1 or -1 on every edge"""

    graph: Graph
    signs: Tuple[int, ...]

    def __post_init__(self) -> None:
        """"""
        signs: Tuple[int, ...] = tuple(int(s) for s in self.signs)
        if len(signs) != self.graph.edge_count:
            raise GraphError(f"{len(signs)} signs for {self.graph.edge_count} edges")
        if any(s not in (-1, 1) for s in signs):
            raise GraphError("edge signs must be +1 or -1")
        object.__setattr__(self, "signs", signs)

    def underlying(self) -> Graph:
        """"""
        return self.graph


AnyGraph = Union[Graph, DiGraph, SignedGraph]


def cycle_graph(n: int) -> Graph:
    """"""
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def complete_bipartite(m1: int, m2: int) -> Graph:
    """K(m1, m2): left vertices first, edges ij in row-major order"""
    edges: List[Edge] = []
    labels: List[str] = []
    for i in range(m1):
        for j in range(m2):
            edges.append((i, m1 + j))
            labels.append(f"{i + 1}{j + 1}")
    return Graph(m1 + m2, tuple(edges), tuple(labels))


def disjoint_union(G: Graph, H: Graph) -> Graph:
    """"""
    shift: int = G.vertex_count
    edges: Tuple[Edge, ...] = G.edges + tuple((u + shift, v + shift) for u, v in H.edges)
    return Graph(G.vertex_count + H.vertex_count, edges)


def orient(G: Graph) -> DiGraph:
    """Arc from the smaller endpoint to the larger"""
    return DiGraph(G.vertex_count, tuple((min(u, v), max(u, v)) for u, v in G.edges))


def incidence(G: Graph) -> RatMatrix:
    """Vertex-edge 0/1 matrix"""
    data: List[List[int]] = [[0] * G.edge_count for _ in range(G.vertex_count)]
    for e, (u, v) in enumerate(G.edges):
        data[u][e] = 1
        data[v][e] = 1
    return RatMatrix.from_rows(data)


def incidence_directed(D: DiGraph) -> RatMatrix:
    """+1 at the tail, -1 at the head"""
    data: List[List[int]] = [[0] * len(D.arcs) for _ in range(D.vertex_count)]
    for e, (u, v) in enumerate(D.arcs):
        data[u][e] = 1
        data[v][e] = -1
    return RatMatrix.from_rows(data)


def incidence_signed(S: SignedGraph) -> RatMatrix:
    """Smaller endpoint +1; the other agrees for negative edges and flips for positive"""
    G: Graph = S.graph
    data: List[List[int]] = [[0] * G.edge_count for _ in range(G.vertex_count)]
    for e, (u, v) in enumerate(G.edges):
        first, second = min(u, v), max(u, v)
        data[first][e] = 1
        data[second][e] = 1 if S.signs[e] < 0 else -1
    return RatMatrix.from_rows(data)


@dataclass
class BipartiteResult:
    """Bipartite verdict with a 2-colouring or an odd cycle as witness"""

    bipartite: bool
    coloring: Optional[Dict[int, int]] = None
    odd_cycle: Optional[List[int]] = None

    def __bool__(self) -> bool:
        """"""
        return self.bipartite


def _tree_path(parent: Dict[int, Optional[int]], v: int) -> List[int]:
    """Vertices from v up to its BFS root"""
    path: List[int] = [v]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path


def is_bipartite(G: Graph) -> BipartiteResult:
    """BFS colouring; a monochromatic edge closes an odd cycle in the BFS tree"""
    graph: nx.MultiGraph = G.to_networkx()
    color: Dict[int, int] = {}
    parent: Dict[int, Optional[int]] = {}

    for component in nx.connected_components(graph):
        root: int = min(component)
        color[root] = 0
        parent[root] = None
        for u, v in nx.bfs_edges(graph, root):
            color[v] = 1 - color[u]
            parent[v] = u

    for u, v in G.edges:
        if color[u] != color[v]:
            continue

        up: List[int] = _tree_path(parent, u)
        vp: List[int] = _tree_path(parent, v)
        common = set(up) & set(vp)
        lca: int = next(x for x in up if x in common)
        cycle: List[int] = up[:up.index(lca) + 1] + list(reversed(vp[:vp.index(lca)]))
        return BipartiteResult(False, None, cycle)

    return BipartiteResult(True, color, None)


def balancing_switch(S: SignedGraph) -> Optional[Dict[int, int]]:
    """A switching that makes every edge positive, or None"""
    G: Graph = S.graph
    edges: List[Tuple[int, int, int]] = [
        (u, v, s) for (u, v), s in zip(G.edges, S.signs)
    ]
    return balanced_switching(G.vertex_count, edges)


def is_balanced(S: SignedGraph) -> bool:
    """Every cycle has positive sign product"""
    return balancing_switch(S) is not None


def switch(S: SignedGraph, sigma: Union[Sequence[int], Dict[int, int]]) -> SignedGraph:
    """Edge signs become sigma(u) * sign(e) * sigma(v)"""
    if len(sigma) != S.graph.vertex_count:
        raise GraphError(f"switching has {len(sigma)} values for {S.graph.vertex_count} vertices")

    signs: Tuple[int, ...] = tuple(
        sigma[u] * s * sigma[v] for (u, v), s in zip(S.graph.edges, S.signs)
    )
    return SignedGraph(S.graph, signs)


@dataclass(frozen=True)
class Cycle:
    """"""

    edges: FrozenSet[int]
    vertices: FrozenSet[int]

    @property
    def is_even(self) -> bool:
        """"""
        return len(self.edges) % 2 == 0


def enumerate_cycles(G: Graph, cap_cycles: int = CAP_CYCLES) -> List[Cycle]:
    """Every cycle once, found from its smallest edge index"""
    result: List[Cycle] = []

    for first, (s, t) in enumerate(G.edges):
        later: nx.MultiGraph = nx.MultiGraph()
        later.add_nodes_from(range(G.vertex_count))
        for index in range(first + 1, G.edge_count):
            u, v = G.edges[index]
            later.add_edge(u, v, key=index)

        for path in nx.all_simple_edge_paths(later, t, s):
            edges: FrozenSet[int] = frozenset([first] + [k for _, _, k in path])
            vertices: FrozenSet[int] = frozenset([s] + [v for _, v, _ in path])
            result.append(Cycle(edges, vertices))

            if len(result) > cap_cycles:
                raise GraphTooLarge(f"more than {cap_cycles} cycles")

    return result


@dataclass(frozen=True, order=True)
class TaxonomyEntry:
    """Edge support of a circuit of the incidence matrix, tagged by shape"""

    edges: Tuple[int, ...]
    kind: TaxonomyClass = field(compare=False)


def _joining_paths(G: Graph, first: Cycle, second: Cycle) -> List[FrozenSet[int]]:
    """Paths from one cycle to the other meeting them only at the ends"""
    blocked: FrozenSet[int] = first.vertices | second.vertices
    result: List[FrozenSet[int]] = []

    for a in sorted(first.vertices):
        for b in sorted(second.vertices):
            allowed: FrozenSet[int] = (frozenset(range(G.vertex_count)) - blocked) | {a, b}
            graph: nx.MultiGraph = nx.MultiGraph()
            graph.add_nodes_from(allowed)
            for index, (u, v) in enumerate(G.edges):
                if u in allowed and v in allowed:
                    graph.add_edge(u, v, key=index)

            for path in nx.all_simple_edge_paths(graph, a, b):
                result.append(frozenset(k for _, _, k in path))

    return result


def circuit_taxonomy(G: Graph, cap_cycles: int = CAP_CYCLES) -> List[TaxonomyEntry]:
    """
    Supports of the circuits of the incidence matrix of G by structure:
    even cycles, pairs of odd cycles sharing exactly one vertex, and pairs of
    vertex-disjoint odd cycles joined by a path.
    """
    cycles: List[Cycle] = enumerate_cycles(G, cap_cycles)
    entries: List[TaxonomyEntry] = []

    for cycle in cycles:
        if cycle.is_even:
            entries.append(TaxonomyEntry(tuple(sorted(cycle.edges)), TaxonomyClass.EVEN_CYCLE))

    odd: List[Cycle] = [c for c in cycles if not c.is_even]
    for i, first in enumerate(odd):
        for second in odd[i + 1:]:
            shared: FrozenSet[int] = first.vertices & second.vertices
            union: FrozenSet[int] = first.edges | second.edges

            if len(shared) == 1:
                entries.append(TaxonomyEntry(tuple(sorted(union)), TaxonomyClass.SHARED_VERTEX))
            elif not shared:
                for path in _joining_paths(G, first, second):
                    entries.append(TaxonomyEntry(tuple(sorted(union | path)), TaxonomyClass.JOINED_BY_PATH))

    entries.sort()
    return entries


def spanning_forest_count(G: Graph) -> int:
    """Matrix-tree theorem on each connected component"""
    graph: nx.MultiGraph = G.to_networkx()

    total: int = 1
    for component in nx.connected_components(graph):
        vertices: List[int] = sorted(component)
        if len(vertices) == 1:
            continue

        index: Dict[int, int] = {v: k for k, v in enumerate(vertices)}
        size: int = len(vertices)
        laplacian: List[List[int]] = [[0] * size for _ in range(size)]
        for u, v in G.edges:
            if u not in index:
                continue
            i, j = index[u], index[v]
            laplacian[i][i] += 1
            laplacian[j][j] += 1
            laplacian[i][j] -= 1
            laplacian[j][i] -= 1

        # Delete the first row and column
        reduced: List[List[int]] = [row[1:] for row in laplacian[1:]]
        total *= int(determinant(RatMatrix.from_rows(reduced)))

    return total


def edge_order(G: Graph, name: str = "lex") -> List[int]:
    """
    Edge indices from smallest to largest.

    natural: file order; lex: by (min endpoint, max endpoint, index);
    example45: the reverse of lex, where (i, j) > (k, l) if i < k, or i = k
    and j < l.
    """
    if name == "natural":
        return list(range(G.edge_count))

    lex: List[int] = sorted(
        range(G.edge_count),
        key=lambda e: (min(G.edges[e]), max(G.edges[e]), e)
    )
    if name == "lex":
        return lex
    if name == "example45":
        return list(reversed(lex))
    raise GraphError(f"unknown edge order {name}")


def spanning_trees_zero_activity(G: Graph, order: Optional[Sequence[int]] = None) -> List[Tuple[int, ...]]:
    """Spanning forests with external activity zero in the graphic matroid"""
    M: Matroid = Matroid(incidence_directed(orient(G)))
    return [b for b in bases(M) if external_activity(M, b, order) == 0]


@dataclass
class GraphReport:
    """Degree and ML degree of the Lawrence lift of an incidence matrix"""

    kind: GraphKind
    degree: Optional[int]
    mldeg: Optional[int] = None
    reason: Optional[str] = None

    def to_dict(self) -> dict:
        """"""
        return {
            "kind": self.kind.value,
            "degree": self.degree,
            "mldeg": self.mldeg,
            "reason": self.reason,
        }


def graph_degree_mldeg(G: AnyGraph) -> GraphReport:
    """Degree and ML degree through the matroid of the incidence matrix"""
    if isinstance(G, DiGraph):
        kind: GraphKind = GraphKind.DIRECTED
        matrix: RatMatrix = incidence_directed(G)
    elif isinstance(G, SignedGraph):
        kind = GraphKind.SIGNED
        if not is_balanced(G):
            raise HypothesisFailed("balanced", "signed graph is not balanced")
        matrix = incidence_signed(G)
    else:
        kind = GraphKind.UNDIRECTED
        matrix = incidence(G)

    bipartite: bool = bool(is_bipartite(G.underlying() if not isinstance(G, Graph) else G))

    if kind is GraphKind.UNDIRECTED and not bipartite:
        # Without circuits the lift is the whole space
        if rank(matrix) == matrix.cols:
            return GraphReport(kind, 1, None, "not-bipartite")
        raise HypothesisFailed("bipartite", "incidence matrix of a non-bipartite graph is not unimodular")

    M: Matroid = Matroid(matrix)
    degree: int = basis_count(M)
    if not bipartite:
        return GraphReport(kind, degree, None, "not-bipartite")

    return GraphReport(kind, degree, tutte_dc(M).mobius, None)


def graph_matrix(G: AnyGraph) -> RatMatrix:
    """Incidence matrix of the matching kind"""
    if isinstance(G, DiGraph):
        return incidence_directed(G)
    if isinstance(G, SignedGraph):
        return incidence_signed(G)
    return incidence(G)
