import pytest

from lawrence_toric.base import ComplexError, DimensionMismatch
from lawrence_toric.graphs import complete_bipartite, incidence
from lawrence_toric.matroid import Matroid, basis_count
from lawrence_toric.model import (
    ROW_FORMULAS,
    ModelValues,
    SimplicialComplex,
    closed_degree_K,
    closed_mldeg_K,
    closed_mldeg_K_stirling,
    complete_bipartite_incidence,
    compose_permutations,
    disjoint_binary_degree,
    hierarchical_matrix,
    lawrence_complex,
    lawrence_lift_permutation,
    lift_permutation,
    no_three_way_matrix,
    no_three_way_permutation,
    quasi_independence_matrix,
    row_mldeg_K,
    simplex_boundary_base,
    simplex_boundary_complex,
    simplex_boundary_permutation,
    simplex_boundary_values,
    two_facet_formulas,
    two_facet_graph_matrix,
)
from lawrence_toric.toric import degree, lawrence_lift, mldeg


PATH = SimplicialComplex(3, ((1, 2), (2, 3)))


def test_complex_validation():
    assert SimplicialComplex(3, ((2, 1), (3, 2))).facets == ((1, 2), (2, 3))

    with pytest.raises(ComplexError):
        SimplicialComplex(3, ((1, 2), (1,)))
    with pytest.raises(ComplexError):
        SimplicialComplex(2, ((1, 3),))


def test_lawrence_complex():
    assert lawrence_complex(PATH) == SimplicialComplex(4, ((1, 2, 3), (1, 2, 4), (2, 3, 4)))


def test_complete_bipartite_incidence():
    assert complete_bipartite_incidence(2, 3) == incidence(complete_bipartite(2, 3))


def test_two_facet_matrix():
    A = hierarchical_matrix(PATH, (3, 2, 2))
    assert A.shape == (10, 12)
    # Cell (1, 1, 1) meets marginals (1, 1) of {1,2} and (1, 1) of {2,3}
    assert A.column(0) == (1, 0, 0, 0, 0, 0, 1, 0, 0, 0)
    assert all(sum(A.column(j)) == 2 for j in range(A.cols))

    with pytest.raises(DimensionMismatch):
        hierarchical_matrix(PATH, (3, 2))


def test_independence_complex_is_complete_bipartite():
    independence = SimplicialComplex(2, ((1,), (2,)))
    assert hierarchical_matrix(independence, (2, 3)) == complete_bipartite_incidence(2, 3)


def test_two_facet_values():
    values = two_facet_formulas(PATH, (3, 2, 2))
    assert values.to_dict() == {"degree": 144, "mldeg": 49, "verified": False}

    A = hierarchical_matrix(PATH, (3, 2, 2))
    assert (degree(A), mldeg(A)) == (144, 49)
    assert basis_count(Matroid(two_facet_graph_matrix(PATH, (3, 2, 2)))) == 144

    with pytest.raises(ComplexError):
        two_facet_formulas(SimplicialComplex(3, ((1,), (2,), (3,))), (2, 2, 2))


def test_disjoint_binary_degree():
    assert disjoint_binary_degree(1, 1) == closed_degree_K(2, 2)
    assert disjoint_binary_degree(1, 2) == closed_degree_K(2, 4) == 32
    assert disjoint_binary_degree(2, 2) == closed_degree_K(4, 4)


@pytest.mark.parametrize(
    "m1, m2, expected",
    [
        (2, 2, (4, 3)),
        (2, 3, (12, 7)),
        (3, 3, (81, 31)),
        (4, 4, (4096, 675)),
        (5, 5, (390625, 25231)),
        (6, 6, (60466176, 1441923)),
    ],
)
def test_closed_formulas(m1, m2, expected):
    assert (closed_degree_K(m1, m2), closed_mldeg_K(m1, m2)) == expected
    assert closed_mldeg_K_stirling(m1, m2) == expected[1]
    assert closed_mldeg_K(m2, m1) == expected[1]


def test_row_formulas():
    for k in ROW_FORMULAS:
        for m in range(1, 8):
            assert row_mldeg_K(m, k) == closed_mldeg_K(m, k)

    with pytest.raises(DimensionMismatch):
        row_mldeg_K(3, 6)


@pytest.mark.parametrize("m1, m2", [(2, 2), (2, 3), (3, 3)])
def test_closed_formulas_match_pipeline(m1, m2):
    A = complete_bipartite_incidence(m1, m2)
    assert (degree(A), mldeg(A)) == (closed_degree_K(m1, m2), closed_mldeg_K(m1, m2))


@pytest.mark.slow
def test_closed_formulas_match_pipeline_k44():
    A = complete_bipartite_incidence(4, 4)
    assert (degree(A), mldeg(A)) == (4096, 675)


@pytest.mark.parametrize("m1, m2", [(1, 2), (2, 3), (3, 3)])
def test_no_three_way_is_a_lift(m1, m2):
    model = no_three_way_matrix(m1, m2, 2)
    assert model.shape == (m1 * m2 + 2 * m2 + 2 * m1, 2 * m1 * m2)
    assert model.permute(*no_three_way_permutation(m1, m2)) == lawrence_lift(complete_bipartite_incidence(m1, m2))


def test_hierarchical_lift_permutation():
    lifted = hierarchical_matrix(lawrence_complex(PATH), (3, 2, 2, 2))
    base = hierarchical_matrix(PATH, (3, 2, 2))
    assert lifted.permute(*lawrence_lift_permutation(PATH, (3, 2, 2))) == lawrence_lift(base)


def test_lift_and_compose_permutations(example_matrix):
    first = ([2, 0, 3, 1], [4, 2, 0, 1, 3])
    second = ([1, 0, 3, 2], [0, 4, 3, 2, 1])

    permuted = example_matrix.permute(*first)
    assert lawrence_lift(permuted) == lawrence_lift(example_matrix).permute(
        *lift_permutation(first, example_matrix.shape)
    )
    assert permuted.permute(*second) == example_matrix.permute(*compose_permutations(first, second))


def test_quasi_independence_matrix():
    base = complete_bipartite_incidence(3, 3)
    cycle = quasi_independence_matrix(base, [0, 4, 8])
    assert cycle.shape == (6, 6)
    assert (degree(cycle), mldeg(cycle)) == (6, 5)

    with pytest.raises(DimensionMismatch):
        quasi_independence_matrix(base, [9])
    with pytest.raises(DimensionMismatch):
        quasi_independence_matrix(base, range(9))


def test_simplex_boundary_complex():
    assert simplex_boundary_complex(2).facets == ((1, 2), (1, 3), (2, 3))
    assert len(simplex_boundary_complex(3).facets) == 4
    assert all(len(f) == 3 for f in simplex_boundary_complex(3).facets)

    with pytest.raises(DimensionMismatch):
        simplex_boundary_complex(1)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_simplex_boundary_is_iterated_lift(n):
    model = hierarchical_matrix(simplex_boundary_complex(n), (2,) * (n + 1))
    base = simplex_boundary_base(n)
    assert base.cols == 2 ** n
    assert model.permute(*simplex_boundary_permutation(n)) == lawrence_lift(base)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_simplex_boundary_values(n):
    values = simplex_boundary_values(n)
    assert (values.degree, values.mldeg) == (2 ** n, 2 ** n - 1)
    assert values.verified


def test_simplex_boundary_values_beyond_check():
    assert simplex_boundary_values(5, verify_up_to=4) == ModelValues(32, 31, False)
