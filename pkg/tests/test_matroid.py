import pytest

from lawrence_toric.base import GroundSetTooLarge, NotABasis
from lawrence_toric.exactlin import RatMatrix
from lawrence_toric.graphs import complete_bipartite, cycle_graph, incidence
from lawrence_toric.matroid import (
    Matroid,
    TuttePoly,
    bases,
    basis_count,
    external_activity,
    has_only_two_circuits,
    has_only_two_circuits_by_enumeration,
    internal_activity,
    mobius_count,
    tutte_activity,
    tutte_census,
    tutte_dc,
    tutte_dc_cache_clear,
)


DIAMOND = TuttePoly({(3, 0): 1, (2, 0): 2, (1, 0): 1, (1, 1): 2, (0, 1): 1, (0, 2): 1})


def test_tutte_poly_arithmetic():
    x = TuttePoly.monomial(1, 0)
    y = TuttePoly.monomial(0, 1)
    assert (x + y) * x == TuttePoly({(2, 0): 1, (1, 1): 1})
    assert TuttePoly.one().shift(2, 1) == TuttePoly.monomial(2, 1)
    assert (x + y).evaluate(1, 0) == 1
    assert TuttePoly.one().evaluate(0, 0) == 1


def test_tutte_poly_json():
    assert DIAMOND.to_json()["coeffs"][0] == [0, 1, 1]
    assert TuttePoly.from_json(DIAMOND.to_json()) == DIAMOND


def test_tutte_poly_dataframe():
    df = DIAMOND.as_dataframe()
    assert df.shape == (4, 3)
    assert df.loc[2, 0] == 2
    assert df.loc[1, 1] == 2
    assert TuttePoly().as_dataframe().empty


def test_bases_of_example(example_matrix):
    M = Matroid(example_matrix)
    assert M.rank == 3
    assert bases(M) == [
        (0, 1, 2), (0, 1, 3), (0, 2, 3), (0, 2, 4),
        (0, 3, 4), (1, 2, 3), (1, 2, 4), (1, 3, 4),
    ]
    assert basis_count(M) == 8
    assert M.is_basis((2, 1, 0))
    assert not M.is_basis((0, 1, 4))


def test_fundamental_sets(example_matrix):
    M = Matroid(example_matrix)
    assert M.fundamental_circuit((0, 1, 2), 3) == (0, 1, 2, 3)
    assert M.fundamental_circuit((0, 1, 2), 4) == (0, 1, 4)
    assert M.fundamental_cocircuit((0, 1, 2), 2) == (2, 3)


def test_activities(example_matrix):
    M = Matroid(example_matrix)
    assert external_activity(M, (0, 1, 2)) == 0
    assert internal_activity(M, (0, 1, 2)) == 3

    with pytest.raises(NotABasis):
        external_activity(M, (0, 1, 4))


def test_tutte_of_example(example_matrix):
    M = Matroid(example_matrix)
    assert tutte_census(M) == DIAMOND
    assert tutte_activity(M) == DIAMOND
    assert tutte_dc(M) == DIAMOND
    assert DIAMOND.bases_count == 8
    assert DIAMOND.mobius == 4


def test_activity_polynomial_is_order_free(example_matrix):
    M = Matroid(example_matrix)
    for order in ([4, 3, 2, 1, 0], [2, 0, 4, 1, 3]):
        assert tutte_activity(M, order) == DIAMOND
        assert mobius_count(M, order) == 4


@pytest.mark.parametrize("m1, m2, bases_count, mobius", [(2, 2, 4, 3), (2, 3, 12, 7), (3, 3, 81, 31)])
def test_three_methods_agree(m1, m2, bases_count, mobius):
    M = Matroid(incidence(complete_bipartite(m1, m2)))
    T = tutte_dc(M)
    assert (T.bases_count, T.mobius) == (bases_count, mobius)
    assert tutte_activity(M) == T
    if m1 * m2 <= 9:
        assert tutte_census(M) == T


@pytest.mark.slow
@pytest.mark.parametrize("m1, m2, bases_count, mobius", [(4, 4, 4096, 675), (5, 5, 390625, 25231)])
def test_deletion_contraction_on_large_bipartite_graphs(m1, m2, bases_count, mobius):
    T = tutte_dc(Matroid(incidence(complete_bipartite(m1, m2))))
    assert (T.bases_count, T.mobius) == (bases_count, mobius)


def test_mobius_never_exceeds_bases():
    for n in range(3, 8):
        T = tutte_dc(Matroid(incidence(cycle_graph(n))))
        assert 0 <= T.mobius <= T.bases_count


def test_cycle_tutte():
    T = tutte_dc(Matroid(incidence(cycle_graph(6))))
    assert T == TuttePoly({(5, 0): 1, (4, 0): 1, (3, 0): 1, (2, 0): 1, (1, 0): 1, (0, 1): 1})


def test_dc_memo_can_be_cleared():
    M = Matroid(incidence(complete_bipartite(2, 3)))
    first = tutte_dc(M)
    tutte_dc_cache_clear()
    assert tutte_dc(M) == first


def test_basis_count_without_enumeration():
    # 30 columns, over the enumeration cap
    M = Matroid(incidence(complete_bipartite(5, 6)))
    assert basis_count(M) == 5 ** 5 * 6 ** 4

    with pytest.raises(GroundSetTooLarge):
        bases(M)


def test_two_element_circuits():
    parallel = Matroid(RatMatrix.from_rows([[1, 1, 0], [0, 0, 1]]))
    assert has_only_two_circuits(parallel)
    assert has_only_two_circuits_by_enumeration(parallel)

    forest = Matroid(incidence(complete_bipartite(1, 3)))
    assert has_only_two_circuits(forest)
    assert has_only_two_circuits_by_enumeration(forest)

    square = Matroid(incidence(cycle_graph(4)))
    assert not has_only_two_circuits(square)
    assert not has_only_two_circuits_by_enumeration(square)


def test_loop_breaks_two_element_circuits():
    assert not has_only_two_circuits(Matroid(RatMatrix.from_rows([[1, 0], [0, 0]])))
