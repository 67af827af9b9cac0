from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import quivers
from quiver_spectra import counting
from quiver_spectra.families import complete, cycle, koenigsberg, path
from quiver_spectra.quiver import from_edge_list, gradient, kirchhoff
from quiver_spectra.spectral import det_shifted


@pytest.mark.parametrize("q, want", [
    (cycle(4), (16, 4, 45)),
    (koenigsberg(), (80, 20, 156)),
    (complete(3), (9, 3, 16)),
    (from_edge_list(2, [(1, 2), (1, 2)]), (4, 2, 5)),
])
def test_known_counts(q, want):
    fc = counting.count_matrix(q)
    assert (fc.trees_rooted, fc.trees_unrooted, fc.forests_rooted) == want
    assert counting.count_brute_trees(q) == want[0]
    assert counting.count_brute_forests(q) == want[2]
    assert counting.count_deletion_contraction(q) == want[1]


def test_ratio_and_disconnected():
    assert counting.count_matrix(complete(3)).ratio == Fraction(16, 9)
    fc = counting.count_matrix(from_edge_list(3, [(1, 2)]))
    assert fc.trees_rooted == 0 and fc.ratio is None and fc.forests_rooted == 3
    assert counting.count_brute_forests(from_edge_list(3, [(1, 2)])) == fc.forests_rooted


def test_loops_rejected_and_budgets():
    with pytest.raises(ValueError):
        counting.count_matrix(from_edge_list(2, [(1, 1), (1, 2)]))
    with pytest.raises(counting.BudgetExceeded):
        counting.count_brute_forests(complete(7))
    with pytest.raises(counting.BudgetExceeded):
        counting.count_brute_trees(complete(8))


def test_rooted_tree_count_large():
    assert counting.rooted_tree_count(complete(10)) == 10 ** 9
    assert counting.rooted_tree_count(cycle(30)) == 900


def test_leibniz():
    assert counting.det_leibniz([[2, 1], [1, 3]]) == 5
    assert counting.det_leibniz([]) == 1


@settings(max_examples=60)
@given(quivers(max_n=5, max_mult=2, loops=False))
def test_three_routes_agree(q):
    if q.m > counting.FOREST_EDGE_BUDGET:
        return
    fc = counting.count_matrix(q)
    assert counting.count_brute_trees(q) == fc.trees_rooted
    assert counting.count_brute_forests(q) == fc.forests_rooted
    assert counting.count_deletion_contraction(q) * q.n == fc.trees_rooted


matrix_pairs = st.tuples(st.integers(1, 4), st.integers(1, 4)).flatmap(
    lambda s: st.tuples(*[st.lists(st.lists(st.integers(-3, 3), min_size=s[1], max_size=s[1]),
                                   min_size=s[0], max_size=s[0])] * 2))


@settings(max_examples=60)
@given(matrix_pairs)
def test_cauchy_binet_property(pair):
    f, g = pair
    v = counting.cauchy_binet_check(f, g)
    assert v.polynomial_ok and v.pseudo_ok


def test_pythagorean_incidence():
    q = koenigsberg()
    v = counting.pythagorean_check(gradient(q))
    assert v.rhs[q.n - 1] == 80 and sum(v.rhs) == det_shifted(kirchhoff(q), 1)
    assert v.pseudo_order == 3 and v.rank == 3


def test_cauchy_binet_rejects():
    with pytest.raises(ValueError):
        counting.cauchy_binet_check([[1, 2]], [[1], [2]])
    with pytest.raises(counting.BudgetExceeded):
        counting.cauchy_binet_check(np.ones((6, 2), int), np.ones((6, 2), int))


def test_ratio_series():
    comp = counting.tree_forest_ratio_series("complete", 8)
    assert all(tau == Fraction(n + 1, n) ** (n - 1) for n, tau, _ in comp)
    cyc = counting.tree_forest_ratio_series("cycle", 10)
    taus = [tau for _, tau, _ in cyc]
    assert all(b > a for a, b in zip(taus, taus[1:]))
    with pytest.raises(counting.BudgetExceeded):
        counting.tree_forest_ratio_series("complete", 15)
    with pytest.raises(ValueError):
        counting.tree_forest_ratio_series("wheel", 5)


def test_cycle_forests():
    f = counting.cycle_forest_counts(8)
    assert f == {2: 5, 3: 16, 4: 45, 5: 121, 6: 320, 7: 841, 8: 2205}
    assert all(f[n + 1] == 3 * f[n] - f[n - 1] + 2 for n in range(3, 8))
    assert counting.count_matrix(path(3)).forests_rooted == 8
