import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import quivers
from quiver_spectra.families import (
    GRADIENT_EXAMPLE_ORIENTATION,
    builtin,
    complete_bipartite,
    cycle,
    good_will_hunting,
    gradient_example,
    koenigsberg,
    path,
    petersen,
    star,
    wheel,
)
from quiver_spectra.quiver import (
    Quiver,
    adjacency,
    classify,
    delete_vertex,
    from_edge_list,
    gradient,
    jacobi_quiver,
    kirchhoff,
    principal_submatrix,
)
from quiver_spectra.spectral import eigenvalues_sym


def spec(q):
    return eigenvalues_sym(kirchhoff(q)).values


def test_from_edge_list_merges_and_counts():
    q = from_edge_list(3, [(2, 1), (1, 2), (3, 3)])
    assert q.edges == {(1, 2): 2, (3, 3): 1}
    assert q.m == 3
    assert q.degrees() == [2, 2, 1]


@pytest.mark.parametrize("n, pairs", [(0, []), (2, [(1, 3)]), (2, [(0, 1)])])
def test_from_edge_list_rejects(n, pairs):
    with pytest.raises(ValueError):
        from_edge_list(n, pairs)


def test_koenigsberg_matrix_and_degrees():
    q = koenigsberg()
    assert kirchhoff(q).tolist() == [[4, -2, 0, -2], [-2, 4, -1, -1], [0, -1, 2, -1], [-2, -1, -1, 4]]
    assert q.degree_sequence() == [2, 4, 4, 4]
    c = classify(q)
    assert c.is_multigraph and c.has_multiple_connections and not c.is_simple


def test_single_loop_vertex():
    q = from_edge_list(1, [(1, 1)])
    assert q.degree_sequence() == [1]
    assert kirchhoff(q).tolist() == [[1]]
    assert gradient(q).tolist() == [[1]]
    assert kirchhoff(from_edge_list(1, [(1, 1)] * 4)).tolist() == [[4]]


def test_gradient_example_matrix():
    q = gradient_example()
    assert q.m == 8
    assert kirchhoff(q).tolist() == [[6, -4, 0], [-4, 6, -1], [0, -1, 1]]
    f = gradient(q, GRADIENT_EXAMPLE_ORIENTATION)
    assert f.shape == (8, 3)
    assert (f.T @ f).tolist() == kirchhoff(q).tolist()


def test_gradient_rejects_wrong_orientation():
    q = path(3)
    with pytest.raises(ValueError):
        gradient(q, [(1, 2)])
    with pytest.raises(ValueError):
        gradient(q, [(1, 2), (1, 3)])


def test_delete_vertex_examples():
    r = delete_vertex(good_will_hunting(), 2)
    assert r == from_edge_list(3, [(1, 3), (1, 1), (3, 3), (2, 2), (2, 2)])
    assert np.allclose(spec(r), [1, 2, 3])
    assert np.allclose(spec(delete_vertex(koenigsberg(), 1)), [1, 4, 5])
    single = delete_vertex(path(2), 2)
    assert kirchhoff(single).tolist() == [[1]]
    with pytest.raises(ValueError):
        delete_vertex(from_edge_list(1, []), 1)


def test_classify_double_edge():
    q = from_edge_list(2, [(1, 2), (1, 2)])
    assert classify(q).has_multiple_connections
    assert np.allclose(spec(q), [0, 4])
    assert classify(cycle(4)).is_simple


def test_jacobi_quiver():
    assert np.allclose(spec(jacobi_quiver([1, 1, 1, 1], [0, 0, 0, 0])), [0, 2, 2, 4])
    assert np.allclose(spec(jacobi_quiver([1, 1, 1], [1, 1, 1])), spec(cycle(3)) + 1)
    assert np.allclose(spec(jacobi_quiver([2, 0, 0], [0, 0, 0])), [0, 0, 4])


def test_family_spectra():
    assert np.allclose(spec(star(10)), [0] + [1] * 8 + [10])
    assert np.allclose(spec(complete_bipartite(2, 3)), [0, 2, 2, 3, 5])
    assert np.allclose(spec(petersen()), [0] + [2] * 5 + [5] * 4)
    assert wheel(5).degree_sequence() == [3, 3, 3, 3, 4]


def test_builtin_parser():
    assert builtin("cycle:5") == cycle(5)
    assert builtin("bipartite:2,3") == complete_bipartite(2, 3)
    assert builtin("random:6,0.5,3") == builtin("random:6,0.5,3")
    for bad in ("cycle", "nope:3", "bipartite:2", "petersen:3"):
        with pytest.raises(ValueError):
            builtin(bad)


@given(quivers())
def test_kirchhoff_structure(q):
    k = kirchhoff(q)
    assert np.array_equal(k, k.T)
    assert np.trace(k) == sum(q.degree_sequence())
    off = k - np.diag(np.diag(k))
    assert np.all(off <= 0)
    rows = k.sum(axis=1)
    for v in range(1, q.n + 1):
        assert rows[v - 1] == q.loops(v)
    assert np.all(np.diag(adjacency(q)) == 0)


@given(quivers(), st.data())
def test_delete_vertex_is_principal_submatrix(q, data):
    if q.n < 2:
        return
    v = data.draw(st.integers(1, q.n))
    r = delete_vertex(q, v)
    assert np.array_equal(kirchhoff(r), principal_submatrix(kirchhoff(q), v))
    if not classify(q).has_multiple_connections:
        assert not classify(r).has_multiple_connections


@given(quivers(), st.randoms(use_true_random=False))
def test_gradient_orientation_independent(q, rnd):
    inst = q.edge_instances()
    oriented = [(b, a) if rnd.random() < 0.5 else (a, b) for a, b in inst]
    rnd.shuffle(oriented)
    f1, f2 = gradient(q), gradient(q, oriented)
    assert np.array_equal(f1.T @ f1, kirchhoff(q))
    assert np.array_equal(f2.T @ f2, kirchhoff(q))
    assert set(np.abs(f2).sum(axis=1).tolist()) <= {1, 2}


@settings(max_examples=50)
@given(quivers(max_n=5))
def test_relabel_preserves_spectrum(q):
    perm = list(range(q.n, 0, -1))
    r = q.relabel({v: perm[v - 1] for v in range(1, q.n + 1)})
    assert np.allclose(spec(r), spec(q))


def test_quiver_validation():
    with pytest.raises(ValueError):
        Quiver(2, (((2, 1), 1),))
    with pytest.raises(ValueError):
        Quiver(2, (((1, 2), 0),))
