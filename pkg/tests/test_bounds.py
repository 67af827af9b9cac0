import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import quivers
from quiver_spectra import bounds
from quiver_spectra.families import complete, cycle, good_will_hunting, koenigsberg, path, star
from quiver_spectra.quiver import classify, from_edge_list, kirchhoff


def test_theorem1_on_koenigsberg_and_c4():
    r = bounds.check_theorem1(koenigsberg())
    assert r.ok
    assert r.upper["theorem1"] == [2, 6, 8, 8]
    r = bounds.check_theorem1(cycle(4))
    assert r.ok
    assert r.upper["twice_degree"] == [4, 4, 4, 4]
    assert ("twice_degree", 4) in r.equalities and ("theorem1", 4) in r.equalities


def test_theorem1_loop_quiver():
    q = from_edge_list(1, [(1, 1)] * 3)
    r = bounds.check_theorem1(q)
    assert r.ok and r.eigenvalues == [3.0]


def test_theorem2_gate():
    with pytest.raises(ValueError, match="multiplicity"):
        bounds.check_theorem2(from_edge_list(2, [(1, 2), (1, 2)]))
    assert bounds.check_theorem2(star(6)).ok
    assert bounds.check_theorem2(from_edge_list(2, [(1, 2), (1, 1)])).ok


def test_theorem2_fails_with_multiple_connections():
    # the double edge: lam = (0, 4), d = (2, 2); d_1 - 1 = 1 > 0
    q = from_edge_list(2, [(1, 2), (1, 2)])
    r = bounds.theorem1_from_data([0, 4], [2, 2])
    assert r.ok
    lam = np.linalg.eigvalsh(kirchhoff(q).astype(float))
    assert lam[0] < q.degree_sequence()[0] - 1


def test_brouwer_haemers_k1_exception():
    r = bounds.lower_bound_brouwer_haemers(complete(5))
    assert r.ok
    assert [v.k for v in r.exceptions] == [1]


def test_horn_johnson():
    assert bounds.lower_bound_horn_johnson(koenigsberg()).ok
    assert bounds.lower_bound_horn_johnson(good_will_hunting()).ok


def test_schur_horn_sharpened_scope():
    assert bounds.schur_horn(path(4), sharpened=True).ok
    # P2 plus a loop: lam_1 = 0.38 > d_1 - 1 = 0, so loops are excluded
    q = from_edge_list(2, [(1, 2), (1, 1)])
    r = bounds.schur_horn(q, sharpened=True)
    assert r.ok and r.upper["schur_horn_sharpened"] == [None, None]
    assert np.linalg.eigvalsh(kirchhoff(q).astype(float))[0] > 0.38


def test_schur_horn_error_p4_counterexample():
    r = bounds.schur_horn_error(path(4))
    assert [v.k for v in r.violations] == [2]
    assert r.violations[0].slack == pytest.approx(2 - (2 - math.sqrt(2)) - 1)
    assert bounds.schur_horn_error(complete(6)).ok


def test_gershgorin_counter_data():
    g = bounds.gershgorin_from_data([0, 10, 10], [1, 3, 7])
    assert g.gershgorin_ok and not g.theorem1_ok
    assert g.kth_inside == [True, False, True]
    assert bounds.gershgorin_compare(koenigsberg()).theorem1_ok


def test_det_bounds():
    r = bounds.det_bounds(cycle(4))
    assert (r.pseudo_det, r.tree_bound) == (16, 256)
    assert (r.forest_det, r.forest_bound) == (45, 625)
    assert r.ok
    iso = from_edge_list(3, [(1, 2)])
    assert bounds.det_bounds(iso).ok


def test_schroedinger_rational():
    q = path(3)
    r = bounds.schroedinger_check(q, V=[Fraction(1, 2), 0, 0.25], W={(1, 3): Fraction(1, 3)})
    assert r.ok
    assert r.degrees == sorted([Fraction(1, 2) + 1 + Fraction(1, 3), Fraction(2), Fraction(1) + Fraction(1, 4) + Fraction(1, 3)])
    # eigenvalues are those of K + diag(V) - W as a real matrix
    m = kirchhoff(q).astype(float) + np.diag([0.5, 0, 0.25])
    m[0, 2] -= 1 / 3
    m[2, 0] -= 1 / 3
    m[0, 0] += 1 / 3
    m[2, 2] += 1 / 3
    assert np.allclose(r.eigenvalues, np.linalg.eigvalsh(m))
    with pytest.raises(ValueError):
        bounds.schroedinger_check(q, V=[-1, 0, 0])


def test_spectral_radius_chain():
    for q in (koenigsberg(), good_will_hunting(), star(7)):
        c = bounds.spectral_radius_chain(q)
        assert c.ok
        assert bounds.edge_degree_bound(q) <= c.degree_bound


def test_report_serialization():
    r = bounds.combine([bounds.check_theorem1(cycle(4)), bounds.lower_bound_brouwer_haemers(cycle(4))])
    rows = r.rows()
    assert rows[0]["k"] == 1 and "upper_theorem1" in rows[0] and "lower_brouwer_haemers" in rows[0]
    d = r.to_dict()
    assert d["ok"] and d["upper"]["theorem1"] == [2, 4, 4, 4]


@settings(max_examples=80)
@given(quivers(max_n=6))
def test_proven_bounds_hold(q):
    data = bounds.SpectralData.of(q)
    assert bounds.check_theorem1(q, data=data).ok
    assert bounds.schur_horn(q, sharpened=True, data=data).ok
    assert bounds.lower_bound_horn_johnson(q, data=data).ok
    if not classify(q).has_multiple_connections:
        assert bounds.check_theorem2(q, data=data).ok
    assert bounds.det_bounds(q).ok
    assert bounds.spectral_radius_chain(q).ok
