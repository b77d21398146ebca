import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import schrod1d.potential as pot
import schrod1d.spectral as sp
import schrod1d.transfer as tr
from oracles import constant4_eigenvalues, constant4_sigma_min


int_words = st.lists(st.integers(min_value=-4, max_value=4),
                     min_size=1, max_size=5)


def band_set(word):
    return sp.bands(tr.discriminant(pot.periodic(word)))


def edge_contains(edge, value):
    return edge.lo <= F(value) <= edge.hi and edge.hi - edge.lo <= sp.EDGE_WIDTH


def test_free_band():
    bs = band_set([0])
    assert bs.bands == ((-2.0, 2.0),)
    assert bs.gaps == ()
    assert edge_contains(bs.edges[0], -2) and edge_contains(bs.edges[1], 2)


def test_constant_band_and_distance():
    bs = band_set([4])
    assert bs.bands == ((2.0, 6.0),)
    assert edge_contains(bs.edges[0], 2) and edge_contains(bs.edges[1], 6)
    assert bs.locate(0) == {"kind": "below", "index": None}
    assert bs.locate(4) == {"kind": "band", "index": 0}
    assert bs.locate(2) == {"kind": "edge", "index": None}
    assert bs.locate(6) == {"kind": "edge", "index": None}
    assert bs.locate(8) == {"kind": "above", "index": None}
    assert bs.distance_to_spectrum(0) == 2.0
    assert bs.distance_to_spectrum(6.5) == 0.5
    assert bs.distance_to_spectrum(3) == 0.0


def test_closed_gap_is_merged():
    # doubling the free period produces a touching point, not a gap
    bs = band_set([0, 0])
    assert bs.bands == ((-2.0, 2.0),)
    assert bs.gaps == ()
    assert bs.locate(0) == {"kind": "band", "index": 0}


def test_three_band_example():
    bs = band_set([F(1, 2), 2, F(1, 2)])
    assert len(bs.bands) == 3 and len(bs.gaps) == 2
    assert bs.locate(0) == {"kind": "gap", "index": 0}
    assert bs.distance_to_spectrum(0) > 0
    for (_, hi), (lo, _) in zip(bs.bands, bs.bands[1:]):
        assert hi < lo


def test_nan_rejected():
    bs = band_set([0])
    with pytest.raises(ValueError):
        bs.locate(float("nan"))
    with pytest.raises(ValueError):
        bs.locate(float("inf"))


@given(int_words)
@settings(max_examples=60, deadline=None)
def test_band_structure_invariants(word):
    bs = band_set(word)
    assert 1 <= len(bs.bands) <= len(word)
    flat = [x for b in bs.bands for x in b]
    assert flat == sorted(flat)
    for lo, hi in bs.bands:
        assert lo < hi


@given(int_words, st.fractions(min_value=-8, max_value=8, max_denominator=7))
@settings(max_examples=150, deadline=None)
def test_locate_agrees_with_discriminant_sign(word, z):
    p = pot.periodic(word)
    disc = tr.discriminant(p)
    bs = sp.bands(disc)
    val = disc.value(z)
    kind = bs.locate(z)["kind"]
    if abs(val) < 2:
        assert kind == "band"
    elif abs(val) > 2:
        assert kind in ("gap", "below", "above")
    else:
        assert kind in ("edge", "band")


def test_truncation_matches_closed_form():
    p = pot.periodic([4])
    for m in list(range(1, 40)) + [120, 200]:
        got = sp.truncation_spectrum(p, m)
        ref = np.array(constant4_eigenvalues(m))
        assert np.max(np.abs(got - ref)) < 1e-10


@given(int_words, st.integers(min_value=2, max_value=30))
@settings(max_examples=40, deadline=None)
def test_truncation_interlacing(word, m):
    p = pot.periodic(word)
    a = sp.truncation_spectrum(p, m)
    b = sp.truncation_spectrum(p, m + 1)
    for k in range(m):
        assert b[k] <= a[k] + 1e-9
        assert a[k] <= b[k + 1] + 1e-9


def test_dirichlet_eigenvalue_exact_zero():
    p = pot.periodic([F(1, 2), 2, F(1, 2)])
    ds = sp.dirichlet_eigenvalues(p)
    assert len(ds.eigenvalues) == 1
    e = ds.eigenvalues[0]
    assert e.lo == e.hi == 0
    assert e.location == "gap" and e.gap_index == 0
    assert e.m22_side == 1
    assert ds.rejected == (2.5,)
    assert ds.warnings == ()


def test_dirichlet_none_for_constant():
    ds = sp.dirichlet_eigenvalues(pot.periodic([4]))
    assert ds.eigenvalues == () and ds.rejected == ()


def test_dirichlet_band_edge_root_rejected():
    # m12 vanishes at a band edge; |m22| = 1 there, so no eigenvalue
    ds = sp.dirichlet_eigenvalues(pot.periodic([0, 3]))
    assert ds.eigenvalues == ()
    assert ds.rejected == (0.0,)
    assert ds.band_set.bands == ((-1.0, 0.0), (3.0, 4.0))


def test_dirichlet_needs_periodic():
    with pytest.raises(TypeError):
        sp.dirichlet_eigenvalues(pot.explicit([1], start=0))


@given(int_words, st.integers(min_value=1, max_value=40),
       st.fractions(min_value=-6, max_value=6, max_denominator=4))
@settings(max_examples=60, deadline=None)
def test_sigma_min_matches_full_spectrum(word, size, z):
    p = pot.periodic(word)
    got = sp.smallest_singular_value(p, size, float(z))
    spec = sp.truncation_spectrum(p, size)
    ref = float(np.min(np.abs(spec - float(z))))
    assert abs(got - ref) <= 1e-9 * max(1.0, ref)


def test_sigma_min_closed_form():
    p = pot.periodic([4])
    for m in (1, 2, 5, 20, 75):
        assert abs(sp.smallest_singular_value(p, m, 0.0)
                   - constant4_sigma_min(m)) < 1e-10


def test_pollution_persistent_cluster():
    p = pot.periodic([F(1, 2), 2, F(1, 2)])
    rep = sp.pollution_report(p, sizes=(60, 90, 120, 150))
    centers = [c.center for c in rep.clusters]
    assert any(abs(c) < 1e-6 for c in centers), centers
    hit = [c for c in rep.clusters if abs(c.center) < 1e-6][0]
    assert hit.location == "gap" and hit.hits == 4
    assert rep.per_gap_counts[("gap", 0)] >= 1


def test_pollution_absent_for_constant():
    rep = sp.pollution_report(pot.periodic([4]), sizes=(40, 60, 80))
    assert rep.clusters == ()
    assert all(v == 0 for v in rep.in_gap_counts.values())


def test_truncation_input_checks():
    with pytest.raises(ValueError):
        sp.truncation_spectrum(pot.periodic([1]), 0)
    with pytest.raises(ValueError):
        sp.smallest_singular_value(pot.periodic([1]), 0, 0.0)
    with pytest.raises(ValueError):
        sp.pollution_report(pot.periodic([1]), sizes=())


def test_band_set_json_shape():
    bs = band_set([4])
    doc = bs.to_json()
    assert doc["bands"] == [[2.0, 6.0]]
    lo = F(doc["edges"][0]["lo"])
    hi = F(doc["edges"][0]["hi"])
    assert lo <= 2 <= hi
