from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from complexcf.algorithms import hurwitz, parse_algorithm
from complexcf.arithmetic.ball import circle_point
from complexcf.arithmetic.kfield import KElement
from complexcf.arithmetic.surd import surd_from_poly
from complexcf.corpus import surd_corpus
from complexcf.errors import NotAZero
from complexcf.expansion import run
from complexcf.forms import (
    GMatrix, SigmaForm, act, forms_along, hermitian_roots, orbit_along, quotient_bound_from_orbit,
    zero_correspondence,
)
from complexcf.rings import E, G

from conftest import k_elements, ring_elements

I_SQRT2 = surd_from_poly(1, 0, 2, ring=G)
X_I_SQRT2 = SigmaForm.make(G, [1, 0, 0, 2])


def test_act_example():
    g = GMatrix(G(3), G(0, 1), G(0, -2), G(1))
    Y = act(X_I_SQRT2, g)
    assert Y.entries == tuple(KElement.from_ring(x) for x in (G(1), G(0, -1), G(0, -1), G(1)))
    assert Y.det() == X_I_SQRT2.det() == 2


def test_act_identity_and_real_hermitian():
    assert act(X_I_SQRT2, GMatrix.identity(G)) == X_I_SQRT2
    H = SigmaForm.hermitian(1, 0, -2, G)
    Y = act(H, GMatrix(G(2), G(1), G(1), G(1)))
    assert Y.A.is_rational() and Y.D.is_rational()


def test_orbit_of_i_sqrt2():
    tr = run(I_SQRT2, hurwitz(), 50)
    rep = orbit_along(tr, X_I_SQRT2)
    assert rep.passed and rep.stabilized
    assert rep.cardinality == 2
    want = SigmaForm.make(G, [1, G(0, -1), G(0, -1), 1])
    assert any(f == want for f in rep.forms)


def test_orbit_for_hexagonal_surd():
    z = surd_from_poly(1, -1, 1, ring=G)
    tr = run(z, hurwitz(), 60)
    rep = orbit_along(tr, SigmaForm.from_surd(z))
    assert rep.passed and rep.stabilized


def test_not_a_zero():
    tr = run(surd_from_poly(1, 0, 3, ring=G), hurwitz(), 5)
    with pytest.raises(NotAZero):
        orbit_along(tr, X_I_SQRT2)


def test_root_loci_examples():
    c = hermitian_roots(SigmaForm.hermitian(1, 0, -2, G))
    assert c.kind == "circle" and c.center == 0 and c.r2 == 2
    line = hermitian_roots(SigmaForm.hermitian(0, 1, 1, G))
    assert line.kind == "line"
    assert line.contains(KElement.from_coords(G, Fraction(-1, 2), 7))
    assert not line.contains(KElement.from_coords(G, 0, 7))
    assert hermitian_roots(SigmaForm.hermitian(1, 0, 2, G)).kind == "empty"


@given(k_elements(ring=G), st.integers(1, 40))
def test_circle_locus_matches_definition(center, r2):
    a = 3
    b = -center * a
    c = (center.norm() - r2) * a
    loc = hermitian_roots(SigmaForm.hermitian(a, b, c, G))
    assert loc.kind == "circle" and loc.center == center and loc.r2 == r2


def test_root_hit_branch():
    # the imaginary axis contains z and every convergent
    tr = run(I_SQRT2, hurwitz(), 8)
    qb = quotient_bound_from_orbit(tr, SigmaForm.hermitian(0, 1, 0, G))
    assert qb.branch == "root_hit" and qb.root_hits


def test_quotient_bound_on_ball_circle():
    tr = run(circle_point(G, 3, Fraction(1, 5)), hurwitz(), 120)
    qb = quotient_bound_from_orbit(tr, SigmaForm.hermitian(1, 0, -3, G))
    assert qb.branch == "bounded" and qb.holds
    assert qb.observed_sup <= float(qb.bound) <= float(qb.remark_bound)


def test_json_roundtrip():
    X = SigmaForm.hermitian(2, KElement.from_coords(G, 1, Fraction(1, 3)), -5, G)
    assert SigmaForm.from_json(X.to_json()) == X


@pytest.mark.parametrize("name", ["hurwitz", "even", "eisenstein", "chi:x=5/4"])
@settings(max_examples=6)
@given(seed=st.integers(0, 10**6))
def test_orbit_invariants_on_corpus(name, seed):
    alg = parse_algorithm(name)
    (item,) = surd_corpus(alg.ring, 1, seed)
    tr0 = run(item.surd, alg, 400, stop_at_period=True)
    n0, k = tr0.period
    tr = run(item.surd, alg, max(n0 - 1, 0) + 2 * k + 2)
    X = SigmaForm.from_surd(item.surd)
    rep = orbit_along(tr, X)
    assert rep.passed and rep.stabilized
    # the determinant is invariant along the whole orbit
    assert all(Y.det() == X.det() for Y in forms_along(tr, X))
    for n in range(len(tr.steps) - 1):
        assert zero_correspondence(tr, X, n).agree


@given(ring_elements(ring=G), ring_elements(ring=G), ring_elements(ring=G))
def test_act_is_a_right_action(a1, a2, c):
    # g = [[a, 1], [1, 0]] has determinant -1
    X = SigmaForm.make(G, [1, c, c, 5])
    g1 = GMatrix(a1, G(1), G(1), G(0))
    g2 = GMatrix(a2, G(1), G(1), G(0))
    prod = GMatrix(a1 * a2 + 1, a1, a2, G(1))
    assert act(act(X, g1), g2) == act(X, prod)
