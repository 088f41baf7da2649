from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given, strategies as st

from complexcf.arithmetic.ball import BallComplex, BallSource, ball_inv, circle_point
from complexcf.arithmetic.factor import factor_int, primes_above, squarefree_part
from complexcf.arithmetic.kfield import KElement, parse_k
from complexcf.arithmetic.predicates import hermitian_sign
from complexcf.arithmetic.surd import QuadraticSurd, embed, surd_equals, surd_from_poly, surd_step
from complexcf.errors import FactorizationBudget, PrecisionExhausted, ReduciblePolynomial
from complexcf.rings import E, G, RINGS

from conftest import k_elements, ring_elements

I_SQRT2 = surd_from_poly(1, 0, 2, ring=G)


# -- K -------------------------------------------------------------------------------


@given(k_elements(ring=G), k_elements(ring=G), k_elements(ring=G))
def test_field_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x - x == 0 * x


@given(k_elements(nonzero=True))
def test_inverse_and_norm(x):
    assert x * x.inverse() == KElement.from_rational(x.ring, 1)
    assert (x * x.conj()).is_rational()
    assert (x * x.conj()).real == x.norm()


@given(k_elements())
def test_parse_roundtrip(x):
    assert parse_k(x.ring, str(x)) == x


def test_parse_examples():
    assert parse_k(G, "(2+i)/(1+i)") == KElement.from_coords(G, Fraction(3, 2), Fraction(-1, 2))
    assert parse_k(E, "2+w").norm() == 3
    with pytest.raises(ValueError):
        parse_k(G, "2+w")


# -- surds ---------------------------------------------------------------------------


def test_surd_from_poly_examples():
    assert I_SQRT2.x == 0
    assert complex(I_SQRT2) == pytest.approx(1j * math.sqrt(2))
    z = surd_from_poly(1, -1, 1, ring=G)
    assert complex(z) == pytest.approx(0.5 + 1j * math.sqrt(3) / 2)
    with pytest.raises(ReduciblePolynomial):
        surd_from_poly(1, 0, 1, ring=G)


def test_surd_step_examples():
    w = surd_step(I_SQRT2, G(0, 1))
    assert complex(w) == pytest.approx(-1j * (1 + math.sqrt(2)))
    w2 = surd_step(I_SQRT2, G(0, 2))
    assert complex(w2) == pytest.approx(1j * (2 + math.sqrt(2)) / 2)


def test_surd_equality_along_period():
    zs = [I_SQRT2]
    for a in (G(0, 1), G(0, -2), G(0, 2), G(0, -2)):
        zs.append(surd_step(zs[-1], a))
    # the expansion i, -2i, 2i, -2i, ... has period 2 from index 1
    assert surd_equals(zs[1], zs[3]) and surd_equals(zs[2], zs[4])
    assert not surd_equals(zs[1], zs[2])
    assert not surd_equals(surd_from_poly(1, 0, 2, ring=G), surd_from_poly(1, 0, 2, "minus", ring=G))


def test_embed_contains_defining_relation():
    b = embed(I_SQRT2, 64)
    assert b.radius() <= Fraction(1, 2**60)
    assert (b * b).contains(KElement.from_rational(G, -2))
    assert abs(complex(b) - 1.4142135623730951j) < 1e-15


@given(st.sampled_from(RINGS), st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9),
       st.sampled_from(["plus", "minus"]))
def test_surd_roundtrip_and_root(ring, b, c, a, branch):
    assume(a != 0)
    try:
        z = surd_from_poly(a, b, c, branch, ring=ring)
    except ReduciblePolynomial:
        return
    assert surd_equals(QuadraticSurd.from_json(z.to_json()), z)
    w = z.embed(200)
    # a z^2 + b z + c encloses 0
    val = w * w * KElement.from_rational(ring, a) + w * KElement.from_rational(ring, b)
    assert (val + KElement.from_rational(ring, c)).contains(KElement.from_rational(ring, 0))


@given(st.sampled_from([2, 3, 5, 6, 7]), st.integers(-5, 5))
def test_surd_step_matches_float(k, a):
    z = surd_from_poly(1, 0, k, ring=G)
    step = G(a, 1)
    w = surd_step(z, step)
    assert complex(w) == pytest.approx(1 / (complex(z) - complex(step)), rel=1e-12)


# -- balls ---------------------------------------------------------------------------


def test_ball_inverse_examples():
    two = BallComplex.from_reim(G, 2, 0, 0, 64)
    assert ball_inv(two).contains(KElement.from_rational(G, Fraction(1, 2)))
    i = BallComplex.from_reim(G, 0, 1, 0, 64)
    assert ball_inv(i).contains(KElement.from_coords(G, 0, -1))
    fat = BallComplex.from_reim(G, 2, 0, Fraction(1, 10), 64)
    inv = ball_inv(fat)
    for edge in (Fraction(19, 10), Fraction(21, 10)):
        assert inv.contains(KElement.from_rational(G, 1 / edge))
    assert inv.radius() <= Fraction(1, 10) / Fraction(361, 100) + Fraction(1, 2**40)


@given(k_elements(ring=G), k_elements(ring=G, nonzero=True), st.sampled_from([64, 128]))
def test_ball_ops_enclose_exact(x, y, prec):
    bx, by = BallComplex.exact(x, prec), BallComplex.exact(y, prec)
    assert (bx + by).contains(x + y)
    assert (bx * by).contains(x * y)
    assert (bx / by).contains(x / y)


@given(st.sampled_from([E, G]), st.integers(1, 50), st.integers(-20, 20))
def test_circle_point_is_on_circle(ring, r2, ang):
    src = circle_point(ring, r2, Fraction(ang, 7))
    b = src.at(200)
    lo, hi = b.abs2_interval()
    assert lo <= r2 <= hi
    with mpmath.workprec(300):
        want = mpmath.sqrt(r2) * mpmath.expjpi(mpmath.mpf(ang) / 7)
    assert abs(complex(b.to_mpc()) - complex(want)) < 1e-12


# -- predicates ----------------------------------------------------------------------


@given(k_elements(ring=G), st.integers(-3, 3), k_elements(ring=G), st.integers(-20, 20))
def test_hermitian_sign_exact(w, alpha, beta, gamma):
    val = alpha * w.norm() + 2 * (beta.conj() * w).real + gamma
    assert hermitian_sign(w, alpha, beta, gamma) == (val > 0) - (val < 0)


def test_hermitian_sign_on_surds():
    # |i sqrt2|^2 = 2 exactly
    assert hermitian_sign(I_SQRT2, 1, 0, -2) == 0
    assert hermitian_sign(I_SQRT2, 1, 0, -1) == 1
    assert hermitian_sign(I_SQRT2, 1, 0, -3) == -1


def test_fixed_ball_straddling_boundary_is_reported():
    b = BallComplex.from_reim(G, 1, 0, Fraction(1, 100), 64)
    with pytest.raises(PrecisionExhausted):
        hermitian_sign(BallSource.of_ball(b), 1, 0, -1)


# -- factoring -----------------------------------------------------------------------


@given(st.integers(1, 10**6))
def test_factor_int_reconstructs(n):
    f = factor_int(n)
    assert math.prod(p**e for p, e in f.items()) == n
    assert all(factor_int(p) == {p: 1} for p in f)


def test_factor_budget():
    with pytest.raises(FactorizationBudget):
        factor_int(1000003 * 1000033, limit=1000)


def test_primes_above():
    assert [x.norm() for x in primes_above(5, G)] == [5, 5]
    assert [x.norm() for x in primes_above(3, G)] == [9]
    assert [x.norm() for x in primes_above(2, G)] == [2]
    assert [x.norm() for x in primes_above(3, E)] == [3]


@given(ring_elements(ring=G, nonzero=True))
def test_squarefree_part(x):
    s, k = squarefree_part(x)
    assert s * k * k == x
