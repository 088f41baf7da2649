from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from complexcf.algorithms import AlgorithmSpec, hurwitz
from complexcf.arithmetic.kfield import KElement
from complexcf.errors import ZeroOnBoundary
from complexcf.regions import (
    Disc, DiscComplement, H_inverse_identity, Q_h, Q_r, diamond_H, invert_disc, uniform_disc_family,
    verify_disc_family, verify_geom_hurwitz,
)
from complexcf.rings import E, G

from conftest import k_elements


def k(re, im=0):
    return KElement.from_coords(G, Fraction(re), Fraction(im))


def test_invert_disc_examples():
    d = invert_disc(Disc(k(2), Fraction(1)))
    assert isinstance(d, Disc) and d.center == Fraction(2, 3) and d.r2 == Fraction(1, 9)
    d = invert_disc(Disc(k(3), Fraction(1)))
    assert d.center == Fraction(3, 8) and d.r2 == Fraction(1, 64)
    d = invert_disc(Disc(k(1), Fraction(4)))
    assert isinstance(d, DiscComplement)
    assert d.disc.center == Fraction(-1, 3) and d.disc.r2 == Fraction(4, 9) and d.disc.closed


def test_boundary_through_zero_is_rejected():
    with pytest.raises(ZeroOnBoundary):
        invert_disc(Disc(k(1), Fraction(1)))


@given(k_elements(ring=G), st.fractions(min_value=Fraction(1, 50), max_value=4, max_denominator=50),
       k_elements(ring=G, nonzero=True), st.booleans())
def test_inverted_disc_is_pointwise_image(c, r2, w, closed):
    assume(c.norm() != r2)
    src = Disc(c, r2, closed).region()
    img = invert_disc(Disc(c, r2, closed)).region()
    assert img.contains(w) == src.contains(w.inverse())


def test_diamond_inverse_identity_on_grid():
    h_inv, ref = diamond_H().invert(), H_inverse_identity()
    n = 0
    for a in range(-30, 31):
        for b in range(-30, 31):
            w = k(Fraction(a, 10), Fraction(b, 10))
            if w.is_zero():
                continue
            assert h_inv.contains(w) == ref.contains(w)
            n += 1
    assert n == 61 * 61 - 1


def test_geometry_hurwitz_passes():
    assert verify_geom_hurwitz(hurwitz(), Q_h(), mesh=50).passed


def test_geometry_perturbed_small_passes():
    r = Fraction(3, 20)
    assert verify_geom_hurwitz(AlgorithmSpec(G, "perturbed_hurwitz", r), Q_r(r), mesh=50).passed


def test_geometry_perturbed_large_fails_with_witness():
    r = Fraction(7, 20)
    rep = verify_geom_hurwitz(AlgorithmSpec(G, "perturbed_hurwitz", r), Q_r(r), mesh=50)
    fails = rep.failures()
    assert fails and all(f.witness is not None for f in fails)


def _disc_family_endpoint() -> float:
    return math.sqrt((5 - math.sqrt(13)) / 4)


def test_disc_family_admissible_radius():
    r = Fraction(585, 1000)
    assert 1 / math.sqrt(3) < r < _disc_family_endpoint()
    assert verify_disc_family(uniform_disc_family(E, r * r), mesh=60).passed


@pytest.mark.parametrize("r", [Fraction(1, 2), Fraction(7, 10)])
def test_disc_family_rejects_outside_interval(r):
    rep = verify_disc_family(uniform_disc_family(E, r * r), mesh=60)
    assert not rep.passed
    assert any(f.witness is not None for f in rep.failures())
