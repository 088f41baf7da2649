from __future__ import annotations

from fractions import Fraction

from hypothesis import given

from complexcf.rings import (
    E, G, RINGS, SIGMA, SIGMA_Y, apply_symmetry, compute_nu_squared, elements_in_disc, is_euclidean_on_grid,
    is_even_gaussian, norm, ring_by_name, units,
)

from conftest import ring_elements


def test_norm_examples():
    assert norm(G(1, 1)) == 2
    assert norm(E(2, 1)) == 3
    assert norm(G(0, 0)) == 0


def test_disc_enumeration_small_radii():
    assert {str(x) for x in elements_in_disc(G, 0, 1)} == {"0", "1", "-1", "i", "-i"}
    assert len(elements_in_disc(G, 0, 2)) == 9
    found = elements_in_disc(E, 0, 1)
    assert len(found) == 7
    assert all(x.norm() <= 1 for x in found)


def test_strict_disc_drops_boundary():
    assert len(elements_in_disc(G, 0, 1, strict=True)) == 1


def test_even_gaussian():
    assert is_even_gaussian(G(1, 1))
    assert is_even_gaussian(G(0, 2))
    assert not is_even_gaussian(G(1, 0))


def test_sigma_y():
    assert SIGMA_Y(G(1, 1)) == G(-1, 1)
    assert SIGMA_Y(SIGMA_Y(G(1, 1))) == G(1, 1)


def test_nu_and_euclidean():
    # covering radius squared for the five rings, times the scale used
    assert [compute_nu_squared(r) for r in RINGS] == [r.nu_squared for r in RINGS]
    assert all(is_euclidean_on_grid(r, mesh=20) for r in RINGS)


def test_units_and_lookup():
    assert len(units(G)) == 4 and len(units(E)) == 6
    assert all(u.norm() == 1 for r in RINGS for u in units(r))
    assert ring_by_name("G") is G and ring_by_name("E") is E


@given(ring_elements(), ring_elements())
def test_norm_is_multiplicative(x, y):
    if x.ring is not y.ring:
        y = x.ring(y.a, y.b)
    assert (x * y).norm() == x.norm() * y.norm()


@given(ring_elements())
def test_conj_product_is_norm(x):
    p = x * x.conj()
    assert p.b == 0 and p.a == x.norm()


@given(ring_elements(ring=G))
def test_symmetries_preserve_norm_and_form_group(x):
    for s in SIGMA:
        assert apply_symmetry(s, x).norm() == x.norm()
        assert apply_symmetry(s, apply_symmetry(s, x)) == x


@given(ring_elements())
def test_disc_enumeration_matches_brute_force(c):
    r = c.ring
    r2 = Fraction(7, 2)
    got = {(x.a, x.b) for x in elements_in_disc(r, c, r2)}
    want = {(c.a + a, c.b + b) for a in range(-6, 7) for b in range(-6, 7) if r(a, b).norm() <= r2}
    assert got == want
