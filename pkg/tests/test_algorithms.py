from __future__ import annotations

import cmath
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from complexcf.algorithms import (
    AlgorithmSpec, cell, choose, eisenstein_chi, even_gaussian, fundamental_set, hurwitz, in_target,
    lambda_gaussian, parse_algorithm, perturbed_hurwitz, validate_no_unit_quotients,
)
from complexcf.arithmetic.kfield import KElement
from complexcf.arithmetic.surd import surd_from_poly
from complexcf.errors import ParameterOutOfRange
from complexcf.rings import E, G, elements_in_disc, is_even_gaussian

from conftest import k_elements

I_SQRT2 = surd_from_poly(1, 0, 2, ring=G)
ALGS = [hurwitz(), even_gaussian(), lambda_gaussian(), perturbed_hurwitz(Fraction(3, 20))]


def test_choose_examples():
    assert choose(hurwitz(), I_SQRT2) == G(0, 1)
    assert choose(even_gaussian(), I_SQRT2) == G(0, 2)
    assert choose(even_gaussian(), surd_from_poly(2, -4 * G(0, 1), -1, ring=G)) == G(0, 2)
    z = KElement.from_coords(G, Fraction(12, 5), Fraction(21, 10))
    assert choose(lambda_gaussian(), z) == G(2, 2)


def test_parse_algorithm_names():
    assert parse_algorithm("hurwitz").kind == "hurwitz_nearest"
    assert parse_algorithm("perturbed:r=0.15").param == Fraction(3, 20)
    assert parse_algorithm("chi:x=5/4").ring is E
    with pytest.raises(ValueError):
        parse_algorithm("nope")


def test_perturbed_range_is_enforced():
    # 0.35 is a valid algorithm, it only loses the monotonicity geometry
    assert perturbed_hurwitz(Fraction(35, 100)).param == Fraction(7, 20)
    for bad in (0, Fraction(1, 2)):
        with pytest.raises(ParameterOutOfRange):
            perturbed_hurwitz(bad)
    with pytest.raises(ParameterOutOfRange):
        eisenstein_chi(Fraction(3, 2))


def test_cells_at_zero():
    sq = cell(hurwitz(), G(0, 0))
    assert sq.contains(KElement.from_coords(G, Fraction(49, 100), Fraction(-49, 100)))
    assert not sq.contains(KElement.from_coords(G, Fraction(51, 100), 0))
    dia = cell(even_gaussian(), G(0, 0))
    assert dia.contains(KElement.from_coords(G, Fraction(1, 2), Fraction(49, 100)))
    assert not dia.contains(KElement.from_coords(G, Fraction(1, 2), Fraction(51, 100)))
    hexa = cell(AlgorithmSpec(E, "eisenstein_nearest"), E(0, 0))
    r = 1 / 3**0.5
    for k in range(6):
        v = cmath.rect(r * 0.99, cmath.pi / 6 + k * cmath.pi / 3)
        w = KElement.from_reim(E, Fraction(v.real), Fraction(v.imag) / Fraction(866025403784439, 10**15))
        assert hexa.contains(w)


def test_no_unit_quotients():
    for alg in (even_gaussian(), eisenstein_chi(Fraction(5, 4)), perturbed_hurwitz(Fraction(3, 20))):
        assert validate_no_unit_quotients(alg, mesh=60).passed


@pytest.mark.parametrize("alg", ALGS, ids=lambda a: a.name)
@given(z=k_elements(ring=G))
def test_choice_is_nearest_admissible(alg, z):
    a = choose(alg, z)
    assert in_target(alg, a)
    d = (z - a).norm()
    if alg.kind == "perturbed_hurwitz":
        assert d < 1
        return
    # no admissible lattice point is strictly closer
    for b in elements_in_disc(G, z, d, strict=True):
        assert not in_target(alg, b)


@given(z=k_elements(ring=G))
def test_even_choice_is_even(z):
    assert is_even_gaussian(choose(even_gaussian(), z))


@given(z=k_elements(ring=G))
def test_choice_lands_in_fundamental_set(z):
    alg = hurwitz()
    assert fundamental_set(alg).contains(z - choose(alg, z))


@given(z=k_elements(ring=E))
def test_chi_choice_in_target(z):
    alg = eisenstein_chi(Fraction(5, 4))
    a = choose(alg, z)
    assert in_target(alg, a) and (z - a).norm() < 1
