from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from complexcf.algorithms import even_gaussian, hurwitz
from complexcf.approximation import (
    badly_approximable_assess, best_approx_oracle, certify_bad_circle, is_norm, iterate_floor, verify_app_pr,
)
from complexcf.arithmetic.kfield import KElement
from complexcf.arithmetic.surd import surd_from_poly
from complexcf.errors import EnumerationLimit, HypothesisFailed
from complexcf.expansion import run, run_external
from complexcf.kernels import _pykernels
from complexcf.rings import E, G, RINGS, elements_in_disc

from conftest import k_elements

I_SQRT2 = surd_from_poly(1, 0, 2, ring=G)
LARGE_DELTA = surd_from_poly(G(2, -4), G(3, -2), G(2, -4), "plus", ring=G)


def test_oracle_small_q():
    rows = best_approx_oracle(I_SQRT2, 4)
    best = min(r.lo for r in rows)
    target = 3 - 2 * math.sqrt(2)
    assert float(best) == pytest.approx(target, abs=1e-15)
    argmin = {(str(r.q), str(r.p)) for r in rows if float(r.lo) < target + 1e-12}
    assert ("-2i", "3") in argmin and ("2", "3i") in argmin
    one = next(r for r in rows if str(r.q) == "1")
    assert str(one.p) == "i" and float(one.lo) == pytest.approx(math.sqrt(2) - 1)


def test_oracle_limit():
    with pytest.raises(EnumerationLimit):
        best_approx_oracle(I_SQRT2, 10**7)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_best_approximation_i_sqrt2(n):
    tr = run(I_SQRT2, hurwitz(), n + 2)
    v = verify_app_pr(tr, n)
    assert v.passed and v.margin_lo >= 0 and v.checked > 0


def test_best_approximation_guard():
    tr = run(LARGE_DELTA, even_gaussian(), 20)
    with pytest.raises(HypothesisFailed):
        verify_app_pr(tr, 18)


def test_assess_i_sqrt2():
    v = badly_approximable_assess(run(I_SQRT2, hurwitz(), 40))
    assert v.kind == "consistent-with-bad"
    # quotients are i, -2i, 2i, ... so sup |a_n| = 2
    assert v.sup_a_norm == 4
    assert 0 < v.delta_hat < v.delta_prime < Fraction(1, 4)


def test_assess_huge_quotients_inconclusive():
    seq = [G(0)] + [G(2)] * 30 + [G(10**4 * k) for k in range(1, 11)]
    assert badly_approximable_assess(run_external(seq)).kind == "inconclusive"


def test_iterate_floor_reports_both_thresholds():
    # |z_n| = 1 + sqrt2 for n >= 1, between 1 + 1/sqrt3 and 1 + sqrt3
    f = iterate_floor(run(I_SQRT2, hurwitz(), 20))
    assert abs(float(f.inf_lo) - (1 + math.sqrt(2))) < 1e-12
    assert f.exceeds_1_plus_inv_sqrt3 and not f.exceeds_1_plus_sqrt3


def test_norm_examples():
    assert str(is_norm(5, G).witness) == "2+i"
    assert not is_norm(3, G).is_norm
    r = is_norm(3, E)
    assert r.is_norm and r.witness.norm() == 3
    assert not is_norm(1847, G).is_norm and not is_norm(1847, E).is_norm


@pytest.mark.parametrize("ring", RINGS, ids=lambda r: r.code)
def test_1847_is_bad_for_all_rings(ring):
    assert certify_bad_circle(0, 1847, ring).kind == "certified-bad"


def test_circle_examples():
    assert certify_bad_circle(0, 3, G).kind == "certified-bad"
    assert certify_bad_circle(0, 7, G).kind == "certified-bad"
    v = certify_bad_circle(0, Fraction(5, 2), G)
    assert v.kind == "contains-K-point"
    assert v.witness.norm() == Fraction(5, 2)
    assert v.to_json()["witness_pq"] == "(2+i)/(1+i)"


@given(st.sampled_from(RINGS), st.integers(1, 20_000))
def test_is_norm_matches_lattice_search(ring, n):
    r = is_norm(n, ring)
    assert r.is_norm == (_pykernels.norm_search(n, ring.trace, ring.gnorm) is not None)
    if r.is_norm:
        assert r.witness.norm() == n


@given(st.sampled_from(RINGS), st.integers(1, 10**5), st.integers(1, 10**5))
def test_norms_are_multiplicative(ring, m, n):
    if is_norm(m, ring).is_norm and is_norm(n, ring).is_norm:
        assert is_norm(m * n, ring).is_norm


@settings(max_examples=40)
@given(k_elements(ring=G), st.fractions(min_value=Fraction(1, 30), max_value=30, max_denominator=30))
def test_circle_verdict_against_small_search(center, r2):
    v = certify_bad_circle(center, r2, G)
    if v.kind == "contains-K-point":
        assert (v.witness - center).norm() == r2
        return
    # no point of K with a small denominator lies on a certified-bad circle
    for den in range(1, 9):
        for x in elements_in_disc(G, center * den, r2 * den * den):
            w = KElement.from_ring(x) / den
            assert (w - center).norm() != r2
