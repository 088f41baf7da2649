from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from complexcf.algorithms import eisenstein, even_gaussian, hurwitz, parse_algorithm
from complexcf.arithmetic.ball import circle_point
from complexcf.arithmetic.surd import surd_from_poly
from complexcf.corpus import surd_corpus
from complexcf.errors import HypothesisFailed
from complexcf.expansion import (
    check_condition_H, check_monotone, compute_theta, neat_subset, run, run_external, verify_identities,
)
from complexcf.rings import E, G

I_SQRT2 = surd_from_poly(1, 0, 2, ring=G)


def oracle_expand(z: complex | mpmath.mpc, lattice: str, n: int) -> list[complex]:
    """Independent 100-digit iteration with rounding to the nearest lattice point."""
    with mpmath.workdps(100):
        z = mpmath.mpc(z) if not isinstance(z, mpmath.mpc) else z
        out = []
        for _ in range(n):
            if lattice == "even":
                w = z / mpmath.mpc(1, 1)
                a = mpmath.mpc(mpmath.nint(w.real), mpmath.nint(w.imag)) * mpmath.mpc(1, 1)
            else:
                a = mpmath.mpc(mpmath.nint(z.real), mpmath.nint(z.imag))
            out.append(complex(a))
            z = 1 / (z - a)
        return out


def test_hurwitz_golden_trace():
    tr = run(I_SQRT2, hurwitz(), 10)
    assert [str(a) for a in tr.a[:5]] == ["i", "-2i", "2i", "-2i", "2i"]
    assert tr.period == (1, 2)
    assert [str(q) for q in tr.q[:5]] == ["1", "-2i", "5", "-12i", "29"]
    assert tr.q_norms[:5] == [1, 4, 25, 144, 841]
    with mpmath.workdps(100):
        want = oracle_expand(mpmath.mpc(0, mpmath.sqrt(2)), "gauss", 10)
    assert [complex(a) for a in tr.a] == want


def test_even_golden_trace():
    tr = run(I_SQRT2, even_gaussian(), 10)
    assert [str(a) for a in tr.a[:5]] == ["2i", "2i", "4i", "2i", "4i"]
    assert tr.period == (1, 2)
    # q_3 = 2i(-7) + 2i, q_4 = 4i(-12i) - 7
    assert [str(q) for q in tr.q[:5]] == ["1", "2i", "-7", "-12i", "41"]
    assert tr.q_norms[:5] == [1, 4, 49, 144, 1681]
    with mpmath.workdps(100):
        want = oracle_expand(mpmath.mpc(0, mpmath.sqrt(2)), "even", 10)
    assert [complex(a) for a in tr.a] == want


def test_first_relative_error():
    tr = run(I_SQRT2, hurwitz(), 3)
    lo = abs(complex(tr.steps[0].delta.embed(64)))
    assert lo == pytest.approx(math.sqrt(2) - 1, abs=1e-15)


def test_run_external_examples():
    assert [str(q) for q in run_external([0, 2, 2]).q] == ["1", "2", "5"]
    assert [str(q) for q in run_external([G(0, 1), G(0, -2), G(0, 2)]).q] == ["1", "-2i", "5"]
    tr = run_external([G(0, 0), G(1, 1), G(-1, 1)])
    assert [str(q) for q in tr.q] == ["1", "1+i", "-1"]


def test_monotone_examples():
    assert check_monotone(run(I_SQRT2, even_gaussian(), 10)).verdict == "strict"
    assert check_monotone([0, 3, 3, 3]).verdict == "strict"
    v = check_monotone([G(0, 0), G(1, 1), G(-1, 1)])
    assert v.verdict == "strict-violation" and v.m == 1
    # the disc for a_2 = -1+i is centred at 1+i with radius squared 4; a_1 = 1+i is its centre
    assert v.branch["a_m in open disc"]
    assert v.branch["|a_m+1| < 2"]


def test_condition_h_examples():
    assert check_condition_H([G(0, 0), G(3, 0), G(1, 1)]).ok
    v = check_condition_H([G(0, 0), G(-1, 1), G(1, 1)])
    assert not v.ok and v.violation == (1, 2)
    v = check_condition_H([G(0, 0), G(1, 2), G(-2, 2), G(1, 1)])
    assert not v.ok and v.violation == (1, 3)
    assert check_condition_H([G(0, 0), G(2, 2), G(-2, 2), G(1, 1)]).ok


def test_condition_h_rejects_unit_quotients():
    assert not check_condition_H([G(0, 0), G(1, 0), G(3, 0)]).ok


def test_theta_values():
    tr = run(I_SQRT2, hurwitz(), 6)
    for n in (0, 1):
        th = compute_theta(tr, n)
        assert th.lo <= Fraction(math.sqrt(2) - 1) + Fraction(1, 10**12)
        assert th.hi >= Fraction(math.sqrt(2) - 1) - Fraction(1, 10**12)
        assert th.hi - th.lo < Fraction(1, 10**20)


LARGE_DELTA = surd_from_poly(G(2, -4), G(3, -2), G(2, -4), "plus", ring=G)


def test_theta_guard():
    # an even-algorithm trace whose relative error at n = 18 exceeds sqrt 2
    tr = run(LARGE_DELTA, even_gaussian(), 20)
    assert abs(complex(tr.steps[18].delta.embed(64))) > math.sqrt(2)
    with pytest.raises(HypothesisFailed):
        compute_theta(tr, 18)
    with pytest.raises(HypothesisFailed):
        compute_theta(run_external([G(0, 0), G(3, 0)]), 0)


def test_neat_subset_i_sqrt2():
    tr = run(I_SQRT2, hurwitz(), 20)
    rep = neat_subset(tr, 2)
    assert rep.N == list(range(len(tr.steps)))
    assert rep.sup_delta <= 1 / math.sqrt(2) + 1e-12
    assert rep.delta_bound_ok and rep.delta_step_ok and rep.neat_bound_ok


def test_ball_trace_has_no_period_claim():
    tr = run(circle_point(G, 3, Fraction(1, 5)), hurwitz(), 60)
    assert tr.period is None and tr.backend == "ball"
    assert verify_identities(tr).passed
    with mpmath.workdps(100):
        want = oracle_expand(mpmath.sqrt(3) * mpmath.expjpi(mpmath.mpf(1) / 5), "gauss", len(tr.steps))
    assert [complex(a) for a in tr.a] == want


ALG_NAMES = ["hurwitz", "even", "lambda", "perturbed:r=3/20", "eisenstein", "chi:x=5/4"]


@pytest.mark.parametrize("name", ALG_NAMES)
@settings(max_examples=8)
@given(seed=st.integers(0, 10**6))
def test_identities_and_periodicity(name, seed):
    alg = parse_algorithm(name)
    (item,) = surd_corpus(alg.ring, 1, seed)
    tr = run(item.surd, alg, 400, stop_at_period=True)
    assert tr.termination == "period_found"
    assert verify_identities(tr).passed


@pytest.mark.parametrize("name", ["even", "lambda", "chi:x=5/4", "hurwitz", "eisenstein"])
@settings(max_examples=8)
@given(seed=st.integers(0, 10**6))
def test_denominators_grow(name, seed):
    alg = parse_algorithm(name)
    (item,) = surd_corpus(alg.ring, 1, seed)
    assert check_monotone(run(item.surd, alg, 400, stop_at_period=True)).strict


@settings(max_examples=10)
@given(seed=st.integers(0, 10**6))
def test_condition_h_holds_for_hurwitz(seed):
    (item,) = surd_corpus(G, 1, seed)
    assert check_condition_H(run(item.surd, hurwitz(), 400, stop_at_period=True)).ok


def test_trace_serializations_agree():
    tr = run(I_SQRT2, hurwitz(), 6)
    js = tr.to_json()
    lines = tr.to_jsonl().splitlines()
    assert len(js["steps"]) == 6 and len(lines) == 8
    assert tr.to_csv().splitlines()[0].startswith("n,a_n,q_norm")
