"""Best approximations, bad approximability and circles of badly approximable numbers."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import kernels
from .algorithms import _Point, nearest_in
from .arithmetic.ball import MAX_PREC, BallComplex, BallSource
from .arithmetic.factor import TRIAL_LIMIT, factor_int
from .arithmetic.kfield import KElement, as_k
from .arithmetic.surd import LNumber, QuadraticSurd
from .errors import EnumerationLimit, HypothesisFailed, MonotonicityRequired
from .expansion import ExpansionTrace, abs_bounds, compute_theta
from .rings import RingDescriptor, RingElement, elements_in_disc

ENUM_LIMIT = 200_000  # largest |q|^2 the brute-force oracle will enumerate up to
SCREEN_LIMIT = 1 << 24  # largest |q_n|^2 for the screened best-approximation check
SCREEN_TOL = 1e-6
LATTICE_CROSSCHECK = 10**6
QUOTIENT_CAP = 10**4  # |a_n|^2 above this reads as unbounded growth on a prefix
K_APPROACH = Fraction(1, 10**6)


# -- helpers ------------------------------------------------------------------------------------


def _value(z: Any) -> Any:
    """A representative of ``z`` that supports ``q * z``."""
    if isinstance(z, QuadraticSurd):
        return z.as_l()
    if isinstance(z, BallSource):
        return z.at(256)
    return z


def _times(q: RingElement, zv: Any) -> Any:
    if isinstance(zv, LNumber):
        return zv * q
    if isinstance(zv, BallComplex):
        return zv * BallComplex.exact(q, zv.prec, q.ring)
    return as_k(q.ring, zv) * q


def _as_point(v: Any) -> Any:
    if isinstance(v, LNumber):
        return v.x if v.in_k() else v.to_surd()
    return v


def _nearest(ring: RingDescriptor, v: Any) -> RingElement:
    """Nearest ring element to ``v`` with the lexicographic tie-break."""
    pt = _Point(ring, _as_point(v))
    c = pt.approx
    cands = elements_in_disc(ring, KElement.from_reim(
        ring, Fraction(c.real).limit_denominator(1 << 40),
        Fraction(c.imag / (math.sqrt(ring.disc) / 2)).limit_denominator(1 << 40)), Fraction(3, 2) + 2 * pt.err)
    return nearest_in(pt, cands)


def _bounds(v: Any, prec: int = 128) -> tuple[Fraction, Fraction]:
    return abs_bounds(v, prec)


# -- oracle -------------------------------------------------------------------------------------


@dataclass(frozen=True)
class OracleRow:
    q: RingElement
    p: RingElement
    lo: Fraction
    hi: Fraction

    @property
    def approx(self) -> float:
        return float((self.lo + self.hi) / 2)

    def to_json(self) -> dict:
        return {"q": str(self.q), "p": str(self.p), "q_norm": self.q.norm(), "dist": self.approx,
                "dist_lo": str(self.lo), "dist_hi": str(self.hi)}


def best_approx_oracle(z: Any, qmax: int, ring: RingDescriptor | None = None,
                       limit: int = ENUM_LIMIT) -> list[OracleRow]:
    """For each ``q`` with ``1 <= |q|^2 <= qmax`` the nearest ``p`` to ``qz`` and ``|qz - p|``."""
    if qmax > limit:
        raise EnumerationLimit(f"qmax {qmax} exceeds the enumeration limit {limit}")
    ring = ring or z.ring
    zv = _value(z)
    rows = []
    for q in elements_in_disc(ring, 0, qmax):
        if q.is_zero():
            continue
        v = _times(q, zv)
        p = _nearest(ring, v)
        lo, hi = _bounds(v - p)
        rows.append(OracleRow(q, p, lo, hi))
    rows.sort(key=lambda r: (r.q.norm(), r.q.lex_key()))
    return rows


# -- the best-approximation inequality -----------------------------------------------------------


@dataclass
class AppVerdict:
    n: int
    theta: Any
    annulus: tuple[int, int]  # (|q_{n-1}|^2, |q_n|^2]
    checked: int
    margin_lo: Fraction  # rigorous lower bound of min |qz-p| / |q_n z - p_n| - (1 - theta_n)
    margin_approx: float
    worst_q: RingElement | None
    failures: list[str] = field(default_factory=list)
    exact_rechecks: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures and self.margin_lo >= 0

    def to_json(self) -> dict:
        return {"n": self.n, "theta": self.theta.to_json(), "annulus": list(self.annulus),
                "checked": self.checked, "margin_lo": str(self.margin_lo), "margin": self.margin_approx,
                "worst_q": None if self.worst_q is None else str(self.worst_q),
                "exact_rechecks": self.exact_rechecks, "failures": self.failures, "passed": self.passed}


def _ratio_bounds(zv: Any, q: RingElement, w_n: Any, prec: int) -> tuple[Fraction, Fraction, RingElement]:
    v = _times(q, zv)
    p = _nearest(q.ring, v)
    lo, hi = _bounds(v - p, prec)
    wlo, whi = _bounds(w_n, prec)
    return lo / whi, hi / wlo, p


def verify_app_pr(trace: ExpansionTrace, n: int, limit: int = SCREEN_LIMIT) -> AppVerdict:
    """``|qz - p| >= (1 - theta_n)|q_n z - p_n|`` over the annulus ``|q_{n-1}| < |q| <= |q_n|``.

    Every lattice ``q`` in the annulus is screened in floating point; those
    within a tolerance far above rounding error of the minimum or of the
    threshold are redone with rigorous enclosures.
    """
    if trace.backend != "exact":
        raise HypothesisFailed("the best-approximation check needs an exact trace")
    theta = compute_theta(trace, n)
    ring = trace.ring
    s = trace.steps[n]
    _, q_prev = trace.prev_pq(n)
    lo_norm, hi_norm = q_prev.norm(), s.q_norm
    if hi_norm > limit:
        raise EnumerationLimit(f"|q_n|^2 = {hi_norm} exceeds the enumeration limit {limit}")
    zv = trace.z.as_l()
    w_n = zv * s.q - s.p
    zf = complex(trace.z)
    wf = abs(complex(w_n.embed(64)))
    need = 1 - float(theta.lo)
    count, fmin, pts = kernels.annulus_screen(ring.trace, ring.gnorm, lo_norm, hi_norm, zf.real, zf.imag,
                                              1 / wf, SCREEN_TOL, need)
    failures: list[str] = []
    margin_lo: Fraction | None = None
    worst = None
    for a, b in pts:
        q = ring(a, b)
        prec = 128
        while True:
            rlo, rhi, p = _ratio_bounds(zv, q, w_n, prec)
            m_lo = rlo - (1 - theta.lo)
            m_hi = rhi - (1 - theta.lo)
            if m_lo >= 0 or m_hi < 0 or prec >= MAX_PREC:
                break
            prec *= 2
        if m_hi < 0:
            failures.append(f"q={q} p={p}")
        if margin_lo is None or m_lo < margin_lo:
            margin_lo, worst = m_lo, q
    if margin_lo is None:
        margin_lo = Fraction(0)
    return AppVerdict(n, theta, (lo_norm, hi_norm), count, margin_lo, fmin - need, worst, failures, len(pts))


# -- bad approximability on a prefix --------------------------------------------------------------


SQRT3 = math.sqrt(3)


@dataclass
class IterateFloor:
    """``inf |z_n|`` over ``n >= 1`` against the two constants ``1 + sqrt3`` and ``1 + 1/sqrt3``."""

    inf_lo: Fraction
    exceeds_1_plus_sqrt3: bool
    exceeds_1_plus_inv_sqrt3: bool

    def to_json(self) -> dict:
        return {"inf_abs_z": float(self.inf_lo), "gt_1_plus_sqrt3": self.exceeds_1_plus_sqrt3,
                "gt_1_plus_inv_sqrt3": self.exceeds_1_plus_inv_sqrt3}


def iterate_floor(trace: ExpansionTrace) -> IterateFloor:
    zs = [trace.z_at(n) for n in range(1, len(trace.steps) + 1)]
    inf_lo = min(_bounds(z)[0] for z in zs if z is not None)
    # 1 + sqrt3 < 2.7321 and 1 + 1/sqrt3 < 1.5774
    return IterateFloor(inf_lo, inf_lo > Fraction(27321, 10000), inf_lo > Fraction(15774, 10000))


@dataclass
class BadApproxVerdict:
    kind: str  # consistent-with-bad | K-approach-witness | inconclusive | hypotheses-failed
    reasons: list[str]
    sup_a_norm: int
    delta_prime: Fraction | None = None
    lam: Fraction | None = None
    delta_hat: Fraction | None = None
    n0: int | None = None
    witness: dict | None = None
    floor: IterateFloor | None = None

    def to_json(self) -> dict:
        def num(v: Any) -> Any:
            return None if v is None else {"exact": str(v), "approx": float(v)}

        return {"kind": self.kind, "reasons": self.reasons, "sup_abs_a": math.sqrt(self.sup_a_norm),
                "delta_prime": num(self.delta_prime), "lambda": num(self.lam), "delta_hat": num(self.delta_hat),
                "n0": self.n0, "witness": self.witness,
                "iterate_floor": None if self.floor is None else self.floor.to_json()}


def _quotient_growth(norms: list[int]) -> bool:
    if not norms:
        return False
    if max(norms) > QUOTIENT_CAP:
        return True
    head = norms[: max(1, 3 * len(norms) // 4)]
    tail = norms[len(head):]
    return bool(tail) and max(tail) > 4 * max(head) and max(tail) > 100


def badly_approximable_assess(trace: ExpansionTrace) -> BadApproxVerdict:
    """Check the hypotheses of the bounded-quotient criterion on a prefix and, when they
    hold, produce a constant ``delta_hat`` with ``|z - p_n/q_n| >= delta_hat / |q_n|^2``
    verified on every recorded step. This is a prefix certificate, never a proof."""
    norms = [0] + trace.q_norms
    if any(b < a for a, b in zip(norms, norms[1:])):
        raise MonotonicityRequired("|q_n| is not monotone on the trace")
    a_norms = [a.norm() for a in trace.a]
    sup_a = max(a_norms)
    if trace.backend == "external":
        kind = "inconclusive"
        why = ["unbounded quotients on the prefix"] if _quotient_growth(a_norms[1:]) else ["no iterates available"]
        return BadApproxVerdict(kind, why, sup_a)
    ring = trace.ring
    nu_lo = Fraction(math.isqrt(ring.nu_squared * 10**12), 10**6)
    reasons: list[str] = []
    floor = iterate_floor(trace)
    if floor.inf_lo <= 1:
        reasons.append("inf |z_n| > 1 fails on the prefix")
    steps = trace.steps
    n0 = len(steps) // 2
    tail_sup = max(_bounds(s.delta)[1] for s in steps[n0:])
    if tail_sup >= nu_lo:
        reasons.append("limsup |delta_n| < nu is not evident on the prefix")
    if reasons:
        return BadApproxVerdict("hypotheses-failed", reasons, sup_a, floor=floor)
    if _quotient_growth(a_norms[1:]):
        return BadApproxVerdict("inconclusive", ["unbounded quotients on the prefix"], sup_a, floor=floor)
    lows = [_bounds(s.delta)[0] for s in steps]
    n_min = min(range(len(lows)), key=lows.__getitem__)
    if _bounds(steps[n_min].delta)[1] < K_APPROACH:
        s = steps[n_min]
        return BadApproxVerdict("K-approach-witness", ["relative error collapses"], sup_a, floor=floor,
                                witness={"n": n_min, "p": str(s.p), "q": str(s.q),
                                         "delta_hi": float(_bounds(s.delta)[1])})
    # delta' = 1/(sup|a_{n+1}| + 2) from |z - p_n/q_n| >= |q_n|^-2 / (|a_{n+1}| + 2)
    sup_abs_a = Fraction(math.isqrt(sup_a * 10**12) + 1, 10**6)
    delta_prime = 1 / (sup_abs_a + 2)
    # lambda in (0, 1) with |z_n| > 1/lambda and |delta_n| < lambda nu for n >= n0
    inv_z = max(1 / _bounds(trace.z_at(n))[0] for n in range(n0, len(steps) + 1) if trace.z_at(n) is not None)
    lam = max(tail_sup / nu_lo, inv_z)
    if lam >= 1:
        return BadApproxVerdict("hypotheses-failed", ["no lambda < 1 on the tail"], sup_a, floor=floor)
    beta = 1 / (1 - lam)
    delta_hat = delta_prime / (beta * (sup_abs_a + 1))
    bad = [n for n, lo in enumerate(lows) if lo < delta_hat]
    if bad:
        return BadApproxVerdict("inconclusive", [f"prefix check fails at n={bad[0]}"], sup_a, delta_prime, lam,
                                delta_hat, n0, floor=floor)
    return BadApproxVerdict("consistent-with-bad", [], sup_a, delta_prime, lam, delta_hat, n0, floor=floor)


# -- norms and circles -------------------------------------------------------------------------------


def _kronecker_split(p: int, ring: RingDescriptor) -> int:
    """+1 split, 0 ramified, -1 inert, for a rational prime ``p``."""
    dk = ring.trace * ring.trace - 4 * ring.gnorm  # field discriminant of the order
    if dk % p == 0:
        return 0
    if p == 2:
        return 1 if dk % 8 == 1 else -1
    return 1 if pow(dk % p, (p - 1) // 2, p) == 1 else -1


@dataclass(frozen=True)
class NormResult:
    n: int
    ring: RingDescriptor
    is_norm: bool
    witness: RingElement | None
    factors: dict[int, int]
    obstructions: tuple[int, ...]  # inert primes with odd exponent

    def to_json(self) -> dict:
        return {"n": self.n, "ring": self.ring.code, "is_norm": self.is_norm,
                "witness": None if self.witness is None else str(self.witness),
                "factors": {str(p): e for p, e in self.factors.items()},
                "obstructions": list(self.obstructions)}


def is_norm(n: int, ring: RingDescriptor, limit: int = TRIAL_LIMIT) -> NormResult:
    """Whether ``n = |x|^2`` for some ``x`` in the ring, with a witness.

    Decided prime by prime: inert primes need even exponents. Witnesses
    multiply prime elements found by lattice search. Up to ``10**6`` the
    verdict is compared against a direct lattice search.
    """
    if n < 1:
        raise ValueError("n must be positive")
    fac = factor_int(n, limit)
    obstructions = []
    x = ring.one()
    for p, e in sorted(fac.items()):
        kind = _kronecker_split(p, ring)
        if kind < 0:
            if e % 2:
                obstructions.append(p)
            else:
                x = x * ring(p) ** (e // 2)
            continue
        hit = kernels.norm_search(p, ring.trace, ring.gnorm)
        if hit is None:
            raise AssertionError(f"{p} should be a norm in {ring.id}")
        x = x * ring(*hit) ** e
    ok = not obstructions
    witness = x if ok else None
    if ok:
        assert witness.norm() == n
    if n <= LATTICE_CROSSCHECK:
        direct = kernels.norm_search(n, ring.trace, ring.gnorm) is not None
        if direct != ok:
            raise AssertionError(f"local criterion and lattice search disagree on {n} in {ring.id}")
    return NormResult(n, ring, ok, witness, fac, tuple(obstructions))


@dataclass(frozen=True)
class CircleVerdict:
    ring: RingDescriptor
    center: KElement
    r2: Fraction
    kind: str  # certified-bad | contains-K-point
    s: NormResult
    t: NormResult
    witness: KElement | None = None

    def to_json(self) -> dict:
        out = {"ring": self.ring.code, "center": str(self.center), "r2": str(self.r2), "verdict": self.kind,
               "s": self.s.to_json(), "t": self.t.to_json()}
        if self.witness is not None:
            out["witness"] = str(self.witness)
            out["witness_pq"] = f"({self.s.witness})/({self.t.witness})"
            out["witness_check"] = str((self.witness - self.center).norm())
        return out


def certify_bad_circle(center: Any, r2: Any, ring: RingDescriptor, limit: int = TRIAL_LIMIT) -> CircleVerdict:
    """Every point of ``|z - center|^2 = r2`` is badly approximable iff ``r2 = s/t`` in
    lowest terms with ``s`` and ``t`` not both norms; otherwise return a point of K on it."""
    c = as_k(ring, center)
    r2 = Fraction(r2)
    if r2 <= 0:
        raise ValueError("r2 must be positive")
    s, t = is_norm(r2.numerator, ring, limit), is_norm(r2.denominator, ring, limit)
    if s.is_norm and t.is_norm:
        w = KElement.from_ring(s.witness) / KElement.from_ring(t.witness) + c
        if (w - c).norm() != r2:
            raise AssertionError("witness is not on the circle")
        return CircleVerdict(ring, c, r2, "contains-K-point", s, t, w)
    return CircleVerdict(ring, c, r2, "certified-bad", s, t)


__all__ = [
    "ENUM_LIMIT",
    "SCREEN_LIMIT",
    "AppVerdict",
    "BadApproxVerdict",
    "CircleVerdict",
    "IterateFloor",
    "NormResult",
    "OracleRow",
    "badly_approximable_assess",
    "best_approx_oracle",
    "certify_bad_circle",
    "is_norm",
    "iterate_floor",
    "verify_app_pr",
]
