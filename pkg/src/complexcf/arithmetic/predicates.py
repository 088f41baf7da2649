"""Exact and rigorous sign tests for Hermitian polynomials.

Every geometric predicate in the package reduces to the sign of

    P(w) = alpha*|w|^2 + 2*Re(conj(beta)*w) + gamma

with ``alpha, gamma`` rational and ``beta`` in K. Discs, half-planes and
their inverses all have this shape.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Any

from ..errors import PrecisionExhausted
from ..rings import RingElement
from .ball import MAX_PREC, BallComplex, BallSource, ceil_sqrt
from .kfield import KElement, as_k
from .surd import LNumber, QuadraticSurd, embed

START_PREC = 64
_SQRT_BITS = 64


def _sqrt_upper(q: Fraction) -> Fraction:
    return Fraction(ceil_sqrt(q * (1 << (2 * _SQRT_BITS))), 1 << _SQRT_BITS)


def _sign(x: Fraction | int) -> int:
    return (x > 0) - (x < 0)


def eval_exact(w: KElement, alpha: Fraction, beta: KElement, gamma: Fraction) -> Fraction:
    return alpha * w.norm() + (beta.conj() * w).trace() + gamma


def eval_ball(b: BallComplex, alpha: Fraction, beta: KElement, gamma: Fraction) -> int | None:
    """Sign of P on every point of the ball, or None when it changes or cannot be told."""
    c = b.center_k()
    val = eval_exact(c, alpha, beta, gamma)
    if b.rad == 0:
        return _sign(val)
    r = b.radius()
    c_abs = _sqrt_upper(c.norm())
    bound = abs(alpha) * (2 * c_abs * r + r * r) + 2 * _sqrt_upper(beta.norm()) * r
    if val > bound:
        return 1
    if val < -bound:
        return -1
    return None


@lru_cache(maxsize=65536)
def _embed_cached(z: QuadraticSurd, prec: int) -> BallComplex:
    return embed(z, prec)


def surd_is_zero(z: QuadraticSurd, alpha: Fraction, beta: KElement, gamma: Fraction) -> bool:
    """Exact test of ``P(z) == 0`` for a quadratic surd ``z``.

    P(z) = 0 means ``conj(z) = w`` with ``w = -(conj(beta) z + gamma) / (alpha z + beta)``.
    ``conj(z)`` is a root of ``t^2 - 2 conj(x) t + conj(x)^2 - conj(y)^2 conj(delta)``,
    so ``w`` must be a root of that polynomial; the two candidates are then
    told apart numerically since they differ by ``2 conj(y) conj(sqrt(delta)) != 0``.
    """
    if alpha == 0 and beta.is_zero():
        return gamma == 0
    zl = z.as_l()
    den = zl * alpha + beta
    w = -(zl * beta.conj() + gamma) / den
    xb, yb, db = z.conj_value()
    q = w * w - w * (xb * 2) + (xb * xb - yb * yb * KElement.from_ring(db))
    if not q.is_zero():
        return False
    prec = START_PREC
    while prec <= MAX_PREC:
        zc = _embed_cached(z, prec).conj()
        wb = w.embed(prec)
        other = BallComplex.exact(xb * 2, prec, z.ring) - zc
        hit, miss = wb.overlaps(zc), wb.overlaps(other)
        if hit != miss:
            return hit
        prec *= 2
    raise PrecisionExhausted("could not separate the conjugate roots")


def hermitian_sign(point: Any, alpha: Any, beta: Any, gamma: Any, max_prec: int = MAX_PREC) -> int:
    """Sign of ``alpha*|w|^2 + 2 Re(conj(beta) w) + gamma`` at ``point``.

    Exact for K points and surds. For a fixed ball the sign must be constant
    on the ball or :class:`PrecisionExhausted` is raised; a
    :class:`BallSource` is refined by doubling precision up to ``max_prec``.
    """
    alpha = Fraction(alpha)
    gamma = Fraction(gamma)
    if isinstance(point, (KElement, RingElement)):
        ring = point.ring
        return _sign(eval_exact(as_k(ring, point), alpha, as_k(ring, beta), gamma))
    ring = point.ring
    beta = as_k(ring, beta)
    if isinstance(point, LNumber):
        if point.in_k():
            return _sign(eval_exact(point.x, alpha, beta, gamma))
        point = point.to_surd()
    if isinstance(point, QuadraticSurd):
        s = eval_ball(_embed_cached(point, START_PREC), alpha, beta, gamma)
        if s is not None:
            return s
        if surd_is_zero(point, alpha, beta, gamma):
            return 0
        prec = 2 * START_PREC
        while prec <= max_prec:
            s = eval_ball(_embed_cached(point, prec), alpha, beta, gamma)
            if s is not None:
                return s
            prec *= 2
        raise PrecisionExhausted(f"sign undecided at {max_prec} bits")
    if isinstance(point, BallComplex):
        s = eval_ball(point, alpha, beta, gamma)
        if s is None:
            raise PrecisionExhausted("ball straddles the boundary")
        return s
    if isinstance(point, BallSource):
        prec = START_PREC
        while prec <= max_prec:
            b = point.at(prec)
            s = eval_ball(b, alpha, beta, gamma)
            if s is not None:
                return s
            if point.fixed:
                break
            prec *= 2
        raise PrecisionExhausted("ball straddles the boundary")
    raise TypeError(f"unsupported point type {type(point).__name__}")


def ball_sign(b: BallComplex, alpha: Any, beta: Any, gamma: Any) -> int | None:
    """Three-valued variant for balls: None when undecided."""
    return eval_ball(b, Fraction(alpha), as_k(b.ring, beta), Fraction(gamma))
