"""Rigorous complex balls with dyadic centers.

A ball stores its center in the ring basis ``(1, g)`` as integers scaled by
``2**-prec`` and a radius as an integer count of the same ulps. Working in
the ring basis keeps embeddings of K exact up to a single rounding, with no
irrational basis change. All operations round outward.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

import mpmath

from ..errors import ContainsZero, PrecisionExhausted
from ..rings import RingDescriptor, RingElement, ring_by_name
from .kfield import KElement, as_k

DEFAULT_PREC = 128
MAX_PREC = 4096


def ceil_sqrt(q: Fraction | int) -> int:
    """Smallest integer ``s`` with ``s*s >= q`` for a nonnegative rational ``q``."""
    q = Fraction(q)
    if q <= 0:
        return 0
    n = -((-q.numerator) // q.denominator)
    s = math.isqrt(n)
    return s if s * s >= q else s + 1


def floor_sqrt(q: Fraction | int) -> int:
    q = Fraction(q)
    if q <= 0:
        return 0
    return math.isqrt(q.numerator // q.denominator)


def _round_div(n: int, d: int) -> int:
    """Nearest integer to n/d for d > 0 (ties upward)."""
    return (2 * n + d) // (2 * d)


def _ceil_div(n: int, d: int) -> int:
    return -((-n) // d)


@dataclass(frozen=True, slots=True)
class BallComplex:
    ring: RingDescriptor
    u: int
    v: int
    prec: int
    rad: int  # radius in ulps of 2**-prec, an upper bound

    # -- construction -------------------------------------------------------

    @classmethod
    def exact(cls, x: Any, prec: int = DEFAULT_PREC, ring: RingDescriptor | None = None) -> BallComplex:
        """Smallest-effort enclosure of a ring or field element."""
        if ring is None:
            ring = x.ring
        k = as_k(ring, x)
        scale = 1 << prec
        if k.d == 1:
            return cls(ring, k.a << prec, k.b << prec, prec, 0)
        u = _round_div(k.a * scale, k.d)
        v = _round_div(k.b * scale, k.d)
        exact = (u * k.d == k.a * scale) and (v * k.d == k.b * scale)
        return cls(ring, u, v, prec, 0 if exact else 2)

    @classmethod
    def from_reim(cls, ring: RingDescriptor, re: Any, im: Any, radius: Any = 0,
                  prec: int = DEFAULT_PREC) -> BallComplex:
        """Ball around ``re + i*im`` (rationals) with rational radius."""
        re, im, radius = Fraction(re), Fraction(im), Fraction(radius)
        # v = 2 im / sqrt(disc); sqrt(disc) ~ s / 2**q
        q = prec + 32
        s = math.isqrt(ring.disc << (2 * q))
        vnum = 2 * im * (1 << (prec + q))
        v = _round_div(vnum.numerator, vnum.denominator * s)
        # relative error of s is below 2**-q, so |v - v_true| <= |v| 2**-q + 1
        v_err = (abs(v) >> q) + 2
        unum = re * (1 << prec) - Fraction(ring.trace * v, 2)
        u = _round_div(unum.numerator, unum.denominator)
        # imaginary error: v_err * sqrt(disc)/2 <= 2 v_err; real error <= 1
        rad = ceil_sqrt(radius * radius * (1 << (2 * prec))) + 2 * v_err + 2
        return cls(ring, u, v, prec, rad)

    @classmethod
    def from_mpc(cls, ring: RingDescriptor, z: Any, prec: int, radius: int = 0) -> BallComplex:
        """Center from an mpmath value; ``radius`` in ulps is the caller's claim."""
        with mpmath.workprec(prec + 64):
            z = mpmath.mpc(z)
            v = z.imag * 2 / mpmath.sqrt(ring.disc)
            u = z.real - v * mpmath.mpf(ring.trace) / 2
            scale = mpmath.mpf(2) ** prec
            return cls(ring, int(mpmath.nint(u * scale)), int(mpmath.nint(v * scale)), prec, radius)

    # -- inspection ---------------------------------------------------------

    def center_k(self) -> KElement:
        return KElement.from_coords(self.ring, Fraction(self.u, 1 << self.prec), Fraction(self.v, 1 << self.prec))

    def radius(self) -> Fraction:
        return Fraction(self.rad, 1 << self.prec)

    def _norm_ulps(self) -> int:
        return self.ring.norm_form(self.u, self.v)

    def _abs_hi_ulps(self) -> int:
        return math.isqrt(self._norm_ulps()) + 1

    def _abs_lo_ulps(self) -> int:
        return math.isqrt(self._norm_ulps())

    def abs_upper(self) -> Fraction:
        return Fraction(self._abs_hi_ulps() + self.rad, 1 << self.prec)

    def abs_lower(self) -> Fraction:
        return Fraction(max(0, self._abs_lo_ulps() - self.rad), 1 << self.prec)

    def contains_zero(self) -> bool:
        return self._norm_ulps() <= self.rad * self.rad

    def contains(self, x: Any) -> bool:
        """Exact test for a K point (or anything ``as_k`` accepts)."""
        if isinstance(x, BallComplex):
            return self.contains_ball(x)
        k = as_k(self.ring, x)
        return (k - self.center_k()).norm() <= self.radius() ** 2

    def contains_ball(self, other: BallComplex) -> bool:
        d2 = (other.center_k() - self.center_k()).norm()
        gap = self.radius() - other.radius()
        return gap >= 0 and d2 <= gap * gap

    def overlaps(self, other: BallComplex) -> bool:
        d2 = (other.center_k() - self.center_k()).norm()
        s = self.radius() + other.radius()
        return d2 <= s * s

    def __complex__(self) -> complex:
        return complex(self.center_k())

    def to_mpc(self) -> Any:
        g = self.ring.g_complex
        with mpmath.workprec(self.prec + 16):
            sc = mpmath.mpf(2) ** (-self.prec)
            return (self.u + self.v * mpmath.mpc(g.real, mpmath.sqrt(self.ring.disc) / 2)) * sc

    def real_interval(self) -> tuple[Fraction, Fraction]:
        c = self.center_k().real
        r = self.radius()
        return c - r, c + r

    # -- precision ----------------------------------------------------------

    def with_prec(self, prec: int) -> BallComplex:
        if prec == self.prec:
            return self
        if prec > self.prec:
            s = prec - self.prec
            return BallComplex(self.ring, self.u << s, self.v << s, prec, self.rad << s)
        d = 1 << (self.prec - prec)
        return BallComplex(self.ring, _round_div(self.u, d), _round_div(self.v, d), prec,
                           _ceil_div(self.rad, d) + 2)

    def _align(self, other: BallComplex) -> tuple[BallComplex, BallComplex]:
        if other.ring is not self.ring:
            raise ValueError("balls over different rings")
        p = max(self.prec, other.prec)
        return self.with_prec(p), other.with_prec(p)

    def _lift(self, other: Any) -> BallComplex:
        if isinstance(other, BallComplex):
            return other
        if isinstance(other, (RingElement, KElement, int, Fraction)):
            return BallComplex.exact(other, self.prec, self.ring)
        return NotImplemented

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: Any) -> BallComplex:
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        x, y = self._align(o)
        return BallComplex(x.ring, x.u + y.u, x.v + y.v, x.prec, x.rad + y.rad)

    __radd__ = __add__

    def __neg__(self) -> BallComplex:
        return BallComplex(self.ring, -self.u, -self.v, self.prec, self.rad)

    def __sub__(self, other: Any) -> BallComplex:
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> BallComplex:
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: Any) -> BallComplex:
        if isinstance(other, RingElement):
            # exact scaling, no rounding of the center
            t, m = self.ring.trace, self.ring.gnorm
            bd = self.v * other.b
            u = self.u * other.a - m * bd
            v = self.u * other.b + self.v * other.a + t * bd
            return BallComplex(self.ring, u, v, self.prec, self.rad * (math.isqrt(other.norm()) + 1))
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        x, y = self._align(o)
        t, m = x.ring.trace, x.ring.gnorm
        bd = x.v * y.v
        big_u = x.u * y.u - m * bd
        big_v = x.u * y.v + x.v * y.u + t * bd
        p = x.prec
        scale = 1 << p
        u = _round_div(big_u, scale)
        v = _round_div(big_v, scale)
        spread = x._abs_hi_ulps() * y.rad + y._abs_hi_ulps() * x.rad + x.rad * y.rad
        # rounding both coordinates moves the center by at most (1 + |g|)/2 < 2 ulps
        return BallComplex(x.ring, u, v, p, _ceil_div(spread, scale) + 2)

    __rmul__ = __mul__

    def inv(self) -> BallComplex:
        n = self._norm_ulps()
        lo = math.isqrt(n)
        if lo <= self.rad:
            raise ContainsZero("ball may contain 0")
        p = self.prec
        sq = 1 << (2 * p)
        cu = self.u + self.ring.trace * self.v
        cv = -self.v
        u = _round_div(cu * sq, n)
        v = _round_div(cv * sq, n)
        # r / (|c| (|c| - r)) converted to ulps
        rad = _ceil_div(self.rad * sq, lo * (lo - self.rad)) + 2 if self.rad else 2
        return BallComplex(self.ring, u, v, p, rad)

    def __truediv__(self, other: Any) -> BallComplex:
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other: Any) -> BallComplex:
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inv()

    def conj(self) -> BallComplex:
        return BallComplex(self.ring, self.u + self.ring.trace * self.v, -self.v, self.prec, self.rad)

    def abs2_interval(self) -> tuple[Fraction, Fraction]:
        lo, hi = self.abs_lower(), self.abs_upper()
        return lo * lo, hi * hi

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "ring": self.ring.code,
            "prec": self.prec,
            "u": _hex_dyadic(self.u, self.prec),
            "v": _hex_dyadic(self.v, self.prec),
            "rad": _hex_dyadic(self.rad, self.prec),
        }

    @classmethod
    def from_json(cls, obj: dict) -> BallComplex:
        prec = int(obj["prec"])
        return cls(ring_by_name(obj["ring"]), _parse_hex(obj["u"], prec), _parse_hex(obj["v"], prec), prec,
                   _parse_hex(obj["rad"], prec))

    def __str__(self) -> str:
        z = complex(self)
        return f"[{z.real:.12g}{z.imag:+.12g}i +/- {float(self.radius()):.3g}]"

    def __repr__(self) -> str:
        return f"<Ball_{self.ring.code} {self} @{self.prec}>"


def _hex_dyadic(n: int, prec: int) -> str:
    sign = "-" if n < 0 else ""
    return f"{sign}0x{abs(n):x}p-{prec}"


def _parse_hex(s: str, prec: int) -> int:
    sign = -1 if s.startswith("-") else 1
    body = s.lstrip("+-")
    mant, _, exp = body.partition("p")
    shift = prec + int(exp) if exp else prec
    n = int(mant, 16)
    if shift < 0:
        if n & ((1 << -shift) - 1):
            raise ValueError(f"{s} is not representable at {prec} bits")
        return sign * (n >> -shift)
    return sign * (n << shift)


def ball_inv(w: BallComplex) -> BallComplex:
    return w.inv()


def ball_sqrt(delta: Any, prec: int, ring: RingDescriptor | None = None) -> BallComplex:
    """Enclosure of the square root of a nonzero K element under the branch convention.

    The branch has positive imaginary part, or positive real part when the
    root is real. The error bound comes from the exact residual
    ``e = |w^2 - delta|`` of the floating guess ``w``: the nearer root lies
    within ``e / |w|`` of ``w`` whenever ``e < |w|^2``.
    """
    if ring is None:
        ring = delta.ring
    dk = as_k(ring, delta)
    if dk.is_zero():
        return BallComplex.exact(0, prec, ring)
    work = prec + 16
    while True:
        with mpmath.workprec(work + 32):
            guess = mpmath.sqrt(mpmath.mpc(complex(0)) + _k_to_mpc(dk))
            if guess.imag < 0 or (guess.imag == 0 and guess.real < 0):
                guess = -guess
        w = BallComplex.from_mpc(ring, guess, work)
        wk = w.center_k()
        resid = (wk * wk - dk).norm()  # e^2, exact
        wn = wk.norm()
        if resid < wn * wn:
            # d^2 <= e^2 / |w|^2, in ulps
            d = ceil_sqrt(resid / wn * (1 << (2 * work))) + 1
            ball = BallComplex(ring, w.u, w.v, work, d)
            if _branch_ok(ball, dk):
                return ball.with_prec(prec) if prec < work else ball
        work *= 2
        if work > 4 * MAX_PREC:
            raise PrecisionExhausted("square root enclosure failed to converge")


def _branch_ok(ball: BallComplex, dk: KElement) -> bool:
    """The ball must exclude the other root, i.e. sit strictly in the branch half-plane."""
    if dk.is_rational() and dk.real > 0:
        return True  # real root, guess already has positive real part and ball excludes -root
    # imaginary part of center is v * sqrt(disc)/2 in ulps; need it > rad
    return ball.v > 0 and ball.v * ball.v * ball.ring.disc > 4 * ball.rad * ball.rad


def _k_to_mpc(k: KElement) -> Any:
    g = k.ring
    return (mpmath.mpf(k.a) + mpmath.mpf(k.b) * mpmath.mpc(mpmath.mpf(g.trace) / 2, mpmath.sqrt(g.disc) / 2)) / k.d


@dataclass(frozen=True)
class BallSource:
    """A point that can be enclosed at any requested precision.

    ``fixed`` sources wrap a single ball whose radius cannot shrink; asking
    them for more precision returns the same ball.
    """

    ring: RingDescriptor
    make: Callable[[int], BallComplex]
    fixed: bool = False
    label: str = "ball"

    def at(self, prec: int) -> BallComplex:
        return self.make(prec)

    @classmethod
    def of_ball(cls, ball: BallComplex, label: str = "ball") -> BallSource:
        return cls(ball.ring, lambda _p: ball, True, label)


def circle_point(ring: RingDescriptor, r2: Any, angle_over_pi: Any) -> BallSource:
    """``sqrt(r2) * exp(i*pi*angle)`` enclosed with mpmath interval arithmetic."""
    r2 = Fraction(r2)
    ang = Fraction(angle_over_pi)

    def make(prec: int) -> BallComplex:
        # 64 guard bits; each mp op is within a few ulps of the working precision,
        # so the total error stays far below one ulp at ``prec``
        with mpmath.workprec(prec + 64):
            mag = mpmath.sqrt(mpmath.mpf(r2.numerator) / r2.denominator)
            t = mpmath.mpf(ang.numerator) / ang.denominator
            z = mpmath.mpc(mag * mpmath.cospi(t), mag * mpmath.sinpi(t))
        # basis rounding costs at most one ulp per coordinate
        return BallComplex.from_mpc(ring, z, prec, radius=4 + 2 * math.isqrt(int(r2) + 1))

    return BallSource(ring, make, False, f"sqrt({r2})*exp(i*pi*{ang})")
