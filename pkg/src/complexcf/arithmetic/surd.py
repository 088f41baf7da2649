"""Exact quadratic surds ``x + y*sqrt(D)`` over the quotient field K.

``D`` is kept squarefree and normalized over unit squares, and ``x, y`` are
canonical K elements, so equal surds are structurally equal. The square root
follows a fixed branch: positive imaginary part, or positive real part when
the root is real.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any

from ..errors import (
    IncomparableDiscriminants,
    PrecisionExhausted,
    ReduciblePolynomial,
    ZeroLeadingCoefficient,
)
from ..rings import RingDescriptor, RingElement, ring_by_name
from .ball import MAX_PREC, BallComplex, ball_sqrt
from .factor import squarefree_part
from .kfield import KElement, as_k

BRANCH_ALIASES = {
    "plus": 1,
    "+": 1,
    "positive-imaginary": 1,
    "minus": -1,
    "-": -1,
    "negative-imaginary": -1,
}


def _branch_sign(tag: Any) -> int:
    if tag in (1, -1):
        return int(tag)
    try:
        return BRANCH_ALIASES[str(tag)]
    except KeyError:
        raise ValueError(f"unknown branch tag {tag!r}") from None


def _sqrt_sign(lhs, rhs, ring: RingDescriptor) -> int:
    """Given callables prec -> ball for two numbers known to satisfy lhs = ±rhs, return the sign."""
    prec = 64
    while prec <= MAX_PREC:
        a, b = lhs(prec), rhs(prec)
        plus = a.overlaps(b)
        minus = a.overlaps(-b)
        if plus and not minus:
            return 1
        if minus and not plus:
            return -1
        prec *= 2
    raise PrecisionExhausted("could not separate a square root from its negative")


@lru_cache(maxsize=4096)
def _canonical_disc(delta: RingElement) -> tuple[RingElement, KElement, int]:
    """``sqrt(delta) = sign * k * sqrt(s)`` with ``s`` the canonical squarefree class of ``delta``."""
    s, k = squarefree_part(delta)
    kk = KElement.from_ring(k)
    sign = _sqrt_sign(lambda p: ball_sqrt(delta, p), lambda p: ball_sqrt(s, p) * k, delta.ring)
    return s, kk, sign


def k_sqrt(q: KElement) -> KElement | None:
    """A square root of ``q`` in K, or None when ``q`` is not a square."""
    if q.is_zero():
        return q
    ring = q.ring
    gamma = RingElement(ring, q.a * q.d, q.b * q.d)  # q * d^2
    s, k = squarefree_part(gamma)
    if s != ring.one():
        return None
    # gamma = k^2, up to the unit square absorbed into s == 1
    return KElement.from_ring(k) / q.d


@dataclass(frozen=True, slots=True)
class LNumber:
    """Element ``x + y*sqrt(delta)`` of the quadratic extension ``K(sqrt(delta))``."""

    delta: RingElement
    x: KElement
    y: KElement

    @property
    def ring(self) -> RingDescriptor:
        return self.delta.ring

    def _coerce(self, other: Any) -> LNumber:
        if isinstance(other, LNumber):
            if other.delta != self.delta:
                raise IncomparableDiscriminants("different quadratic extensions")
            return other
        if isinstance(other, QuadraticSurd):
            return self._coerce(other.as_l())
        if isinstance(other, (KElement, RingElement, int, Fraction)):
            return LNumber(self.delta, as_k(self.ring, other), KElement(self.ring, 0, 0, 1))
        return NotImplemented

    def __add__(self, other: Any) -> LNumber:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return LNumber(self.delta, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __neg__(self) -> LNumber:
        return LNumber(self.delta, -self.x, -self.y)

    def __sub__(self, other: Any) -> LNumber:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> LNumber:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: Any) -> LNumber:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = KElement.from_ring(self.delta)
        return LNumber(self.delta, self.x * o.x + self.y * o.y * d, self.x * o.y + self.y * o.x)

    __rmul__ = __mul__

    def galois(self) -> LNumber:
        """The other root: ``x - y*sqrt(delta)``."""
        return LNumber(self.delta, self.x, -self.y)

    def rel_norm(self) -> KElement:
        return self.x * self.x - self.y * self.y * KElement.from_ring(self.delta)

    def inverse(self) -> LNumber:
        n = self.rel_norm()
        if n.is_zero():
            raise ZeroDivisionError("inverse of 0 in K(sqrt(delta))")
        inv = n.inverse()
        return LNumber(self.delta, self.x * inv, -self.y * inv)

    def __truediv__(self, other: Any) -> LNumber:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Any) -> LNumber:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def is_zero(self) -> bool:
        return self.x.is_zero() and self.y.is_zero()

    def in_k(self) -> bool:
        return self.y.is_zero()

    def embed(self, prec: int) -> BallComplex:
        return _embed_xy(self.delta, self.x, self.y, prec)

    def to_surd(self) -> QuadraticSurd:
        return QuadraticSurd(self.delta, self.x, self.y)


def _embed_xy(delta: RingElement, x: KElement, y: KElement, prec: int) -> BallComplex:
    ring = delta.ring
    if y.is_zero():
        return BallComplex.exact(x, prec, ring)
    n = y.norm()
    extra = (n.numerator // n.denominator).bit_length() // 2 + 8
    work = prec + extra
    while True:
        b = BallComplex.exact(x, work, ring) + ball_sqrt(delta, work) * BallComplex.exact(y, work, ring)
        out = b.with_prec(prec)
        if out.rad <= 16:
            return out
        work += prec // 2 + 8


@dataclass(frozen=True, slots=True)
class QuadraticSurd:
    """``x + y*sqrt(delta)`` with ``y != 0`` and ``delta`` a squarefree non-square."""

    delta: RingElement
    x: KElement
    y: KElement

    @property
    def ring(self) -> RingDescriptor:
        return self.delta.ring

    @classmethod
    def make(cls, delta: RingElement, x: Any, y: Any) -> QuadraticSurd:
        """Build from an arbitrary discriminant, normalizing it."""
        ring = delta.ring
        x, y = as_k(ring, x), as_k(ring, y)
        if delta.is_zero():
            raise ReduciblePolynomial("discriminant is 0")
        s, k, sign = _canonical_disc(delta)
        if s == ring.one():
            raise ReduciblePolynomial(f"discriminant {delta} is a square in K")
        if y.is_zero():
            raise ValueError("y must be nonzero for a surd")
        return cls(s, x, y * k * sign)

    def as_l(self) -> LNumber:
        return LNumber(self.delta, self.x, self.y)

    def key(self) -> tuple:
        return (self.x.a, self.x.b, self.x.d, self.y.a, self.y.b, self.y.d)

    def step(self, a: RingElement) -> QuadraticSurd:
        return surd_step(self, a)

    def minimal_poly(self) -> tuple[RingElement, RingElement, RingElement]:
        """Primitive integral ``(A, B, C)`` with ``A z^2 + B z + C = 0``."""
        c0 = self.x * self.x - self.y * self.y * KElement.from_ring(self.delta)
        c1 = self.x * (-2)
        lcm = 1
        for q in (c0, c1):
            lcm = lcm * q.d // _gcd(lcm, q.d)
        a_ = KElement.from_rational(self.ring, lcm)
        coeffs = [a_, c1 * lcm, c0 * lcm]
        content = 0
        for q in coeffs:
            content = _gcd(content, _gcd(q.a, q.b))
        out = tuple(RingElement(self.ring, q.a // content, q.b // content) for q in coeffs)
        return out  # type: ignore[return-value]

    def branch_of_poly(self) -> int:
        """Sign ``s`` with ``z = (-B + s*sqrt(B^2-4AC)) / 2A`` for the minimal polynomial."""
        a_, b_, c_ = self.minimal_poly()
        disc = b_ * b_ - 4 * a_ * c_
        # sqrt(disc) = ±(2 A y) sqrt(delta)
        scale = KElement.from_ring(a_) * self.y * 2
        return _sqrt_sign(
            lambda p: ball_sqrt(disc, p),
            lambda p: ball_sqrt(self.delta, p) * BallComplex.exact(scale, p, self.ring),
            self.ring,
        )

    def embed(self, prec: int) -> BallComplex:
        return embed(self, prec)

    def conj_value(self) -> tuple[KElement, KElement, RingElement]:
        """Complex conjugate as data: ``conj(x) + conj(y) * conj(sqrt(delta))``."""
        return self.x.conj(), self.y.conj(), self.delta.conj()

    def __complex__(self) -> complex:
        return complex(self.embed(64))

    def __str__(self) -> str:
        return f"{self.x} + ({self.y})*sqrt({self.delta})"

    def __repr__(self) -> str:
        return f"<Surd_{self.ring.code} {self}>"

    def to_json(self) -> dict:
        a_, b_, c_ = self.minimal_poly()
        return {
            "ring": self.ring.code,
            "poly": [[a_.a, a_.b], [b_.a, b_.b], [c_.a, c_.b]],
            "branch": "plus" if self.branch_of_poly() > 0 else "minus",
        }

    @classmethod
    def from_json(cls, obj: dict) -> QuadraticSurd:
        ring = ring_by_name(obj["ring"])
        coeffs = []
        for c in obj["poly"]:
            if isinstance(c, (list, tuple)):
                coeffs.append(ring(int(c[0]), int(c[1])))
            elif isinstance(c, dict):
                coeffs.append(RingElement.from_json(c))
            else:
                coeffs.append(ring(int(c), 0))
        return surd_from_poly(*coeffs, branch=obj.get("branch", "plus"))


def _gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def surd_from_poly(a: Any, b: Any, c: Any, branch: Any = "plus", ring: RingDescriptor | None = None) -> QuadraticSurd:
    """The root ``(-b + s*sqrt(b^2 - 4ac)) / 2a`` where ``s`` is the branch sign."""
    if ring is None:
        ring = next(v.ring for v in (a, b, c) if isinstance(v, (RingElement, KElement)))
    a, b, c = (_as_ring(ring, v) for v in (a, b, c))
    if a.is_zero():
        raise ZeroLeadingCoefficient("leading coefficient is 0")
    s = _branch_sign(branch)
    delta = b * b - 4 * a * c
    if delta.is_zero():
        raise ReduciblePolynomial("double root lies in K")
    two_a = KElement.from_ring(a) * 2
    x = KElement.from_ring(-b) / two_a
    y = KElement.from_rational(ring, s) / two_a
    return QuadraticSurd.make(delta, x, y)


def _as_ring(ring: RingDescriptor, v: Any) -> RingElement:
    if isinstance(v, RingElement):
        return v
    if isinstance(v, int):
        return ring(v, 0)
    k = as_k(ring, v)
    return k.to_ring()


def surd_step(z: QuadraticSurd, a: RingElement) -> QuadraticSurd:
    """``(z - a)^{-1}`` exactly."""
    xa = z.x - a
    n = xa * xa - z.y * z.y * KElement.from_ring(z.delta)
    inv = n.inverse()
    return QuadraticSurd(z.delta, xa * inv, -z.y * inv)


def surd_equals(u: QuadraticSurd, v: QuadraticSurd) -> bool:
    if u.ring is not v.ring:
        raise IncomparableDiscriminants("surds over different rings")
    if u.delta != v.delta:
        raise IncomparableDiscriminants(f"discriminants {u.delta} and {v.delta} differ by a non-square")
    return u.x == v.x and u.y == v.y


def embed(z: QuadraticSurd | LNumber | KElement, prec: int) -> BallComplex:
    """Ball of radius at most ``2**(4 - prec)`` around ``z``."""
    if isinstance(z, KElement):
        return BallComplex.exact(z, prec)
    return _embed_xy(z.delta, z.x, z.y, prec)
