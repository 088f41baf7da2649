"""Exact arithmetic in the quotient field K of a ring.

An element is ``(a + b*g) / d`` with integers ``a, b`` and ``d > 0`` in
lowest terms (``gcd(a, b, d) == 1``). That form is canonical, so structural
equality is field equality.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Any

from ..rings import RingDescriptor, RingElement, format_element, ring_by_name


def _make(ring: RingDescriptor, a: int, b: int, d: int) -> KElement:
    if d < 0:
        a, b, d = -a, -b, -d
    g = gcd(gcd(a, b), d)
    if g > 1:
        a //= g
        b //= g
        d //= g
    return KElement(ring, a, b, d)


@dataclass(frozen=True, slots=True, eq=False)
class KElement:
    ring: RingDescriptor
    a: int
    b: int
    d: int

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, KElement):
            return (self.ring, self.a, self.b, self.d) == (other.ring, other.a, other.b, other.d)
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and Fraction(self.a, self.d) == other
        if isinstance(other, RingElement):
            return self.ring is other.ring and self.d == 1 and (self.a, self.b) == (other.a, other.b)
        return NotImplemented

    def __hash__(self) -> int:
        # rationals hash like the matching Fraction so mixed dict keys agree
        if self.b == 0:
            return hash(Fraction(self.a, self.d))
        return hash((self.ring.code, self.a, self.b, self.d))

    @classmethod
    def from_ring(cls, x: RingElement) -> KElement:
        return KElement(x.ring, x.a, x.b, 1)

    @classmethod
    def from_rational(cls, ring: RingDescriptor, q: Any) -> KElement:
        q = Fraction(q)
        return KElement(ring, q.numerator, 0, q.denominator)

    @classmethod
    def from_coords(cls, ring: RingDescriptor, u: Any, v: Any) -> KElement:
        """``u + v*g`` for rationals ``u, v``."""
        u, v = Fraction(u), Fraction(v)
        d = u.denominator * v.denominator // gcd(u.denominator, v.denominator)
        return _make(ring, int(u * d), int(v * d), d)

    @classmethod
    def from_reim(cls, ring: RingDescriptor, re: Any, im_over_img: Any) -> KElement:
        """Element with real part ``re`` and imaginary part ``im_over_img * Im(g)``."""
        v = Fraction(im_over_img)
        return cls.from_coords(ring, Fraction(re) - v * Fraction(ring.trace, 2), v)

    def _coerce(self, other: Any) -> KElement:
        if isinstance(other, KElement):
            if other.ring is not self.ring:
                raise ValueError("mixing quotient fields of different rings")
            return other
        if isinstance(other, RingElement):
            return KElement.from_ring(other)
        if isinstance(other, (int, Fraction)):
            return KElement.from_rational(self.ring, other)
        return NotImplemented

    def __add__(self, other: Any) -> KElement:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.d == self.d:
            return _make(self.ring, self.a + o.a, self.b + o.b, self.d)
        return _make(self.ring, self.a * o.d + o.a * self.d, self.b * o.d + o.b * self.d, self.d * o.d)

    __radd__ = __add__

    def __neg__(self) -> KElement:
        return KElement(self.ring, -self.a, -self.b, self.d)

    def __sub__(self, other: Any) -> KElement:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> KElement:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: Any) -> KElement:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        t, m = self.ring.trace, self.ring.gnorm
        bd = self.b * o.b
        return _make(self.ring, self.a * o.a - m * bd, self.a * o.b + self.b * o.a + t * bd, self.d * o.d)

    __rmul__ = __mul__

    def conj(self) -> KElement:
        return KElement(self.ring, self.a + self.ring.trace * self.b, -self.b, self.d)

    def norm(self) -> Fraction:
        return Fraction(self.ring.norm_form(self.a, self.b), self.d * self.d)

    def inverse(self) -> KElement:
        n = self.ring.norm_form(self.a, self.b)
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in K")
        c = self.conj()
        # (a + bg)/d  ->  d * conj(a + bg) / N(a + bg)
        return _make(self.ring, c.a * self.d, c.b * self.d, n)

    def __truediv__(self, other: Any) -> KElement:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Any) -> KElement:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> KElement:
        if k < 0:
            return self.inverse() ** (-k)
        out = KElement(self.ring, 1, 0, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_integral(self) -> bool:
        return self.d == 1

    def to_ring(self) -> RingElement:
        if self.d != 1:
            raise ValueError(f"{self} is not in the ring")
        return RingElement(self.ring, self.a, self.b)

    @property
    def real(self) -> Fraction:
        return Fraction(2 * self.a + self.ring.trace * self.b, 2 * self.d)

    @property
    def imag_coeff(self) -> Fraction:
        """Imaginary part divided by ``Im(g)``."""
        return Fraction(self.b, self.d)

    def is_rational(self) -> bool:
        return self.b == 0

    def trace(self) -> Fraction:
        """``x + conj(x) = 2 Re x``."""
        return Fraction(2 * self.a + self.ring.trace * self.b, self.d)

    def coords(self) -> tuple[Fraction, Fraction]:
        return Fraction(self.a, self.d), Fraction(self.b, self.d)

    def __complex__(self) -> complex:
        re = float(Fraction(2 * self.a + self.ring.trace * self.b, 2 * self.d))
        return complex(re, float(Fraction(self.b, self.d)) * self.ring.g_complex.imag)

    def __str__(self) -> str:
        num = format_element(self.ring, self.a, self.b)
        if self.d == 1:
            return num
        if self.b != 0:
            num = f"({num})"
        return f"{num}/{self.d}"

    def __repr__(self) -> str:
        return f"<K_{self.ring.code} {self}>"

    def to_json(self) -> dict:
        return {"ring": self.ring.code, "a": str(self.a), "b": str(self.b), "d": str(self.d)}

    @classmethod
    def from_json(cls, obj: dict) -> KElement:
        return _make(ring_by_name(obj["ring"]), int(obj["a"]), int(obj["b"]), int(obj["d"]))


def as_k(ring: RingDescriptor, x: Any) -> KElement:
    if isinstance(x, KElement):
        return x
    if isinstance(x, RingElement):
        return KElement.from_ring(x)
    if isinstance(x, (int, Fraction)):
        return KElement.from_rational(ring, x)
    if isinstance(x, str):
        return parse_k(ring, x)
    raise TypeError(f"cannot read {x!r} as an element of K")


_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*(i|w|s2|g7|g11)?")


def parse_ring_expr(ring: RingDescriptor, text: str) -> KElement:
    """Parse ``'2+3i'``, ``'-1/2+w'``, ``'3'`` ... into an element of K (no parentheses)."""
    sym = {"G": "i", "E": "w", "S2": "s2", "S7": "g7", "S11": "g11"}[ring.code]
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty expression")
    pos = 0
    u = Fraction(0)
    v = Fraction(0)
    while pos < len(s):
        mt = _TERM.match(s, pos)
        if mt is None or mt.end() == pos:
            raise ValueError(f"cannot parse {text!r}")
        sign, num, gen = mt.groups()
        if num is None and gen is None:
            raise ValueError(f"cannot parse {text!r}")
        if gen is not None and gen != sym:
            raise ValueError(f"generator {gen!r} does not belong to ring {ring.id}")
        val = Fraction(num) if num is not None else Fraction(1)
        if sign == "-":
            val = -val
        if gen is None:
            u += val
        else:
            v += val
        pos = mt.end()
    return KElement.from_coords(ring, u, v)


def parse_k(ring: RingDescriptor, text: str) -> KElement:
    """Parse ``'p'`` or ``'(p)/(q)'`` where p, q are ring expressions."""
    s = text.replace(" ", "")
    depth = 0
    for idx, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0 and idx > 0 and s[idx - 1] == ")":
            return parse_k(ring, s[:idx]) / parse_k(ring, s[idx + 1:])
    if s.startswith("(") and s.endswith(")"):
        return parse_k(ring, s[1:-1])
    return parse_ring_expr(ring, s)
