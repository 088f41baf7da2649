"""Euclidean imaginary-quadratic rings, their elements, norms and symmetries.

A ring is ``Z[g]`` where the second generator satisfies ``g^2 = t*g - m``.
Elements are stored as integer coordinates ``a + b*g`` and every quantity
here (norms, traces, real parts) is computed exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from . import kernels
from .errors import ComplexCFError, WrongRing


@dataclass(frozen=True)
class RingDescriptor:
    id: str
    code: str
    trace: int  # t = g + conj(g)
    gnorm: int  # m = g * conj(g)
    nu_squared: int  # smallest |gamma|^2 exceeding 1
    generator: str

    @property
    def disc(self) -> int:
        """``4m - t^2``; the imaginary part of ``g`` is ``sqrt(disc)/2``."""
        return 4 * self.gnorm - self.trace * self.trace

    @property
    def nu(self) -> float:
        return math.sqrt(self.nu_squared)

    @property
    def g_complex(self) -> complex:
        return complex(self.trace / 2, math.sqrt(self.disc) / 2)

    def __call__(self, a: int, b: int = 0) -> RingElement:
        return RingElement(self, a, b)

    def zero(self) -> RingElement:
        return RingElement(self, 0, 0)

    def one(self) -> RingElement:
        return RingElement(self, 1, 0)

    def gen(self) -> RingElement:
        return RingElement(self, 0, 1)

    def norm_form(self, a: int, b: int) -> int:
        return a * a + self.trace * a * b + self.gnorm * b * b

    def __repr__(self) -> str:
        return f"Ring({self.id})"

    def __reduce__(self):
        return (ring_by_name, (self.code,))


G = RingDescriptor("G", "G", 0, 1, 2, "i")
E = RingDescriptor("E", "E", -1, 1, 3, "omega = -1/2 + (sqrt3/2) i")
Z_I_SQRT2 = RingDescriptor("Z_i√2", "S2", 0, 2, 2, "i sqrt2")
Z_SQRT7 = RingDescriptor("Z_(1+i√7)/2", "S7", 1, 2, 2, "(1 + i sqrt7)/2")
Z_SQRT11 = RingDescriptor("Z_(1+i√11)/2", "S11", 1, 3, 3, "(1 + i sqrt11)/2")

RINGS: tuple[RingDescriptor, ...] = (G, E, Z_I_SQRT2, Z_SQRT7, Z_SQRT11)
_BY_NAME = {r.id: r for r in RINGS} | {r.code: r for r in RINGS}


def ring_by_name(name: str) -> RingDescriptor:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise ComplexCFError(f"unknown ring {name!r}; expected one of {sorted(_BY_NAME)}") from None


@dataclass(frozen=True, slots=True)
class RingElement:
    ring: RingDescriptor
    a: int
    b: int

    def _check(self, other: RingElement) -> None:
        if other.ring is not self.ring:
            raise WrongRing(f"mixing {self.ring.id} and {other.ring.id}")

    def _coerce(self, other: Any) -> RingElement:
        if isinstance(other, RingElement):
            self._check(other)
            return other
        if isinstance(other, int):
            return RingElement(self.ring, other, 0)
        return NotImplemented

    def __add__(self, other: Any) -> RingElement:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RingElement(self.ring, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other: Any) -> RingElement:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RingElement(self.ring, self.a - o.a, self.b - o.b)

    def __rsub__(self, other: Any) -> RingElement:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __neg__(self) -> RingElement:
        return RingElement(self.ring, -self.a, -self.b)

    def __mul__(self, other: Any) -> RingElement:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        t, m = self.ring.trace, self.ring.gnorm
        bd = self.b * o.b
        return RingElement(self.ring, self.a * o.a - m * bd, self.a * o.b + self.b * o.a + t * bd)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> RingElement:
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> RingElement:
        return RingElement(self.ring, self.a + self.ring.trace * self.b, -self.b)

    def norm(self) -> int:
        return self.ring.norm_form(self.a, self.b)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def real2(self) -> int:
        """Twice the real part (an integer)."""
        return 2 * self.a + self.ring.trace * self.b

    @property
    def real(self) -> Fraction:
        return Fraction(self.real2(), 2)

    def lex_key(self) -> tuple[int, int]:
        """Orders elements by (Re, Im); Im is a positive multiple of ``b``."""
        return (self.real2(), self.b)

    def __complex__(self) -> complex:
        return self.a + self.b * self.ring.g_complex

    def to_json(self) -> dict:
        return {"ring": self.ring.code, "a": self.a, "b": self.b}

    @classmethod
    def from_json(cls, obj: dict) -> RingElement:
        return cls(ring_by_name(obj["ring"]), int(obj["a"]), int(obj["b"]))

    def __str__(self) -> str:
        return format_element(self.ring, self.a, self.b)

    def __repr__(self) -> str:
        return f"<{self.ring.code} {self}>"


_GEN_SYMBOL = {"G": "i", "E": "w", "S2": "s2", "S7": "g7", "S11": "g11"}


def format_element(ring: RingDescriptor, a: int, b: int) -> str:
    g = _GEN_SYMBOL[ring.code]
    if b == 0:
        return str(a)
    coef = "" if b == 1 else "-" if b == -1 else str(b)
    tail = f"{coef}{g}"
    if a == 0:
        return tail
    return f"{a}{'' if tail.startswith('-') else '+'}{tail}"


def norm(x: RingElement) -> int:
    return x.norm()


def units(ring: RingDescriptor) -> list[RingElement]:
    return [ring(a, b) for a, b in kernels.disc_points(ring.trace, ring.gnorm, 0, 0, 1, 1, 1, False)
            if ring.norm_form(a, b) == 1]


def is_even_gaussian(x: RingElement) -> bool:
    if x.ring is not G:
        raise WrongRing("evenness is defined for Gaussian integers only")
    return (x.a + x.b) % 2 == 0


def elements_in_disc(ring: RingDescriptor, center: Any, radius2: Any, strict: bool = False) -> list[RingElement]:
    """All ring elements within distance ``sqrt(radius2)`` of ``center``.

    ``center`` may be a ring element, an exact field element or a ball; for
    balls the membership of each candidate is decided rigorously and an
    undecidable candidate raises :class:`PrecisionExhausted`.
    """
    from .arithmetic.ball import BallComplex
    from .arithmetic.kfield import KElement, as_k

    r2 = Fraction(radius2)
    if r2 < 0:
        raise ValueError("radius2 must be nonnegative")
    if isinstance(center, BallComplex):
        return _ball_disc(ring, center, r2, strict)
    c = as_k(ring, center)
    assert isinstance(c, KElement)
    pts = kernels.disc_points(ring.trace, ring.gnorm, c.a, c.b, c.d, r2.numerator, r2.denominator, strict)
    return [ring(a, b) for a, b in sorted(pts)]


def _ball_disc(ring: RingDescriptor, center: Any, r2: Fraction, strict: bool) -> list[RingElement]:
    from .arithmetic.predicates import hermitian_sign
    from .arithmetic.kfield import KElement

    approx = center.center_k()
    pad = center.radius() + Fraction(2, 1 << center.prec)
    # (sqrt(r2) + pad)^2 <= 2 r2 + 2 pad^2 keeps every candidate
    wide = 2 * r2 + 2 * pad * pad
    out = []
    for a, b in kernels.disc_points(ring.trace, ring.gnorm, approx.a, approx.b, approx.d,
                                    wide.numerator, wide.denominator, False):
        gamma = ring(a, b)
        # |w - gamma|^2 - r2 as a Hermitian polynomial in w
        s = hermitian_sign(center, 1, -KElement.from_ring(gamma), Fraction(gamma.norm()) - r2)
        if s < 0 or (s == 0 and not strict):
            out.append(gamma)
    return out


def compute_nu_squared(ring: RingDescriptor) -> int:
    """Smallest norm above 1, by enumerating elements with ``1 < |x|^2 <= 3``."""
    flags = kernels.representable_norms(3, ring.trace, ring.gnorm)
    for k in (2, 3):
        if flags[k]:
            return k
    raise AssertionError("every Euclidean ring has an element of norm 2 or 3")


def is_euclidean_on_grid(ring: RingDescriptor, mesh: int = 40) -> bool:
    """Check that every grid point of one fundamental cell is within distance < 1 of the lattice."""
    for i in range(mesh + 1):
        for j in range(mesh + 1):
            u, v = Fraction(i, mesh), Fraction(j, mesh)
            best = min(
                (u - a) ** 2 + ring.trace * (u - a) * (v - b) + ring.gnorm * (v - b) ** 2
                for a in (-1, 0, 1, 2)
                for b in (-1, 0, 1, 2)
            )
            if best >= 1:
                return False
    return True


@dataclass(frozen=True)
class Symmetry:
    """One of the four maps generated by ``z -> -z`` and ``z -> conj(z)``."""

    negate: bool = False
    conjugate: bool = False

    def __call__(self, x: Any) -> Any:
        return apply_symmetry(self, x)

    def compose(self, other: Symmetry) -> Symmetry:
        """``self`` after ``other``; the maps commute."""
        return Symmetry(self.negate ^ other.negate, self.conjugate ^ other.conjugate)

    def __mul__(self, other: Symmetry) -> Symmetry:
        return self.compose(other)

    def __pow__(self, k: int) -> Symmetry:
        return self if k % 2 else IDENTITY

    def __str__(self) -> str:
        return {(False, False): "id", (True, False): "neg", (False, True): "conj", (True, True): "sigma_y"}[
            (self.negate, self.conjugate)
        ]


IDENTITY = Symmetry(False, False)
NEGATE = Symmetry(True, False)
CONJUGATE = Symmetry(False, True)
SIGMA_Y = Symmetry(True, True)
SIGMA: tuple[Symmetry, ...] = (IDENTITY, NEGATE, CONJUGATE, SIGMA_Y)


def apply_symmetry(s: Symmetry, x: Any) -> Any:
    if s.conjugate:
        x = x.conjugate() if isinstance(x, complex) else x.conj()
    if s.negate:
        x = -x
    return x
