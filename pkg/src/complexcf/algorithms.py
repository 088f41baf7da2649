"""Partial-quotient choice functions, their cells and fundamental sets.

Every decision reduces to signs of Hermitian polynomials in the input point,
which are exact for quadratic surds and rigorous for balls.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any

from .arithmetic.ball import BallComplex, BallSource
from .arithmetic.kfield import KElement, as_k
from .arithmetic.predicates import START_PREC, hermitian_sign
from .arithmetic.surd import QuadraticSurd, embed
from .errors import NotInTargetSet, ParameterOutOfRange
from .regions import (
    Check,
    GeometryReport,
    Region,
    corner_discs,
    disc,
    hexagon_H,
    inter,
    sampled_disjoint,
    union,
)
from .rings import E, G, RingDescriptor, RingElement, elements_in_disc, units

KINDS = ("hurwitz_nearest", "eisenstein_nearest", "even_gaussian", "lambda_gaussian",
         "perturbed_hurwitz", "eisenstein_chi")

# r + 2r/(1 - r sqrt2) < 1/sqrt2  <=>  r < sqrt2 - sqrt(3/2)
PERTURBED_BOUND = math.sqrt(2) - math.sqrt(1.5)
CHI_NORM_CUTOFF = 9  # |a| < 3 keeps the nearest choice


@dataclass(frozen=True)
class AlgorithmSpec:
    ring: RingDescriptor
    kind: str
    param: Fraction | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown algorithm kind {self.kind!r}")
        want = E if self.kind.startswith("eisenstein") else G
        if self.ring is not want:
            raise ValueError(f"{self.kind} runs over {want.id}")
        if self.kind == "perturbed_hurwitz":
            r = self.param
            if r is None or not 0 < r < Fraction(1, 2):
                raise ParameterOutOfRange("perturbation radius must lie in (0, 1/2)")
        if self.kind == "eisenstein_chi":
            x = self.param
            if x is None or not 1 < x <= Fraction(5, 4):
                raise ParameterOutOfRange("chi must lie in (1, 5/4]")

    @property
    def name(self) -> str:
        short = {"hurwitz_nearest": "hurwitz", "eisenstein_nearest": "eisenstein", "even_gaussian": "even",
                 "lambda_gaussian": "lambda", "perturbed_hurwitz": "perturbed", "eisenstein_chi": "chi"}[self.kind]
        if self.kind == "perturbed_hurwitz":
            return f"perturbed:r={self.param}"
        if self.kind == "eisenstein_chi":
            return f"chi:x={self.param}"
        return short

    def __str__(self) -> str:
        return self.name

    def to_json(self) -> dict:
        return {"ring": self.ring.id, "kind": self.kind, "param": None if self.param is None else str(self.param)}

    def in_target(self, a: RingElement) -> bool:
        return in_target(self, a)


def hurwitz() -> AlgorithmSpec:
    return AlgorithmSpec(G, "hurwitz_nearest")


def eisenstein() -> AlgorithmSpec:
    return AlgorithmSpec(E, "eisenstein_nearest")


def even_gaussian() -> AlgorithmSpec:
    return AlgorithmSpec(G, "even_gaussian")


def lambda_gaussian() -> AlgorithmSpec:
    return AlgorithmSpec(G, "lambda_gaussian")


def perturbed_hurwitz(r: Any = Fraction(3, 20)) -> AlgorithmSpec:
    return AlgorithmSpec(G, "perturbed_hurwitz", Fraction(str(r)))


def eisenstein_chi(x: Any = Fraction(5, 4)) -> AlgorithmSpec:
    return AlgorithmSpec(E, "eisenstein_chi", Fraction(str(x)))


def parse_algorithm(text: str) -> AlgorithmSpec:
    """Parse ``hurwitz|eisenstein|even|lambda|perturbed:r=0.15|chi:x=5/4``."""
    head, _, tail = text.strip().partition(":")
    params = {}
    for item in filter(None, tail.split(",")):
        k, _, v = item.partition("=")
        params[k.strip()] = Fraction(v.strip())
    head = head.lower()
    if head == "hurwitz":
        return hurwitz()
    if head == "eisenstein":
        return eisenstein()
    if head == "even":
        return even_gaussian()
    if head == "lambda":
        return lambda_gaussian()
    if head == "perturbed":
        return perturbed_hurwitz(params.get("r", Fraction(3, 20)))
    if head == "chi":
        return eisenstein_chi(params.get("x", Fraction(5, 4)))
    raise ValueError(f"unknown algorithm {text!r}")


def in_lambda(a: RingElement) -> bool:
    s = abs(a.a + a.b)
    return s in (0, 2, 4) or (s >= 5 and s % 2 == 1)


def in_target(alg: AlgorithmSpec, a: RingElement) -> bool:
    if a.ring is not alg.ring:
        return False
    if alg.kind == "even_gaussian":
        return (a.a + a.b) % 2 == 0
    if alg.kind == "lambda_gaussian":
        return in_lambda(a)
    return True


# -- points ----------------------------------------------------------------------


class _Point:
    """Uniform sign oracle over surds, balls, ball sources and field elements."""

    __slots__ = ("raw", "ring", "approx", "err")

    def __init__(self, ring: RingDescriptor, z: Any) -> None:
        self.raw = z
        self.ring = ring
        if isinstance(z, RingElement):
            z = KElement.from_ring(z)
            self.raw = z
        if isinstance(z, KElement):
            self.approx, self.err = complex(z), 1e-12 * (1 + abs(complex(z)))
        elif isinstance(z, QuadraticSurd):
            b = embed(z, START_PREC)
            self.approx, self.err = complex(b), float(b.radius()) + 1e-12 * (1 + abs(complex(b)))
        elif isinstance(z, BallSource):
            b = z.at(START_PREC)
            self.approx, self.err = complex(b), float(b.radius()) + 1e-12 * (1 + abs(complex(b)))
        elif isinstance(z, BallComplex):
            self.approx, self.err = complex(z), float(z.radius()) + 1e-12 * (1 + abs(complex(z)))
        else:
            raise TypeError(f"unsupported point type {type(z).__name__}")
        if z.ring is not ring:
            raise ValueError("point and algorithm live over different rings")

    def sign(self, alpha: Any, beta: Any, gamma: Any) -> int:
        return hermitian_sign(self.raw, alpha, beta, gamma)

    def dist2_cmp(self, b: RingElement, a: RingElement) -> int:
        """Sign of ``|z - b|^2 - |z - a|^2``."""
        d = KElement.from_ring(a - b)
        return self.sign(0, d, b.norm() - a.norm())

    def in_disc(self, c: KElement, r2: Fraction) -> bool:
        """``|z - c|^2 < r2``."""
        return self.sign(1, -c, c.norm() - r2) < 0

    def in_region(self, r: Region) -> bool:
        v = r.contains(self.raw)
        if v is None:
            from .errors import PrecisionExhausted

            raise PrecisionExhausted("ball straddles a cell boundary")
        return v


def _better(pt: _Point, c: RingElement, best: RingElement) -> bool:
    s = pt.dist2_cmp(c, best)
    return s < 0 or (s == 0 and c.lex_key() > best.lex_key())


def nearest_in(pt: _Point, cands: list[RingElement]) -> RingElement:
    """Exact nearest candidate with the lexicographic tie-break."""
    if not cands:
        raise NotInTargetSet("no candidate near the point")
    # discard candidates that are certainly farther, using a conservative float bound
    ds = [abs(pt.approx - complex(c)) for c in cands]
    lo = min(ds)
    slack = 2 * pt.err + 1e-9
    close = [c for c, d in zip(cands, ds) if d <= lo + slack]
    best = close[0]
    for c in close[1:]:
        if _better(pt, c, best):
            best = c
    return best


def _candidates(alg: AlgorithmSpec, pt: _Point, radius: float) -> list[RingElement]:
    ring = alg.ring
    c = KElement.from_reim(ring, Fraction(pt.approx.real).limit_denominator(1 << 30),
                           Fraction(pt.approx.imag / (math.sqrt(ring.disc) / 2)).limit_denominator(1 << 30))
    r = radius + pt.err + 1e-6
    r2 = Fraction(r * r).limit_denominator(1 << 20) + Fraction(1, 1 << 20)
    return [a for a in elements_in_disc(ring, c, r2) if in_target(alg, a)]


def choose(alg: AlgorithmSpec, z: Any) -> RingElement:
    """The partial quotient ``f(z)``."""
    pt = _Point(alg.ring, z)
    kind = alg.kind
    if kind in ("hurwitz_nearest", "eisenstein_nearest", "even_gaussian", "lambda_gaussian"):
        radius = 1.0 if kind != "lambda_gaussian" else 1.2
        return nearest_in(pt, _candidates(alg, pt, radius))
    if kind == "perturbed_hurwitz":
        r = alg.param
        assert r is not None
        if not float(r) < PERTURBED_BOUND or not _perturbed_ok(r):
            raise ParameterOutOfRange(f"r = {r} is outside r < sqrt2 - sqrt(3/2)")
        a = nearest_in(pt, _candidates(alg, pt, 0.75))
        for c in _corners():
            if pt.in_disc(KElement.from_ring(a) + c, r * r):
                return a + (c * 2).to_ring()
        return a
    if kind == "eisenstein_chi":
        a = nearest_in(pt, _candidates(alg, pt, 0.6))
        if a.norm() < CHI_NORM_CUTOFF:
            return a
        chi_h = hexagon_H(alg.param)
        cands = [b for b in _candidates(alg, pt, 0.75) if b.norm() >= CHI_NORM_CUTOFF]
        ok = [b for b in cands if pt.in_region(chi_h.translate(b))]
        return max(ok, key=lambda b: (b.norm(), b.lex_key()))
    raise AssertionError(kind)


def _perturbed_ok(r: Fraction) -> bool:
    # r < sqrt2 - sqrt(3/2)  <=>  sqrt6 r < 1/2 - r^2  <=>  6 r^2 < (1/2 - r^2)^2, 1/2 - r^2 > 0
    h = Fraction(1, 2) - r * r
    return h > 0 and 6 * r * r < h * h


@lru_cache(maxsize=1)
def _corners() -> tuple[KElement, ...]:
    h = Fraction(1, 2)
    return tuple(KElement.from_coords(G, sx * h, sy * h) for sx in (1, -1) for sy in (1, -1))


# -- cells -------------------------------------------------------------------------


def _voronoi(ring: RingDescriptor, a: RingElement, others: list[RingElement]) -> Region:
    """Points at least as close to ``a`` as to every ``b``; ties go to the lex-greater element."""
    parts = []
    for b in others:
        # |z - a|^2 - |z - b|^2 = 2 Re(conj(b - a) z) + |a|^2 - |b|^2
        strict = b.lex_key() > a.lex_key()
        parts.append(_atom(ring, 0, KElement.from_ring(b - a), a.norm() - b.norm(), strict))
    return inter(*parts)


def _atom(ring: RingDescriptor, alpha: Any, beta: KElement, gamma: Any, strict: bool) -> Region:
    from .regions import Atom

    return Atom(ring, Fraction(alpha), beta, Fraction(gamma), strict)


def _nearby_targets(alg: AlgorithmSpec, a: RingElement, r2: int) -> list[RingElement]:
    return [b for b in elements_in_disc(alg.ring, a, r2) if b != a and in_target(alg, b)]


_VORONOI_R2 = {"hurwitz_nearest": 2, "perturbed_hurwitz": 2, "eisenstein_nearest": 3, "eisenstein_chi": 3,
               "even_gaussian": 4, "lambda_gaussian": 5}


def nearest_cell(alg: AlgorithmSpec, a: RingElement) -> Region:
    return _voronoi(alg.ring, a, _nearby_targets(alg, a, _VORONOI_R2[alg.kind]))


def cell(alg: AlgorithmSpec, a: Any) -> Region:
    """``f^{-1}(a)`` as a region, tie-breaks included."""
    ring = alg.ring
    if isinstance(a, RingElement):
        a_el = a
    else:
        k = as_k(ring, a)
        if not k.is_integral():
            raise NotInTargetSet(f"{a} is not in the ring")
        a_el = k.to_ring()
    if not in_target(alg, a_el):
        raise NotInTargetSet(f"{a_el} is not a possible partial quotient of {alg.name}")
    kind = alg.kind
    if kind in ("hurwitz_nearest", "eisenstein_nearest", "even_gaussian", "lambda_gaussian"):
        return nearest_cell(alg, a_el)
    if kind == "perturbed_hurwitz":
        r2 = alg.param * alg.param  # type: ignore[operator]
        ak = KElement.from_ring(a_el)
        own = inter(nearest_cell(alg, a_el), corner_discs(alg.param).translate(ak).complement())
        gained = []
        for c in _corners():
            src = a_el - (c * 2).to_ring()
            gained.append(inter(nearest_cell(alg, src), disc(KElement.from_ring(src) + c, r2)))
        return union(own, *gained)
    if kind == "eisenstein_chi":
        if a_el.norm() < CHI_NORM_CUTOFF:
            return nearest_cell(alg, a_el)
        chi_h = hexagon_H(alg.param)
        near = elements_in_disc(ring, a_el, 4)
        big_nearest = union(*(nearest_cell(alg, n) for n in near if n.norm() >= CHI_NORM_CUTOFF))
        beats = [chi_h.translate(b).complement() for b in near
                 if b != a_el and b.norm() >= CHI_NORM_CUTOFF and (b.norm(), b.lex_key()) > (a_el.norm(), a_el.lex_key())]
        return inter(chi_h.translate(a_el), big_nearest, *beats)
    raise AssertionError(kind)


def fundamental_set(alg: AlgorithmSpec) -> Region:
    """A region containing ``z - f(z)`` for every ``z``; exact except for ``eisenstein_chi`` (it is ``chi H``)."""
    kind = alg.kind
    zero = alg.ring.zero()
    if kind in ("hurwitz_nearest", "eisenstein_nearest", "even_gaussian"):
        return nearest_cell(alg, zero)
    if kind == "perturbed_hurwitz":
        return cell(alg, zero)
    if kind == "eisenstein_chi":
        return hexagon_H(alg.param)
    if kind == "lambda_gaussian":
        # Λ is invariant under translation by 1 - i, so cells depend only on x + y
        reps = [G(s) for s in range(-9, 10) if in_lambda(G(s))]
        return union(*(nearest_cell(alg, a).translate(KElement.from_ring(-a)) for a in reps))
    raise AssertionError(kind)


def fundamental_set_of(alg: AlgorithmSpec, a: RingElement) -> Region:
    """``f^{-1}(a) - a``: where ``z_n - a_n`` can lie when ``a_n = a``."""
    return cell(alg, a).translate(KElement.from_ring(-a))


# -- validation ----------------------------------------------------------------


def validate_no_unit_quotients(alg: AlgorithmSpec, mesh: int = 160) -> GeometryReport:
    """Check ``(a + F_a) ∩ F^{-1} = ∅`` for every unit ``a`` in the target set."""
    F_inv = fundamental_set(alg).invert()
    checks: list[Check] = []
    for u in units(alg.ring):
        if not in_target(alg, u):
            checks.append(Check(f"C({u}) = ∅", True, "analytic", 0, None, "unit not in target set"))
            continue
        checks.append(sampled_disjoint(cell(alg, u), F_inv, f"C({u}) = ∅", mesh))
    return GeometryReport(f"{alg.name}: no unit partial quotients after the first step", checks)


def validate_contract(alg: AlgorithmSpec, mesh: int = 40) -> GeometryReport:
    """On a grid of one fundamental cell: ``|z - f(z)| < 1``, ``f(z)`` in target, ``z - f(z) ∈ F``."""
    from .regions import grid_points

    F = fundamental_set(alg)
    unit = disc(KElement(alg.ring, 0, 0, 1), 1)
    ring = alg.ring
    box = (-1.0, 1.0, -1.0, 1.0) if alg.kind != "lambda_gaussian" else (-1.0, 6.0, -1.0, 6.0)
    n = 0
    for p in grid_points(ring, box, mesh):
        n += 1
        a = choose(alg, p)
        w = p - a
        if not in_target(alg, a):
            return GeometryReport(alg.name, [Check("target", False, "samples", n, p)])
        if not unit.contains(w):
            return GeometryReport(alg.name, [Check("|z - f(z)| < 1", False, "samples", n, p)])
        if not F.contains(w):
            return GeometryReport(alg.name, [Check("z - f(z) in F", False, "samples", n, p)])
        if not cell(alg, a).contains(p):
            return GeometryReport(alg.name, [Check("z in cell(f(z))", False, "samples", n, p)])
    return GeometryReport(alg.name, [Check("contract", True, "samples", n)])


__all__ = [
    "AlgorithmSpec",
    "KINDS",
    "PERTURBED_BOUND",
    "cell",
    "choose",
    "eisenstein",
    "eisenstein_chi",
    "even_gaussian",
    "fundamental_set",
    "fundamental_set_of",
    "hurwitz",
    "in_lambda",
    "in_target",
    "lambda_gaussian",
    "nearest_cell",
    "parse_algorithm",
    "perturbed_hurwitz",
    "validate_contract",
    "validate_no_unit_quotients",
]
