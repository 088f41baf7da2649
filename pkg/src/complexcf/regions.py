"""Planar regions built from Hermitian atoms, with exact inversion.

An atom is ``{w : P(w) < 0}`` or ``{w : P(w) <= 0}`` where
``P(w) = alpha |w|^2 + 2 Re(conj(beta) w) + gamma`` with ``alpha, gamma``
rational and ``beta`` in K. Discs, disc complements and half-planes are all
atoms, and inversion, translation, the symmetries and scaling map atoms to
atoms exactly. Regions are boolean trees over atoms in negation normal form.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Iterator, Sequence

from .arithmetic.ball import BallComplex
from .arithmetic.kfield import KElement, as_k, parse_k
from .arithmetic.predicates import ball_sign, hermitian_sign
from .arithmetic.surd import LNumber
from .errors import Unsupported, ZeroOnBoundary
from .rings import E, G, SIGMA, SIGMA_Y, RingDescriptor, RingElement, Symmetry, ring_by_name, units

_FLOAT_MARGIN = 1e-9


def _kf(ring: RingDescriptor, x: Any) -> KElement:
    return as_k(ring, x)


class Region:
    """Base class; subclasses are :class:`Atom`, :class:`Union`, :class:`Inter`."""

    ring: RingDescriptor

    def contains(self, point: Any) -> bool | None:
        raise NotImplementedError

    def __contains__(self, point: Any) -> bool:
        v = self.contains(point)
        if v is None:
            raise ValueError("membership undecided for this ball")
        return v

    def __or__(self, other: Region) -> Region:
        return union(self, other)

    def __and__(self, other: Region) -> Region:
        return inter(self, other)

    def __invert__(self) -> Region:
        return self.complement()

    def __sub__(self, other: Region) -> Region:
        return inter(self, other.complement())

    def atoms(self) -> Iterator[Atom]:
        raise NotImplementedError

    def complement(self) -> Region:
        raise NotImplementedError

    def _map(self, fn: Callable[[Atom], Atom]) -> Region:
        raise NotImplementedError

    def invert(self) -> Region:
        return self._map(Atom.inverted)

    def translate(self, t: Any) -> Region:
        tk = _kf(self.ring, t)
        return self._map(lambda a: a.translated(tk))

    def __add__(self, t: Any) -> Region:
        return self.translate(t)

    __radd__ = __add__

    def negate(self) -> Region:
        return self._map(Atom.negated)

    def conjugate(self) -> Region:
        return self._map(Atom.conjugated)

    def apply_symmetry(self, s: Symmetry) -> Region:
        r = self
        if s.conjugate:
            r = r.conjugate()
        if s.negate:
            r = r.negate()
        return r

    def scale(self, chi: Any) -> Region:
        c = Fraction(chi)
        if c <= 0:
            raise ValueError("scale factor must be positive")
        return self._map(lambda a: a.scaled(c))

    def rotate(self, mu: Any) -> Region:
        """Image under ``w -> mu * w`` for nonzero ``mu`` in K."""
        m = _kf(self.ring, mu)
        return self._map(lambda a: a.multiplied(m))

    def bbox(self) -> tuple[float, float, float, float] | None:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Atom(Region):
    ring: RingDescriptor
    alpha: Fraction
    beta: KElement
    gamma: Fraction
    strict: bool
    _f: tuple = field(default=(), compare=False, repr=False, hash=False)

    def __post_init__(self) -> None:
        b = complex(self.beta)
        object.__setattr__(self, "_f", (float(self.alpha), b.real, b.imag, float(self.gamma)))

    @classmethod
    def make(cls, ring: RingDescriptor, alpha: Any, beta: Any, gamma: Any, strict: bool) -> Atom:
        return cls(ring, Fraction(alpha), _kf(ring, beta), Fraction(gamma), bool(strict))

    # -- evaluation ---------------------------------------------------------

    def value(self, w: KElement) -> Fraction:
        return self.alpha * w.norm() + (self.beta.conj() * w).trace() + self.gamma

    def _sign_exact_point(self, w: KElement) -> int:
        fa, fbr, fbi, fg = self._f
        z = complex(w)
        pf = fa * (z.real * z.real + z.imag * z.imag) + 2 * (fbr * z.real + fbi * z.imag) + fg
        scale = abs(fa) * abs(z) ** 2 + 2 * math.hypot(fbr, fbi) * abs(z) + abs(fg) + 1.0
        if abs(pf) > _FLOAT_MARGIN * scale:
            return 1 if pf > 0 else -1
        v = self.value(w)
        return (v > 0) - (v < 0)

    def sign_at(self, point: Any) -> int | None:
        if isinstance(point, RingElement):
            point = KElement.from_ring(point)
        if isinstance(point, KElement):
            return self._sign_exact_point(point)
        if isinstance(point, BallComplex):
            return ball_sign(point, self.alpha, self.beta, self.gamma)
        if isinstance(point, LNumber) and point.in_k():
            return self._sign_exact_point(point.x)
        return hermitian_sign(point, self.alpha, self.beta, self.gamma)

    def contains(self, point: Any) -> bool | None:
        s = self.sign_at(point)
        if s is None:
            return None
        return s < 0 if self.strict else s <= 0

    def atoms(self) -> Iterator[Atom]:
        yield self

    # -- transforms ---------------------------------------------------------

    def complement(self) -> Atom:
        return Atom(self.ring, -self.alpha, -self.beta, -self.gamma, not self.strict)

    def _map(self, fn: Callable[[Atom], Atom]) -> Region:
        return fn(self)

    def inverted(self) -> Atom:
        return Atom(self.ring, self.gamma, self.beta.conj(), self.alpha, self.strict)

    def translated(self, t: KElement) -> Atom:
        beta = self.beta - t * self.alpha
        gamma = self.gamma + self.alpha * t.norm() - (self.beta.conj() * t).trace()
        return Atom(self.ring, self.alpha, beta, gamma, self.strict)

    def negated(self) -> Atom:
        return Atom(self.ring, self.alpha, -self.beta, self.gamma, self.strict)

    def conjugated(self) -> Atom:
        return Atom(self.ring, self.alpha, self.beta.conj(), self.gamma, self.strict)

    def scaled(self, c: Fraction) -> Atom:
        return Atom(self.ring, self.alpha, self.beta * c, self.gamma * c * c, self.strict)

    def multiplied(self, mu: KElement) -> Atom:
        return Atom(self.ring, self.alpha, self.beta * mu, self.gamma * mu.norm(), self.strict)

    # -- geometry -----------------------------------------------------------

    @property
    def kind(self) -> str:
        if self.alpha > 0:
            return "disc"
        if self.alpha < 0:
            return "disc-complement"
        if self.beta.is_zero():
            return "trivial"
        return "halfplane"

    def disc_params(self) -> tuple[KElement, Fraction]:
        """Center and radius squared of the boundary circle (``alpha != 0``)."""
        if self.alpha == 0:
            raise ValueError("half-plane has no center")
        c = -self.beta / self.alpha
        return c, c.norm() - self.gamma / self.alpha

    def bbox(self) -> tuple[float, float, float, float] | None:
        if self.alpha > 0:
            c, r2 = self.disc_params()
            if r2 < 0:
                return (0.0, 0.0, 0.0, 0.0)
            z, r = complex(c), math.sqrt(float(r2))
            return (z.real - r, z.real + r, z.imag - r, z.imag + r)
        if self.kind == "trivial" and (self.gamma > 0 or (self.gamma == 0 and self.strict)):
            return (0.0, 0.0, 0.0, 0.0)
        return None

    def to_json(self) -> dict:
        return {
            "op": "atom",
            "alpha": str(self.alpha),
            "beta": str(self.beta),
            "gamma": str(self.gamma),
            "strict": self.strict,
        }

    def __str__(self) -> str:
        rel = "<" if self.strict else "<="
        if self.alpha != 0:
            c, r2 = self.disc_params()
            if self.alpha > 0:
                return f"|w-({c})|^2 {rel} {r2}"
            rel = ">" if self.strict else ">="
            return f"|w-({c})|^2 {rel} {r2}"
        return f"2Re(conj({self.beta}) w) + {self.gamma} {rel} 0"


@dataclass(frozen=True)
class _Node(Region):
    ring: RingDescriptor
    parts: tuple[Region, ...]

    def atoms(self) -> Iterator[Atom]:
        for p in self.parts:
            yield from p.atoms()


class Union(_Node):
    def contains(self, point: Any) -> bool | None:
        undecided = False
        for p in self.parts:
            v = p.contains(point)
            if v:
                return True
            if v is None:
                undecided = True
        return None if undecided else False

    def complement(self) -> Region:
        return Inter(self.ring, tuple(p.complement() for p in self.parts))

    def _map(self, fn: Callable[[Atom], Atom]) -> Region:
        return Union(self.ring, tuple(p._map(fn) for p in self.parts))

    def bbox(self) -> tuple[float, float, float, float] | None:
        boxes = [p.bbox() for p in self.parts]
        if any(b is None for b in boxes):
            return None
        return _hull(boxes)  # type: ignore[arg-type]

    def to_json(self) -> dict:
        return {"op": "union", "args": [p.to_json() for p in self.parts]}

    def __str__(self) -> str:
        return "(" + " | ".join(str(p) for p in self.parts) + ")"


class Inter(_Node):
    def contains(self, point: Any) -> bool | None:
        undecided = False
        for p in self.parts:
            v = p.contains(point)
            if v is False:
                return False
            if v is None:
                undecided = True
        return None if undecided else True

    def complement(self) -> Region:
        return Union(self.ring, tuple(p.complement() for p in self.parts))

    def _map(self, fn: Callable[[Atom], Atom]) -> Region:
        return Inter(self.ring, tuple(p._map(fn) for p in self.parts))

    def bbox(self) -> tuple[float, float, float, float] | None:
        boxes = [b for b in (p.bbox() for p in self.parts) if b is not None]
        poly = _polygon_bbox([a for a in self.parts if isinstance(a, Atom)])
        if poly is not None:
            boxes.append(poly)
        return _meet(boxes) if boxes else None

    def to_json(self) -> dict:
        return {"op": "inter", "args": [p.to_json() for p in self.parts]}

    def __str__(self) -> str:
        return "(" + " & ".join(str(p) for p in self.parts) + ")"


def _hull(boxes: Sequence[tuple[float, float, float, float]]) -> tuple[float, float, float, float]:
    return (min(b[0] for b in boxes), max(b[1] for b in boxes), min(b[2] for b in boxes), max(b[3] for b in boxes))


def _meet(boxes: Sequence[tuple[float, float, float, float]]) -> tuple[float, float, float, float]:
    x0, x1 = max(b[0] for b in boxes), min(b[1] for b in boxes)
    y0, y1 = max(b[2] for b in boxes), min(b[3] for b in boxes)
    if x0 > x1 or y0 > y1:
        return (0.0, 0.0, 0.0, 0.0)
    return (x0, x1, y0, y1)


def _polygon_bbox(atoms: Sequence[Atom]) -> tuple[float, float, float, float] | None:
    lines = [a for a in atoms if a.kind == "halfplane"]
    pts = []
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            v = _line_meet(lines[i], lines[j])
            if v is None:
                continue
            if all(a.value(v) <= 0 for a in lines):
                pts.append(complex(v))
    if len(pts) < 3 or not _polygon_bounded(lines):
        return None
    return (min(p.real for p in pts), max(p.real for p in pts), min(p.imag for p in pts), max(p.imag for p in pts))


def _polygon_bounded(lines: Sequence[Atom]) -> bool:
    """Outward normals of a bounded polygon are not confined to a closed half-circle."""
    angs = sorted(math.atan2(-complex(a.beta).imag, complex(a.beta).real) % (2 * math.pi) for a in lines)
    gaps = [b - a for a, b in zip(angs, angs[1:])] + [angs[0] + 2 * math.pi - angs[-1]]
    return max(gaps) < math.pi - 1e-12


def _line_meet(a: Atom, b: Atom) -> KElement | None:
    """Exact intersection of the boundary lines of two half-plane atoms."""
    ring = a.ring
    # value(w) is affine and Q-linear in the coordinates (u, v) of w = u + v g
    rows = []
    for atom in (a, b):
        c0 = atom.value(KElement(ring, 0, 0, 1))
        cu = atom.value(KElement(ring, 1, 0, 1)) - c0
        cv = atom.value(KElement(ring, 0, 1, 1)) - c0
        rows.append((cu, cv, -c0))
    (a11, a12, b1), (a21, a22, b2) = rows
    det = a11 * a22 - a12 * a21
    if det == 0:
        return None
    u = (b1 * a22 - a12 * b2) / det
    v = (a11 * b2 - b1 * a21) / det
    return KElement.from_coords(ring, u, v)


def union(*regions: Region) -> Region:
    parts: list[Region] = []
    for r in regions:
        parts.extend(r.parts if isinstance(r, Union) else (r,))
    return parts[0] if len(parts) == 1 else Union(parts[0].ring, tuple(parts))


def inter(*regions: Region) -> Region:
    parts: list[Region] = []
    for r in regions:
        parts.extend(r.parts if isinstance(r, Inter) else (r,))
    return parts[0] if len(parts) == 1 else Inter(parts[0].ring, tuple(parts))


def complement(r: Region) -> Region:
    return r.complement()


# -- discs ---------------------------------------------------------------------


@dataclass(frozen=True)
class Disc:
    """``B(center, sqrt(r2))``; open unless ``closed``."""

    center: KElement
    r2: Fraction
    closed: bool = False

    def __post_init__(self) -> None:
        if self.r2 < 0:
            raise ValueError("radius squared must be nonnegative")

    @property
    def ring(self) -> RingDescriptor:
        return self.center.ring

    def region(self) -> Atom:
        c = self.center
        return Atom(c.ring, Fraction(1), -c, c.norm() - self.r2, not self.closed)

    def __str__(self) -> str:
        b = "Bbar" if self.closed else "B"
        return f"{b}({self.center}, sqrt({self.r2}))"


@dataclass(frozen=True)
class DiscComplement:
    """``C \\ disc``."""

    disc: Disc

    def region(self) -> Atom:
        return self.disc.region().complement()

    def __str__(self) -> str:
        return f"complement of {self.disc}"


def disc(center: Any, r2: Any, closed: bool = False, ring: RingDescriptor | None = None) -> Atom:
    ring = ring or center.ring
    return Disc(_kf(ring, center), Fraction(r2), closed).region()


def invert_disc(d: Disc) -> Disc | DiscComplement:
    """Image of a disc under ``w -> 1/w``."""
    c = d.center
    den = c.norm() - d.r2
    if den == 0:
        raise ZeroOnBoundary("0 lies on the boundary circle")
    new_c = c.conj() / den
    new_r2 = d.r2 / (den * den)
    if den > 0:
        return Disc(new_c, new_r2, d.closed)
    # 0 inside: the inverse of an open disc is the complement of a closed one
    return DiscComplement(Disc(new_c, new_r2, not d.closed))


def invert_region(r: Region) -> Region:
    return r.invert()


def halfplane(normal: Any, offset: Any, strict: bool = False, ring: RingDescriptor | None = None) -> Atom:
    """``{w : Re(conj(normal) * w) <= offset}``."""
    ring = ring or normal.ring
    n = _kf(ring, normal)
    return Atom(ring, Fraction(0), n * Fraction(1, 2), -Fraction(offset), strict)


def polygon(vertices: Sequence[Any], ring: RingDescriptor, strict: bool = False) -> Region:
    """Closed convex polygon from counter-clockwise vertices."""
    vs = [_kf(ring, v) for v in vertices]
    i_k = _imag_unit(ring)
    parts = []
    for j in range(len(vs)):
        p, q = vs[j], vs[(j + 1) % len(vs)]
        if i_k is not None:
            n = (q - p) * (-i_k)
            parts.append(halfplane(n, (n.conj() * p).trace() / 2, strict, ring))
        else:
            parts.append(_edge_atom(ring, p, q, strict))
    return inter(*parts)


def _imag_unit(ring: RingDescriptor) -> KElement | None:
    return KElement(ring, 0, 1, 1) if ring is G else None


def _edge_atom(ring: RingDescriptor, p: KElement, q: KElement, strict: bool) -> Atom:
    """Left side of the directed edge ``p -> q`` when ``i`` is not in K.

    ``Im(conj(q - p) (w - p)) >= 0`` equals ``Re(conj(i (q - p)) (w - p)) >= 0``.
    A rational multiple of ``i*(q - p)`` lies in K because ``i*sqrt(disc)`` does,
    so the normal ``sqrt(disc) i (q - p)`` is used instead.
    """
    d = q - p
    # sqrt(disc)*i = 2g - t, an element of the ring
    s_i = KElement(ring, -ring.trace, 2, 1)
    n = d * s_i  # points to the left of d
    # w on the left: Re(conj(n)(w - p)) >= 0  <=>  Re(conj(-n) w) <= Re(conj(-n) p)
    m = -n
    return halfplane(m, (m.conj() * p).trace() / 2, strict, ring)


# -- named regions -------------------------------------------------------------

HALF = Fraction(1, 2)


def diamond_H() -> Region:
    """Closed square with vertices ``±1, ±i``."""
    return inter(*(halfplane(G(a, b), 1) for a, b in ((1, 1), (1, -1), (-1, 1), (-1, -1))))


def square_S() -> Region:
    """Closed square ``|x|, |y| <= 1/2``."""
    return inter(*(halfplane(G(a, b), HALF) for a, b in ((1, 0), (-1, 0), (0, 1), (0, -1))))


def hexagon_H(chi: Any = 1) -> Region:
    """Closed Eisenstein hexagon with vertices ``rho^l chi / sqrt(3)``."""
    chi = Fraction(chi)
    return inter(*(halfplane(u, chi / 2) for u in units(E)))


def corner_discs(r: Any) -> Region:
    """Union of the open discs ``B(sigma(1+i)/2, r)``."""
    r2 = Fraction(r) ** 2
    return union(*(disc(KElement.from_coords(G, Fraction(sx, 2), Fraction(sy, 2)), r2)
                   for sx in (1, -1) for sy in (1, -1)))


def corner_set(r: Any) -> Region:
    """``S_r``: the square S together with its four corner discs."""
    return union(square_S(), corner_discs(r))


def Q_h() -> Region:
    return inter(
        halfplane(G(-1), 0),
        halfplane(G(1), HALF),
        halfplane(G(0, 1), 0),
        halfplane(G(0, -1), HALF),
        disc(G(1, -1), 1),
    )


def Q_r(r: Any) -> Region:
    return union(Q_h(), disc(KElement.from_coords(G, HALF, -HALF), Fraction(r) ** 2))


def L_halfplane() -> Region:
    """``{y <= x + 1}``."""
    return halfplane(G(-1, 1), 1)


def R_union() -> Region:
    return union(*(disc(G(sx, sy), 1) for sx in (1, -1) for sy in (1, -1)))


def H_inverse_identity() -> Region:
    """Intersection of the four disc complements ``B(sigma(1/2 + i/2), 1/sqrt 2)^c``."""
    return inter(*(disc(KElement.from_coords(G, Fraction(sx, 2), Fraction(sy, 2)), HALF).complement()
                   for sx in (1, -1) for sy in (1, -1)))


# -- JSON DSL ------------------------------------------------------------------


def region_from_json(obj: dict, ring: RingDescriptor | str = G) -> Region:
    if isinstance(ring, str):
        ring = ring_by_name(ring)
    ring = ring_by_name(obj["ring"]) if "ring" in obj else ring
    op = obj["op"]

    def pt(v: Any) -> KElement:
        return v if isinstance(v, KElement) else parse_k(ring, str(v))

    if op == "disc":
        return disc(pt(obj["center"]), Fraction(str(obj["r2"])), bool(obj.get("closed", False)), ring)
    if op == "halfplane":
        return halfplane(pt(obj["normal"]), Fraction(str(obj["offset"])), bool(obj.get("strict", False)), ring)
    if op == "poly":
        return polygon([pt(v) for v in obj["vertices"]], ring, bool(obj.get("strict", False)))
    if op == "atom":
        return Atom.make(ring, Fraction(str(obj["alpha"])), pt(obj["beta"]), Fraction(str(obj["gamma"])),
                         bool(obj.get("strict", False)))
    if op == "union":
        return union(*(region_from_json(a, ring) for a in obj["args"]))
    if op == "inter":
        return inter(*(region_from_json(a, ring) for a in obj["args"]))
    if op == "compl":
        return region_from_json(obj["arg"], ring).complement()
    if op == "invert":
        return region_from_json(obj["arg"], ring).invert()
    if op == "translate":
        return region_from_json(obj["arg"], ring).translate(pt(obj["by"]))
    if op == "scale":
        return region_from_json(obj["arg"], ring).scale(Fraction(str(obj["by"])))
    if op == "named":
        return named_region(obj["name"], obj.get("param"))
    raise ValueError(f"unknown region op {op!r}")


def named_region(name: str, param: Any = None) -> Region:
    table: dict[str, Callable[[], Region]] = {
        "H": diamond_H,
        "S": square_S,
        "hexagon": lambda: hexagon_H(param if param is not None else 1),
        "S_r": lambda: corner_set(param),
        "Q_h": Q_h,
        "Q_r": lambda: Q_r(param),
        "L": L_halfplane,
        "R": R_union,
    }
    try:
        return table[name]()
    except KeyError:
        raise ValueError(f"unknown named region {name!r}") from None


# -- sampling ------------------------------------------------------------------


def grid_points(ring: RingDescriptor, box: tuple[float, float, float, float], mesh: int) -> Iterator[KElement]:
    """Exact grid over a box: real parts on a rational grid, imaginary parts on a grid of ``Im(g)`` multiples."""
    x0, x1, y0, y1 = box
    img = math.sqrt(ring.disc) / 2
    step = max(x1 - x0, y1 - y0) / mesh
    if step <= 0:
        return
    den = 1 << 12
    h = Fraction(max(1, round(step * den)), den)
    hv = Fraction(max(1, round(step / img * den)), den)
    i0 = math.floor(x0 / h) - 1
    i1 = math.ceil(x1 / h) + 1
    j0 = math.floor(y0 / img / hv) - 1
    j1 = math.ceil(y1 / img / hv) + 1
    for i in range(i0, i1 + 1):
        for j in range(j0, j1 + 1):
            yield KElement.from_reim(ring, i * h, j * hv)


def random_points(ring: RingDescriptor, box: tuple[float, float, float, float], n: int,
                  rng: random.Random) -> Iterator[KElement]:
    x0, x1, y0, y1 = box
    img = math.sqrt(ring.disc) / 2
    den = 1 << 20
    for _ in range(n):
        x = Fraction(round(rng.uniform(x0, x1) * den), den)
        v = Fraction(round(rng.uniform(y0, y1) / img * den), den)
        yield KElement.from_reim(ring, x, v)


def _pad(box: tuple[float, float, float, float], eps: float = 1e-6) -> tuple[float, float, float, float]:
    return (box[0] - eps, box[1] + eps, box[2] - eps, box[3] + eps)


@dataclass
class Check:
    name: str
    passed: bool
    mode: str
    samples: int = 0
    witness: KElement | None = None
    detail: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "mode": self.mode, "samples": self.samples,
               "detail": self.detail}
        if self.witness is not None:
            z = complex(self.witness)
            out["witness"] = str(self.witness)
            out["witness_approx"] = [z.real, z.imag]
        return out

    def verdict(self) -> str:
        if not self.passed:
            return "fail"
        return "proved" if self.mode == "analytic" else f"pass (sampled, {self.samples} points)"


@dataclass
class GeometryReport:
    subject: str
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {"subject": self.subject, "passed": self.passed, "checks": [c.to_json() for c in self.checks]}


def sampled_subset(a: Region, b: Region, name: str, mesh: int = 160,
                   window: tuple[float, float, float, float] | None = None) -> Check:
    """Look for a point of ``a`` outside ``b`` on an exact grid; a hit is a genuine witness."""
    box = a.bbox() or window
    if box is None:
        raise Unsupported(f"{name}: region is unbounded and no window was given")
    n = 0
    for p in grid_points(a.ring, _pad(box), mesh):
        if a.contains(p):
            n += 1
            if not b.contains(p):
                return Check(name, False, "samples", n, p, "point of the first set outside the second")
    return Check(name, True, "samples", n)


def sampled_disjoint(a: Region, b: Region, name: str, mesh: int = 160,
                     window: tuple[float, float, float, float] | None = None) -> Check:
    box = a.bbox() or b.bbox() or window
    if box is None:
        raise Unsupported(f"{name}: both regions unbounded and no window was given")
    n = 0
    for p in grid_points(a.ring, _pad(box), mesh):
        if a.contains(p):
            n += 1
            if b.contains(p):
                return Check(name, False, "samples", n, p, "common point")
    return Check(name, True, "samples", n)


def sampled_empty(a: Region, name: str, mesh: int = 160,
                  window: tuple[float, float, float, float] | None = None) -> Check:
    box = a.bbox() or window
    if box is None:
        raise Unsupported(f"{name}: region is unbounded and no window was given")
    n = 0
    for p in grid_points(a.ring, _pad(box), mesh):
        n += 1
        if a.contains(p):
            return Check(name, False, "samples", n, p, "region is not empty")
    return Check(name, True, "samples", n)


# -- analytic containment ------------------------------------------------------


def _convex_parts(r: Region) -> list[Atom] | None:
    if isinstance(r, Atom):
        return [r]
    if isinstance(r, Inter) and all(isinstance(p, Atom) for p in r.parts):
        return list(r.parts)  # type: ignore[arg-type]
    return None


def _disc_in_atom(d: Atom, b: Atom) -> bool | None:
    """Closed disc ``d`` (alpha > 0) inside atom ``b``; None when ``b`` is not convex."""
    c, r2 = d.disc_params()
    if b.kind == "disc":
        c2, r22 = b.disc_params()
        dist2 = (c - c2).norm()
        # |c - c2| + r <= R  <=>  R >= r and 2 r R <= R^2 + r^2 - dist2 (after squaring)
        if r22 < r2:
            return False
        rhs = r22 + r2 - dist2
        if rhs < 0:
            return False
        ok = 4 * r2 * r22 <= rhs * rhs
        if b.strict and not d.strict:
            ok = ok and 4 * r2 * r22 < rhs * rhs
        return ok
    if b.kind == "halfplane":
        # sup over the disc of P = P(c) + 2|beta| r  must be <= 0
        pc = b.value(c)
        if pc > 0:
            return False
        lhs = 4 * b.beta.norm() * r2
        ok = lhs <= pc * pc
        if b.strict and not d.strict:
            ok = lhs < pc * pc
        return ok
    return None


def analytic_subset(a: Region, b: Region, name: str) -> Check:
    """Prove ``a ⊆ b`` for a convex polygon or disc ``a`` and convex atoms ``b``.

    Raises :class:`Unsupported` for other shapes.
    """
    parts_a = _convex_parts(a)
    if parts_a is None:
        raise Unsupported(f"{name}: first set is not a convex atom intersection")
    targets: list[Atom]
    if isinstance(b, Atom):
        targets = [b]
    elif isinstance(b, Inter) and all(isinstance(p, Atom) for p in b.parts):
        targets = list(b.parts)  # type: ignore[arg-type]
    elif isinstance(b, Union):
        for p in b.parts:
            try:
                ch = analytic_subset(a, p, name)
            except Unsupported:
                continue
            if ch.passed:
                return ch
        raise Unsupported(f"{name}: no single member of the union contains the set")
    else:
        raise Unsupported(f"{name}: target is not convex")
    discs = [p for p in parts_a if p.kind == "disc"]
    lines = [p for p in parts_a if p.kind == "halfplane"]
    if len(discs) == 1 and not lines:
        for t in targets:
            ok = _disc_in_atom(discs[0], t)
            if ok is None:
                raise Unsupported(f"{name}: non-convex target atom")
            if not ok:
                raise Unsupported(f"{name}: disc not contained in {t}")
        return Check(name, True, "analytic")
    if discs or len(lines) < 3:
        raise Unsupported(f"{name}: mixed disc/polygon sets are not handled analytically")
    verts = []
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            v = _line_meet(lines[i], lines[j])
            if v is not None and all(l.value(v) <= 0 for l in lines):
                verts.append(v)
    if not verts:
        raise Unsupported(f"{name}: polygon is empty or unbounded")
    for t in targets:
        if t.kind not in ("disc", "halfplane", "trivial"):
            raise Unsupported(f"{name}: non-convex target atom")
        for v in verts:
            if not t.contains(v):
                if a.contains(v):
                    return Check(name, False, "analytic", len(verts), v, "vertex outside target")
                raise Unsupported(f"{name}: boundary vertex excluded by strictness")
    return Check(name, True, "analytic", len(verts))


def check_subset(a: Region, b: Region, name: str, mode: str = "samples", mesh: int = 160,
                 window: tuple[float, float, float, float] | None = None) -> Check:
    if mode == "analytic":
        return analytic_subset(a, b, name)
    return sampled_subset(a, b, name, mesh, window)


# -- Hurwitz-type geometry ---------------------------------------------------------


def verify_geom_hurwitz(alg: Any, Q: Region, mode: str = "samples", mesh: int = 160,
                        envelope: Region | None = None) -> GeometryReport:
    """Check the hypotheses of the geometric monotonicity criterion for a Gaussian algorithm.

    For each ``a = sigma(1+i)``: (i) ``C(a)^{-1} ⊆ sigma(Q)``; (ii) for ``b``
    in ``B(sigma_y(a), 2)`` with ``|b| > 1`` and ``b != -2 conj(a)``,
    ``(b + sigma(Q))`` misses ``F^{-1}``; (iii) ``(-2 conj(a) + sigma(Q))^{-1} ⊆ sigma_y(Q)``.
    Also checks ``Q ⊆ F`` and ``C(u) = ∅`` for units ``u``.

    ``envelope`` replaces ``F`` by a superset, which makes every condition
    harder to meet; the perturbed family defaults to ``S_r``.
    """
    from .algorithms import cell, fundamental_set

    if alg.ring is not G:
        raise Unsupported("the Hurwitz-type criterion is stated for Gaussian integers")
    if envelope is None and alg.kind == "perturbed_hurwitz":
        envelope = corner_set(alg.param)
    F = envelope if envelope is not None else fundamental_set(alg)
    F_inv = F.invert()
    checks: list[Check] = []
    checks.append(sampled_subset(Q, F, "Q ⊆ F", mesh))
    for u in units(G):
        c_u = inter(cell(alg, u), F_inv)
        checks.append(sampled_empty(c_u, f"C({u}) = ∅", mesh))
    for s in SIGMA:
        a = s(G(1, 1))
        sQ = Q.apply_symmetry(s)
        c_a = inter(cell(alg, a), F_inv)
        if mode == "analytic":
            try:
                checks.append(analytic_subset(c_a.invert(), sQ, f"(i) a={a}"))
            except Unsupported:
                checks.append(sampled_subset(c_a.invert(), sQ, f"(i) a={a}", mesh))
        else:
            checks.append(sampled_subset(c_a.invert(), sQ, f"(i) a={a}", mesh))
        center = SIGMA_Y(a)
        forbidden = -a.conj() * 2
        for b in _lattice_in_open_disc(center, 4):
            if b == forbidden or b.norm() <= 1:
                continue
            checks.append(sampled_disjoint(sQ + b, F_inv, f"(ii) a={a} b={b}", mesh))
        checks.append(sampled_subset((sQ + forbidden).invert(), Q.apply_symmetry(SIGMA_Y * s),
                                     f"(iii) a={a}", mesh))
    return GeometryReport(f"{alg.name} with Q", checks)


def _lattice_in_open_disc(center: RingElement, r2: int) -> list[RingElement]:
    from .rings import elements_in_disc

    return elements_in_disc(center.ring, center, r2, strict=True)


# -- general family criterion ---------------------------------------------------


@dataclass(frozen=True)
class RegionFamily:
    """``gamma -> F_gamma`` given by explicit overrides and a default."""

    ring: RingDescriptor
    default: Region
    overrides: tuple[tuple[RingElement, Region], ...] = ()

    def __call__(self, gamma: RingElement) -> Region:
        for g, r in self.overrides:
            if g == gamma:
                return r
        return self.default

    def members(self) -> list[Region]:
        seen = [self.default]
        for _, r in self.overrides:
            if r not in seen:
                seen.append(r)
        return seen

    def union_set(self) -> Region:
        return union(*self.members())


def uniform_disc_family(ring: RingDescriptor, r2: Any) -> RegionFamily:
    return RegionFamily(ring, disc(KElement(ring, 0, 0, 1), Fraction(r2)))


def verify_disc_family(family: RegionFamily, mesh: int = 120, norm_window: int = 2) -> GeometryReport:
    """Check the general monotonicity criterion for a family of sets inside the unit disc.

    (i) the translates ``gamma + F_gamma`` cover a fundamental cell;
    (ii) ``theta + F_theta`` misses ``F^{-1}`` for units ``theta``;
    (iii) for ``1 < |theta| < 2`` and ``phi`` in ``B(-conj(theta)/(|theta|^2-1), |theta|^2/(|theta|^2-1))``,
    ``(F_phi ∩ (F^{-1} - phi))^{-1}`` misses ``theta + F_theta``.
    Here ``F`` is the union of all members and ``F^{-1}`` its inverse.
    """
    ring = family.ring
    checks: list[Check] = []
    unit_disc = disc(KElement(ring, 0, 0, 1), 1)
    for m in family.members():
        checks.append(sampled_subset(m, unit_disc, "F_gamma ⊆ B(0)", mesh))
    checks.append(_check_cover(family, mesh))
    F = family.union_set()
    F_inv = F.invert()
    for th in units(ring):
        checks.append(sampled_disjoint(family(th) + th, F_inv, f"(ii) theta={th}", mesh))
    zero = KElement(ring, 0, 0, 1)
    for th in _elements_norm_between(ring, 1, 4):
        n = th.norm()
        c = KElement.from_ring(-th.conj()) / (n - 1)
        r2 = Fraction(n * n, (n - 1) ** 2)
        target = family(th) + th
        for phi in _k_disc_lattice(ring, c, r2):
            pre = inter(family(phi), F_inv.translate(zero - KElement.from_ring(phi)))
            checks.append(sampled_disjoint(target, pre.invert(), f"(iii) theta={th} phi={phi}", mesh))
    return GeometryReport("family criterion", checks)


def _check_cover(family: RegionFamily, mesh: int) -> Check:
    """Every grid point of the Voronoi cell of 0 lies in some ``gamma + F_gamma``."""
    from .rings import elements_in_disc

    ring = family.ring
    cell0 = _voronoi_cell(ring)
    box = cell0.bbox()
    assert box is not None
    near = elements_in_disc(ring, KElement(ring, 0, 0, 1), 4)
    n = 0
    for p in grid_points(ring, box, mesh):
        if not cell0.contains(p):
            continue
        n += 1
        if not any(family(g).contains(p - g) for g in near):
            return Check("(i) covering", False, "samples", n, p, "point covered by no translate")
    # the vertices of the cell are the farthest points; test them directly
    for v in _cell_vertices(ring):
        if not any(family(g).contains(v - g) for g in near):
            return Check("(i) covering", False, "exact", n, v, "cell vertex covered by no translate")
    return Check("(i) covering", True, "samples", n)


def _voronoi_cell(ring: RingDescriptor) -> Region:
    nb = [g for g in _elements_norm_between(ring, 0, 8)]
    return inter(*(halfplane(g, Fraction(g.norm(), 2), ring=ring) for g in nb))


def _cell_vertices(ring: RingDescriptor) -> list[KElement]:
    cell0 = _voronoi_cell(ring)
    lines = [a for a in cell0.atoms() if a.kind == "halfplane"]
    out: list[KElement] = []
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            v = _line_meet(lines[i], lines[j])
            if v is not None and cell0.contains(v) and v not in out:
                out.append(v)
    return out


def _elements_norm_between(ring: RingDescriptor, lo: int, hi: int) -> list[RingElement]:
    """Elements with ``lo < N(x) < hi``."""
    from .rings import elements_in_disc

    return [g for g in elements_in_disc(ring, KElement(ring, 0, 0, 1), hi, strict=True) if g.norm() > lo]


def _k_disc_lattice(ring: RingDescriptor, c: KElement, r2: Fraction) -> list[RingElement]:
    from .rings import elements_in_disc

    return elements_in_disc(ring, c, r2, strict=True)


def reciprocal_membership_mismatches(r: Region, points: Iterable[KElement]) -> list[KElement]:
    """Points ``w`` where membership in ``r^{-1}`` disagrees with membership of ``1/w`` in ``r``."""
    inv = r.invert()
    bad = []
    for w in points:
        if w.is_zero():
            continue
        a, b = inv.contains(w), r.contains(w.inverse())
        if a is not None and b is not None and a != b:
            bad.append(w)
    return bad
