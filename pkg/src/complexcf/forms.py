"""Binary sigma-forms and their orbits along continued fraction expansions.

A sigma-form attached to the matrix ``X = [[A, B], [C, D]]`` is

    f(xi, eta) = A xi^s xi + B xi^s eta + C eta^s xi + D eta^s eta

where ``s`` is either the identity (quadratic forms) or complex conjugation
(Hermitian forms). Convergent matrices ``g = [[p_n, p_{n-1}], [q_n, q_{n-1}]]``
act by ``X -> (g^t)^s X g``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .arithmetic.ball import BallComplex, BallSource, ceil_sqrt
from .arithmetic.kfield import KElement, as_k
from .arithmetic.predicates import hermitian_sign
from .arithmetic.surd import LNumber, QuadraticSurd
from .errors import ComplexCFError, MonotonicityRequired, NotAZero, PrecisionExhausted, Unsupported, WrongRing
from .expansion import ExpansionTrace, abs_bounds, neat_subset
from .rings import RingDescriptor, RingElement, ring_by_name

SIGMAS = ("id", "conj")
DEFAULT_LAMBDA = 2
_BITS = 64


def _up_sqrt(q: Fraction) -> Fraction:
    """Upper bound for ``sqrt(q)`` on a 2^-64 grid."""
    s = 1 << _BITS
    return Fraction(ceil_sqrt(Fraction(q) * s * s), s)


def _k(ring: RingDescriptor, x: Any) -> KElement:
    return as_k(ring, x)


@dataclass(frozen=True)
class SigmaForm:
    ring: RingDescriptor
    sigma: str
    A: KElement
    B: KElement
    C: KElement
    D: KElement

    def __post_init__(self) -> None:
        if self.sigma not in SIGMAS:
            raise ComplexCFError(f"sigma must be one of {SIGMAS}")
        for e in (self.A, self.B, self.C, self.D):
            if e.ring is not self.ring:
                raise WrongRing("form entries over a different ring")

    # -- construction ------------------------------------------------------

    @classmethod
    def make(cls, ring: RingDescriptor, entries: Sequence[Any], sigma: str = "id",
             symmetric: bool = True) -> SigmaForm:
        """Entries in row order ``A, B, C, D``; symmetry is enforced unless disabled."""
        A, B, C, D = (_k(ring, e) for e in entries)
        out = cls(ring, sigma, A, B, C, D)
        if symmetric and not out.is_symmetric():
            raise ComplexCFError("matrix is not sigma-symmetric")
        return out

    @classmethod
    def from_poly(cls, a: Any, b: Any, c: Any, ring: RingDescriptor | None = None) -> SigmaForm:
        """``[[a, b/2], [b/2, c]]``: the quadratic form of ``a z^2 + b z + c``."""
        if ring is None:
            ring = next(v.ring for v in (a, b, c) if isinstance(v, (RingElement, KElement)))
        half = _k(ring, b) * Fraction(1, 2)
        return cls.make(ring, (a, half, half, c), "id")

    @classmethod
    def from_surd(cls, z: QuadraticSurd) -> SigmaForm:
        return cls.from_poly(*z.minimal_poly(), ring=z.ring)

    @classmethod
    def hermitian(cls, a: Any, b: Any, c: Any, ring: RingDescriptor) -> SigmaForm:
        """``[[a, b], [conj b, c]]``, i.e. ``a|z|^2 + b conj(z) + conj(b) z + c``."""
        bk = _k(ring, b)
        return cls.make(ring, (a, bk, bk.conj(), c), "conj")

    # -- structure ---------------------------------------------------------

    @property
    def entries(self) -> tuple[KElement, KElement, KElement, KElement]:
        return (self.A, self.B, self.C, self.D)

    def _s(self, x: Any) -> Any:
        return x.conj() if self.sigma == "conj" else x

    def is_symmetric(self) -> bool:
        if self.C != self._s(self.B):
            return False
        if self.sigma == "conj":
            return self.A.is_rational() and self.D.is_rational()
        return True

    def det(self) -> KElement:
        return self.A * self.D - self.B * self.C

    def k(self) -> int:
        """Least positive ``k`` with ``k X`` integral."""
        out = 1
        for e in self.entries:
            out = out * e.d // math.gcd(out, e.d)
        return out

    def in_k_inverse_gamma(self, k: int) -> bool:
        return all((e * k).is_integral() for e in self.entries)

    def key(self) -> tuple:
        return (self.sigma,) + tuple((e.a, e.b, e.d) for e in self.entries)

    def max_entry_norm(self) -> Fraction:
        return max(e.norm() for e in self.entries)

    # -- evaluation --------------------------------------------------------

    def evaluate(self, xi: Any, eta: Any) -> Any:
        """``f(xi, eta)`` for ring, field, extension or ball arguments."""
        if isinstance(xi, (RingElement, int, Fraction)):
            xi = _k(self.ring, xi)
        if isinstance(eta, (RingElement, int, Fraction)):
            eta = _k(self.ring, eta)
        if isinstance(xi, QuadraticSurd):
            xi = xi.as_l()
        if isinstance(xi, LNumber) or isinstance(eta, LNumber):
            if self.sigma == "conj":
                raise Unsupported("Hermitian forms leave the quadratic extension; use vanishes_at")
        xs, es = self._s(xi), self._s(eta)
        return xs * xi * self.A + xs * eta * self.B + es * xi * self.C + es * eta * self.D

    def at(self, zeta: Any) -> Any:
        """The one-variable polynomial ``f(zeta, 1)``."""
        return self.evaluate(zeta, 1)

    def vanishes_at(self, z: Any) -> bool | None:
        """Exact zero test of ``f(z, 1)``; for balls, whether 0 stays possible."""
        if isinstance(z, BallSource):
            z = z.at(256)
        if isinstance(z, BallComplex):
            if self.sigma == "conj":
                try:
                    return hermitian_sign(z, self.A.real, self.B, self.D.real) == 0
                except PrecisionExhausted:
                    return True
            zb = z
            return (zb * zb * BallComplex.exact(self.A, z.prec, self.ring)
                    + zb * BallComplex.exact(self.B + self.C, z.prec, self.ring)
                    + BallComplex.exact(self.D, z.prec, self.ring)).contains_zero()
        if self.sigma == "conj":
            return hermitian_sign(z, self.A.real, self.B, self.D.real) == 0
        v = self.at(z)
        return v.is_zero()

    # -- action ------------------------------------------------------------

    def act(self, g: GMatrix) -> SigmaForm:
        return act(self, g)

    # -- io ----------------------------------------------------------------

    def to_json(self) -> dict:
        return {"sigma": self.sigma, "k": self.k(), "ring": self.ring.code,
                "entries": [str(e) for e in self.entries]}

    @classmethod
    def from_json(cls, obj: dict) -> SigmaForm:
        ring = ring_by_name(obj["ring"])
        form = cls.make(ring, obj["entries"], obj.get("sigma", "id"), symmetric=False)
        k = obj.get("k")
        if k is not None and not form.in_k_inverse_gamma(int(k)):
            raise ComplexCFError(f"entries are not in (1/{k}) Gamma")
        return form

    def __str__(self) -> str:
        return f"[[{self.A}, {self.B}], [{self.C}, {self.D}]]_{self.sigma}"


@dataclass(frozen=True)
class GMatrix:
    """``[[p, p1], [q, q1]]`` with determinant +-1."""

    p: RingElement
    p1: RingElement
    q: RingElement
    q1: RingElement

    def __post_init__(self) -> None:
        d = self.det()
        if d.b != 0 or abs(d.a) != 1:
            raise ComplexCFError(f"convergent matrix has determinant {d}, expected +-1")

    def det(self) -> RingElement:
        return self.p * self.q1 - self.p1 * self.q

    @classmethod
    def identity(cls, ring: RingDescriptor) -> GMatrix:
        return cls(ring.one(), ring.zero(), ring.zero(), ring.one())

    @classmethod
    def from_trace(cls, trace: ExpansionTrace, n: int) -> GMatrix:
        s = trace.steps[n]
        p1, q1 = trace.prev_pq(n)
        return cls(s.p, p1, s.q, q1)

    def rows(self) -> tuple[tuple[RingElement, RingElement], tuple[RingElement, RingElement]]:
        return ((self.p, self.p1), (self.q, self.q1))


def act(X: SigmaForm, g: GMatrix) -> SigmaForm:
    """``(g^t)^s X g`` computed entrywise."""
    r = X.ring
    p, p1, q, q1 = (_k(r, v) for v in (g.p, g.p1, g.q, g.q1))
    s = X._s
    # columns of X g
    c0 = (X.A * p + X.B * q, X.C * p + X.D * q)
    c1 = (X.A * p1 + X.B * q1, X.C * p1 + X.D * q1)
    A = s(p) * c0[0] + s(q) * c0[1]
    B = s(p) * c1[0] + s(q) * c1[1]
    C = s(p1) * c0[0] + s(q1) * c0[1]
    D = s(p1) * c1[0] + s(q1) * c1[1]
    return SigmaForm(r, X.sigma, A, B, C, D)


def forms_along(trace: ExpansionTrace, X: SigmaForm) -> list[SigmaForm]:
    return [act(X, GMatrix.from_trace(trace, n)) for n in range(len(trace.steps))]


# -- orbits --------------------------------------------------------------------------------


def _check_zero(trace: ExpansionTrace, X: SigmaForm) -> None:
    if trace.backend == "external":
        raise Unsupported("orbit checks need the expanded number")
    z = trace.steps[0].z if trace.backend == "ball" else trace.z
    if not X.vanishes_at(z):
        raise NotAZero(f"f(z, 1) != 0 for X = {X}")


def _abs_hi(v: Any) -> Fraction:
    return abs_bounds(v)[1]


@dataclass(frozen=True)
class EntryBound:
    """``c(M) = (2|A||z| + |B| + |C|) M + |A| M^2`` and its companions."""

    M: Fraction
    a_bound: Fraction  # bounds |A_n| via c(M)
    d_bound: Fraction  # bounds |D_n| via c(M + 1)
    b_bound: Fraction  # bounds |B_n| and |C_n|
    printed_a_bound: Fraction  # the variant with |Az| M^2 in place of |A| M^2

    def to_json(self) -> dict:
        return {k: {"exact": str(v), "approx": float(v)} for k, v in
                (("M", self.M), ("A", self.a_bound), ("D", self.d_bound), ("B", self.b_bound),
                 ("A_printed_variant", self.printed_a_bound))}


def entry_bound(X: SigmaForm, z: Any, M: Fraction) -> EntryBound:
    a = _up_sqrt(X.A.norm())
    b = _up_sqrt(X.B.norm())
    c = _up_sqrt(X.C.norm())
    zh = _abs_hi(z)
    lin = 2 * a * zh + b + c

    def cm(m: Fraction) -> Fraction:
        return lin * m + a * m * m

    ca, cd = cm(M), cm(M + 1)
    # |B_n|^2 = |A_n D_n - det X| by determinant invariance
    bb = _up_sqrt(ca * cd + _up_sqrt(X.det().norm()))
    return EntryBound(M, ca, cd, bb, lin * M + a * zh * M * M)


@dataclass
class OrbitReport:
    X: SigmaForm
    N: list[int]
    forms: list[SigmaForm]
    first_seen: list[int]
    stabilized_at: int
    stabilized: bool
    bound: EntryBound
    max_entry_norm: Fraction
    checked: dict[str, int] = field(default_factory=dict)
    violations: list[dict] = field(default_factory=list)

    @property
    def cardinality(self) -> int:
        return len(self.forms)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "X": self.X.to_json(),
            "cardinality": self.cardinality,
            "stabilized_at": self.stabilized_at,
            "stabilized": self.stabilized,
            "N_size": len(self.N),
            "max_entry_abs": float(self.max_entry_norm) ** 0.5,
            "bound": self.bound.to_json(),
            "checked": self.checked,
            "violations": self.violations,
            "forms": [f.to_json() for f in self.forms],
            "first_seen": self.first_seen,
        }


def default_neat(trace: ExpansionTrace) -> list[int]:
    """All indices when ``|q_n|`` never decreases, else a neat subset with alpha = 2."""
    norms = [1] + trace.q_norms
    if all(b >= a for a, b in zip(norms, norms[1:])):
        return list(range(len(trace.steps)))
    return neat_subset(trace, DEFAULT_LAMBDA).N


def orbit_along(trace: ExpansionTrace, X: SigmaForm, N: Iterable[int] | None = None) -> OrbitReport:
    """The transformed forms over ``N`` with per-step identity checks and the entry bound."""
    _check_zero(trace, X)
    forms = forms_along(trace, X)
    N = sorted(default_neat(trace) if N is None else N)
    det = X.det()
    k = X.k()
    checked = {"det": 0, "symmetric": 0, "A_is_f(p,q)": 0, "D_is_f(p1,q1)": 0, "integral": 0, "bound": 0}
    violations: list[dict] = []

    def bad(n: int, what: str) -> None:
        violations.append({"n": n, "check": what})

    for n, Y in enumerate(forms):
        s = trace.steps[n]
        p1, q1 = trace.prev_pq(n)
        for name, ok in (("det", Y.det() == det), ("symmetric", Y.is_symmetric()),
                         ("A_is_f(p,q)", Y.A == X.evaluate(s.p, s.q)),
                         ("D_is_f(p1,q1)", Y.D == X.evaluate(p1, q1)),
                         ("integral", Y.in_k_inverse_gamma(k))):
            checked[name] += 1
            if not ok:
                bad(n, name)

    M = max((_abs_hi(trace.steps[n].delta) for n in N), default=Fraction(0))
    z = trace.steps[0].z if trace.backend == "ball" else trace.z
    eb = entry_bound(X, z, M)
    seen: dict[tuple, int] = {}
    distinct: list[SigmaForm] = []
    first: list[int] = []
    max_norm = Fraction(0)
    for n in N:
        Y = forms[n]
        checked["bound"] += 1
        na, nd = Y.A.norm(), Y.D.norm()
        nb = max(Y.B.norm(), Y.C.norm())
        if na > eb.a_bound ** 2 or nd > eb.d_bound ** 2 or nb > eb.b_bound ** 2:
            bad(n, "bound")
        max_norm = max(max_norm, Y.max_entry_norm())
        if Y.key() not in seen:
            seen[Y.key()] = n
            distinct.append(Y)
            first.append(n)
    last_new = first[-1] if first else -1
    stabilized = _stable(trace, N, last_new)
    return OrbitReport(X, N, distinct, first, last_new, stabilized, eb, max_norm, checked, violations)


def _stable(trace: ExpansionTrace, N: list[int], last_new: int) -> bool:
    """No new form after the window in which repetition is forced.

    For an eventually periodic expansion with period ``(n0, k)`` the forms
    repeat with period dividing ``2k`` from index ``n0 - 1`` on (the zero
    ``z_{n+1}`` fixes the form up to sign). Otherwise require the second half
    of ``N`` to add nothing.
    """
    if not N:
        return False
    if trace.period is not None and trace.period[1] > 0:
        n0, k = trace.period
        horizon = max(n0 - 1, 0) + 2 * k
        return last_new < horizon and N[-1] >= horizon - 1
    return last_new <= N[len(N) // 2]


# -- zero correspondence ------------------------------------------------------------------


@dataclass(frozen=True)
class ZeroVerdict:
    n: int
    f_vanishes: bool
    fn_vanishes: bool

    @property
    def agree(self) -> bool:
        return self.f_vanishes == self.fn_vanishes

    def to_json(self) -> dict:
        return {"n": self.n, "f(z,1)=0": self.f_vanishes, "f_n(z_{n+1},1)=0": self.fn_vanishes,
                "agree": self.agree}


def zero_correspondence(trace: ExpansionTrace, X: SigmaForm, n: int) -> ZeroVerdict:
    """Exact comparison of ``f(z, 1) = 0`` with ``f_n(z_{n+1}, 1) = 0``."""
    if trace.backend != "exact":
        raise Unsupported("the zero correspondence is checked on exact traces")
    Y = act(X, GMatrix.from_trace(trace, n))
    return ZeroVerdict(n, bool(X.vanishes_at(trace.z)), bool(Y.vanishes_at(trace.z_at(n + 1))))


# -- Hermitian loci ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootLocus:
    """Zero set of a Hermitian polynomial: circle, point, line, empty or the plane."""

    kind: str
    center: KElement | None = None
    r2: Fraction | None = None
    normal: KElement | None = None  # line: Re(conj(normal) z) = offset
    offset: Fraction | None = None

    def contains(self, w: Any) -> bool:
        if self.kind == "empty":
            return False
        if self.kind == "plane":
            return True
        if self.kind == "line":
            return hermitian_sign(w, 0, self.normal, -2 * self.offset) == 0
        return hermitian_sign(w, 1, -self.center, self.center.norm() - self.r2) == 0

    def sup_abs(self) -> Fraction | None:
        """Upper bound for ``|w|`` on the locus; None when unbounded."""
        if self.kind in ("circle", "point"):
            return _up_sqrt(self.center.norm()) + _up_sqrt(self.r2)
        if self.kind == "empty":
            return Fraction(0)
        return None

    def to_json(self) -> dict:
        out: dict[str, Any] = {"kind": self.kind}
        if self.center is not None:
            out["center"] = str(self.center)
            out["r2"] = str(self.r2)
        if self.normal is not None:
            out["normal"] = str(self.normal)
            out["offset"] = str(self.offset)
        return out


def hermitian_roots(X: SigmaForm) -> RootLocus:
    """Zeros of ``a|z|^2 + b conj(z) + conj(b) z + c``: ``|z + b/a|^2 = (|b|^2 - ac)/a^2``."""
    if X.sigma != "conj" or not X.is_symmetric():
        raise ComplexCFError("hermitian_roots expects a Hermitian matrix")
    a, b, c = X.A.real, X.B, X.D.real
    if a != 0:
        center = b * Fraction(-1) / a
        r2 = (b.norm() - a * c) / (a * a)
        if r2 < 0:
            return RootLocus("empty")
        return RootLocus("point" if r2 == 0 else "circle", center, r2)
    if not b.is_zero():
        # 2 Re(conj(b) z) = -c
        return RootLocus("line", normal=b, offset=-c / 2)
    return RootLocus("plane" if c == 0 else "empty")


# -- quotient bounds ---------------------------------------------------------------------------


@dataclass
class QuotientBound:
    branch: str  # root_hit | bounded
    root_hits: list[int]
    lam: Fraction
    circle_sup: Fraction | None
    bound: Fraction | None
    remark_bound: Fraction | None
    observed_sup_norm: int
    holds: bool
    M: Fraction

    @property
    def observed_sup(self) -> float:
        return math.sqrt(self.observed_sup_norm)

    def to_json(self) -> dict:
        def num(v: Any) -> Any:
            return None if v is None else {"exact": str(v), "approx": float(v)}

        return {"branch": self.branch, "root_hits": self.root_hits, "lambda": str(self.lam),
                "circle_sup": num(self.circle_sup), "bound": num(self.bound),
                "remark_bound": num(self.remark_bound), "observed_sup": self.observed_sup,
                "holds": self.holds, "M": num(self.M)}


def quotient_bound_from_orbit(trace: ExpansionTrace, X: SigmaForm, lam: Any = DEFAULT_LAMBDA) -> QuotientBound:
    """Either convergents on the zero locus, or an explicit bound on ``|a_n|``.

    Off ``N = {n : |z_{n+1}| > lam}`` we have ``|z_{n+1}| <= lam``; on ``N`` the
    iterate lies on the circle of ``f_n``. With ``|a_n| <= |z_n| + 1`` and a
    unit of slack for ball radii this gives ``max(lam, circle sup, |z|) + 2``.
    """
    if X.sigma != "conj":
        raise ComplexCFError("quotient bounds are derived for Hermitian forms")
    norms = [s.q_norm for s in trace.steps]
    if any(b < a for a, b in zip(norms, norms[1:])):
        raise MonotonicityRequired("|q_n| decreases somewhere along the trace")
    _check_zero(trace, X)
    lam = Fraction(lam)
    if lam <= 1:
        raise ComplexCFError("lambda must exceed 1")
    forms = forms_along(trace, X)
    observed = max(a.norm() for a in trace.a)
    z = trace.steps[0].z if trace.backend == "ball" else trace.z
    M = max(_abs_hi(s.delta) for s in trace.steps)
    hits = [n for n, Y in enumerate(forms) if Y.A.is_zero()]
    if hits:
        return QuotientBound("root_hit", hits, lam, None, None, None, observed, True, M)
    circle_sup = Fraction(0)
    seen: set[tuple] = set()
    for n, Y in enumerate(forms):
        zn = trace.z_at(n + 1)
        if zn is None or abs_bounds(zn)[0] <= lam or Y.key() in seen:
            continue
        seen.add(Y.key())
        sup = hermitian_roots(Y).sup_abs()
        if sup is not None:
            circle_sup = max(circle_sup, sup)
    z_hi = _abs_hi(z)
    bound = max(lam, circle_sup, z_hi) + 2
    # from the entry bound alone: |A_n| >= 1/k, |B_n| <= b_bound, radius^2 = -det / A_n^2
    k = X.k()
    eb = entry_bound(X, z, M)
    rad = _up_sqrt(_up_sqrt(X.det().norm()))
    remark = max(lam, k * (eb.b_bound + rad), z_hi) + 2
    holds = observed <= bound * bound
    return QuotientBound("bounded", [], lam, circle_sup, bound, remark, observed, holds, M)


__all__ = [
    "DEFAULT_LAMBDA",
    "EntryBound",
    "GMatrix",
    "OrbitReport",
    "QuotientBound",
    "RootLocus",
    "SigmaForm",
    "ZeroVerdict",
    "act",
    "default_neat",
    "entry_bound",
    "forms_along",
    "hermitian_roots",
    "orbit_along",
    "quotient_bound_from_orbit",
    "zero_correspondence",
]
