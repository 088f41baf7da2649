"""The expansion engine: iterates, Q-pairs, relative errors and the monotonicity diagnostics."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .algorithms import AlgorithmSpec, choose
from .arithmetic.ball import MAX_PREC, BallComplex, BallSource, ceil_sqrt, floor_sqrt
from .arithmetic.kfield import KElement
from .arithmetic.predicates import hermitian_sign
from .arithmetic.surd import LNumber, QuadraticSurd, embed, surd_step
from .errors import ContainsZero, HypothesisFailed, PrecisionExhausted, WrongRing
from .rings import G, SIGMA_Y, RingDescriptor, RingElement, apply_symmetry

EXACT_BUDGET = 500
BALL_BUDGET = 200


@dataclass
class ExpansionStep:
    n: int
    a: RingElement
    p: RingElement
    q: RingElement
    z: Any = None  # QuadraticSurd, BallComplex or None for external sequences
    delta: Any = None  # LNumber or BallComplex
    r: KElement | None = None  # q_n / q_{n-1}

    @property
    def q_norm(self) -> int:
        return self.q.norm()

    def to_json(self) -> dict:
        out: dict[str, Any] = {"n": self.n, "a": str(self.a), "p": str(self.p), "q": str(self.q),
                               "q_norm": str(self.q_norm)}
        if self.z is not None:
            out["z"] = _fmt(self.z)
        if self.delta is not None:
            out["delta"] = _fmt(self.delta)
            out["delta_abs"] = _abs_decimal(self.delta)
        if self.r is not None:
            out["r"] = str(self.r)
        return out


def _fmt(v: Any) -> str:
    if isinstance(v, LNumber):
        return f"{v.x} + ({v.y})*sqrt({v.delta})"
    return str(v)


def _abs_decimal(v: Any, digits: int = 17) -> str:
    lo, hi = abs_bounds(v, 96)
    return f"{float((lo + hi) / 2):.{digits}g}"


@dataclass
class ExpansionTrace:
    z: Any
    alg: AlgorithmSpec | None
    backend: str  # exact | ball | external
    steps: list[ExpansionStep]
    termination: str
    period: tuple[int, int] | None = None
    z_next: Any = None  # z_{N+1} after the last recorded step
    precision: int | None = None
    hint: str | None = None

    @property
    def ring(self) -> RingDescriptor:
        return self.steps[0].a.ring

    @property
    def a(self) -> list[RingElement]:
        return [s.a for s in self.steps]

    @property
    def q(self) -> list[RingElement]:
        return [s.q for s in self.steps]

    @property
    def q_norms(self) -> list[int]:
        return [s.q_norm for s in self.steps]

    def z_at(self, n: int) -> Any:
        if n < len(self.steps):
            return self.steps[n].z
        if n == len(self.steps):
            return self.z_next
        raise IndexError(n)

    def prev_pq(self, n: int) -> tuple[RingElement, RingElement]:
        ring = self.ring
        if n == 0:
            return ring.one(), ring.zero()
        s = self.steps[n - 1]
        return s.p, s.q

    def header(self) -> dict:
        return {
            "type": "header",
            "backend": self.backend,
            "algorithm": None if self.alg is None else self.alg.to_json(),
            "input": _input_json(self.z),
            "precision": self.precision,
        }

    def footer(self) -> dict:
        out: dict[str, Any] = {"type": "termination", "termination": self.termination, "steps": len(self.steps)}
        if self.period is not None:
            out["period"] = {"n0": self.period[0], "k": self.period[1]}
        if self.hint:
            out["hint"] = self.hint
        return out

    def to_json(self) -> dict:
        return {**self.header(), **self.footer(), "type": "trace", "steps": [s.to_json() for s in self.steps]}

    def to_jsonl(self) -> str:
        lines = [self.header()] + [{"type": "step", **s.to_json()} for s in self.steps] + [self.footer()]
        return "\n".join(json.dumps(x, sort_keys=True) for x in lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "a_n", "q_norm", "delta_abs", "q_increasing"])
        prev = 0
        for s in self.steps:
            d = _abs_decimal(s.delta) if s.delta is not None else ""
            w.writerow([s.n, str(s.a), s.q_norm, d, int(s.q_norm > prev)])
            prev = s.q_norm
        return buf.getvalue()


def _input_json(z: Any) -> Any:
    if isinstance(z, QuadraticSurd):
        return {"surd": z.to_json()}
    if isinstance(z, BallComplex):
        return {"ball": z.to_json()}
    if isinstance(z, BallSource):
        return {"ball_source": z.label}
    if isinstance(z, (list, tuple)):
        return {"sequence": [str(a) for a in z]}
    return str(z)


# -- runs ------------------------------------------------------------------------------


def run(z: Any, alg: AlgorithmSpec, budget: int | None = None, stop_at_period: bool = False,
        max_prec: int = MAX_PREC) -> ExpansionTrace:
    """Expand ``z`` with ``alg``.

    Surds use exact arithmetic and period detection; balls and ball sources use
    rigorous enclosures and restart at doubled precision when a decision is
    undecidable.
    """
    if isinstance(z, QuadraticSurd):
        return _run_exact(z, alg, EXACT_BUDGET if budget is None else budget, stop_at_period)
    if isinstance(z, (BallComplex, BallSource)):
        return _run_ball(z, alg, BALL_BUDGET if budget is None else budget, max_prec)
    raise TypeError("run expects a quadratic surd, a ball or a ball source")


def _run_exact(z: QuadraticSurd, alg: AlgorithmSpec, budget: int, stop_at_period: bool) -> ExpansionTrace:
    ring = z.ring
    zl = z.as_l()
    p_prev, q_prev = ring.one(), ring.zero()
    p, q = None, None
    seen: dict[tuple, int] = {}
    steps: list[ExpansionStep] = []
    period: tuple[int, int] | None = None
    zn = z
    for n in range(budget):
        if period is None:
            key = zn.key()
            if key in seen:
                period = (seen[key], n - seen[key])
                if stop_at_period:
                    break
            else:
                seen[key] = n
        if period is not None:
            src = steps[n - period[1]]
            a, zn = src.a, src.z
        else:
            a = choose(alg, zn)
        if n == 0:
            p, q = a, ring.one()
        else:
            p, q, p_prev, q_prev = a * p + p_prev, a * q + q_prev, p, q
        delta = (zl * q - p) * q
        r = KElement.from_ring(q) / q_prev if n > 0 and not q_prev.is_zero() else None
        steps.append(ExpansionStep(n, a, p, q, zn, delta, r))
        zn = surd_step(zn, a)
    if period is None and len(steps) == budget:
        # the state after the last step may close the cycle
        key = zn.key()
        if key in seen:
            period = (seen[key], budget - seen[key])
    term = "period_found" if period is not None else "budget_reached"
    return ExpansionTrace(z, alg, "exact", steps, term, period, zn)


def _run_ball(src: Any, alg: AlgorithmSpec, budget: int, max_prec: int) -> ExpansionTrace:
    source = src if isinstance(src, BallSource) else BallSource.of_ball(src)
    prec = max(128, 4 * budget) if not source.fixed else source.at(128).prec
    while True:
        steps, term, z_next = _ball_pass(source, alg, budget, prec)
        if term != "precision_exhausted" or source.fixed or prec >= max_prec:
            break
        prec = min(2 * prec, max_prec)
    hint = _ball_hint(steps)
    return ExpansionTrace(src, alg, "ball", steps, term, None, z_next, prec, hint)


def _ball_pass(source: BallSource, alg: AlgorithmSpec, budget: int, prec: int):
    ring = alg.ring
    z0 = source.at(prec)
    zn = z0
    p_prev, q_prev = ring.one(), ring.zero()
    p = q = ring.zero()
    steps: list[ExpansionStep] = []
    for n in range(budget):
        try:
            a = choose(alg, zn)
        except PrecisionExhausted:
            return steps, "precision_exhausted", zn
        if n == 0:
            p, q = a, ring.one()
        else:
            p, q, p_prev, q_prev = a * p + p_prev, a * q + q_prev, p, q
        delta = (z0 * q - p) * q
        r = KElement.from_ring(q) / q_prev if n > 0 and not q_prev.is_zero() else None
        steps.append(ExpansionStep(n, a, p, q, zn, delta, r))
        try:
            zn = (zn - a).inv()
        except ContainsZero:
            return steps, "precision_exhausted", None
    return steps, "budget_reached", zn


def _ball_hint(steps: list[ExpansionStep]) -> str | None:
    """Report the first pair of steps whose balls overlap with equal quotients; never a claim."""
    for j in range(1, len(steps)):
        for i in range(j):
            if steps[i].a == steps[j].a and steps[i].z.overlaps(steps[j].z):
                return f"states {i} and {j} indistinguishable at current precision"
    return None


def run_external(sequence: Sequence[Any], budget: int | None = None, ring: RingDescriptor | None = None
                 ) -> ExpansionTrace:
    """Q-pair data for an arbitrary partial-quotient sequence."""
    seq = list(sequence)
    if ring is None:
        ring = next((x.ring for x in seq if isinstance(x, RingElement)), G)
    els = [x if isinstance(x, RingElement) else KElement.from_ring(ring(int(x))).to_ring() for x in seq]
    if budget is not None:
        els = els[:budget]
    p_prev, q_prev = ring.one(), ring.zero()
    p = q = ring.zero()
    steps = []
    for n, a in enumerate(els):
        if n == 0:
            p, q = a, ring.one()
        else:
            p, q, p_prev, q_prev = a * p + p_prev, a * q + q_prev, p, q
        r = KElement.from_ring(q) / q_prev if n > 0 and not q_prev.is_zero() else None
        steps.append(ExpansionStep(n, a, p, q, None, None, r))
    return ExpansionTrace(tuple(els), None, "external", steps, "budget_reached")


# -- interval helpers --------------------------------------------------------------------


def abs_bounds(v: Any, prec: int = 128) -> tuple[Fraction, Fraction]:
    """Rigorous ``lo <= |v| <= hi``."""
    if isinstance(v, RingElement):
        v = KElement.from_ring(v)
    if isinstance(v, KElement):
        n = v.norm()
        scale = 1 << prec
        lo = Fraction(floor_sqrt(n * scale * scale), scale)
        hi = Fraction(ceil_sqrt(n * scale * scale), scale)
        return lo, hi
    if isinstance(v, (LNumber, QuadraticSurd)):
        v = embed(v, prec)
    if isinstance(v, BallComplex):
        return v.abs_lower(), v.abs_upper()
    raise TypeError(type(v).__name__)


def _sqrt_bounds(n: int, prec: int = 128) -> tuple[Fraction, Fraction]:
    s = 1 << prec
    return Fraction(floor_sqrt(n * s * s), s), Fraction(ceil_sqrt(n * s * s), s)


# -- identities ------------------------------------------------------------------------


@dataclass
class IdentityReport:
    steps: int
    checked: dict[str, int] = field(default_factory=dict)
    violations: list[tuple[int, str]] = field(default_factory=list)
    q_growth: bool = True

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"steps": self.steps, "checked": self.checked, "passed": self.passed,
                "violations": [{"n": n, "identity": k} for n, k in self.violations], "q_growth": self.q_growth}


def verify_identities(trace: ExpansionTrace) -> IdentityReport:
    """Check the determinant identity and the three convergent identities at every step.

    With ``w_n = q_n z - p_n``: (i) ``w_n * z_1 ... z_{n+1} = (-1)^n``;
    (ii) ``(z_{n+1} q_n + q_{n-1}) z = z_{n+1} p_n + p_{n-1}``;
    (iii) ``w_n (q_n z_{n+1} + q_{n-1}) = (-1)^n``, whose modulus is the error formula
    ``|z - p_n/q_n| = |q_n|^{-2} |z_{n+1} + q_{n-1}/q_n|^{-1}``.
    Exact for surd traces; ball traces require the enclosures to contain the exact value.
    """
    rep = IdentityReport(len(trace.steps))
    for k in ("det", "i", "ii", "iii", "step"):
        rep.checked[k] = 0

    def bad(n: int, k: str) -> None:
        rep.violations.append((n, k))

    steps = trace.steps
    ring = trace.ring
    for s in steps:
        p1, q1 = trace.prev_pq(s.n)
        rep.checked["det"] += 1
        if s.p * q1 - p1 * s.q != ring((-1) ** (s.n + 1)):
            bad(s.n, "det")
    if trace.backend == "external":
        return rep
    exact = trace.backend == "exact"
    z = trace.z.as_l() if exact else steps[0].z
    prod: Any = 1
    for s in steps:
        n = s.n
        p1, q1 = trace.prev_pq(n)
        z_next = trace.z_at(n + 1)
        if z_next is None:
            break
        sign = (-1) ** n
        if exact:
            zn1 = z_next.as_l()
            prod = zn1 if n == 0 else prod * zn1
            w = z * s.q - s.p
            checks = {
                "i": (w * prod - sign).is_zero(),
                "ii": ((zn1 * s.q + q1) * z - (zn1 * s.p + p1)).is_zero(),
                "iii": (w * (zn1 * s.q + q1) - sign).is_zero(),
            }
            step_ok = _step_in_range(s.z, s.a)
        else:
            zn1 = z_next
            prod = zn1 if n == 0 else prod * zn1
            w = z * s.q - s.p
            checks = {
                "i": (w * prod).contains(sign),
                "ii": ((zn1 * s.q + q1) * z - (zn1 * s.p + p1)).contains(0),
                "iii": (w * (zn1 * s.q + q1)).contains(sign),
            }
            step_ok = _step_in_range(s.z, s.a)
        for k, ok in checks.items():
            rep.checked[k] += 1
            if not ok:
                bad(n, k)
        rep.checked["step"] += 1
        if step_ok is False:
            bad(n, "step")
    norms = trace.q_norms
    if len(norms) >= 6:
        third = len(norms) // 3
        rep.q_growth = max(norms[-third:]) > max(norms[:third])
    return rep


def _step_in_range(zn: Any, a: RingElement) -> bool | None:
    """``0 < |z_n - a_n| < 1``; None when a ball cannot decide."""
    ak = KElement.from_ring(a)
    if isinstance(zn, BallComplex):
        d = zn - a
        if d.abs_upper() < 1 and not d.contains_zero():
            return True
        if d.abs_lower() >= 1:
            return False
        return None
    return hermitian_sign(zn, 1, -ak, ak.norm() - 1) < 0


# -- neat subsets -------------------------------------------------------------------------


@dataclass
class NeatReport:
    alpha: Fraction
    N: list[int]
    sup_delta: float
    delta_bound_ok: bool
    delta_step_ok: bool
    neat_bound_ok: bool
    monotone_q: bool
    liminf_z_gt_1: bool
    r_contracting: bool

    def to_json(self) -> dict:
        return {"alpha": str(self.alpha), "N": self.N, "sup_delta": self.sup_delta,
                "delta_bound_ok": self.delta_bound_ok, "delta_step_ok": self.delta_step_ok,
                "neat_bound_ok": self.neat_bound_ok,
                "sufficient_conditions": {"monotone_q": self.monotone_q, "liminf_z_gt_1": self.liminf_z_gt_1,
                                          "r_contracting": self.r_contracting}}


def neat_subset(trace: ExpansionTrace, alpha: Any, prec: int = 128) -> NeatReport:
    """``N = {n : |q_{n-1}| <= |q_n|, |z_{n+1}| > alpha}`` and the relative-error bounds on it."""
    if trace.backend == "external":
        raise HypothesisFailed("neat subsets need the iterates z_n")
    alpha = Fraction(alpha)
    if alpha <= 1:
        raise HypothesisFailed("alpha must exceed 1")
    N = []
    sup_hi = Fraction(0)
    bound_ok = step_ok = neat_ok = True
    min_z = None
    for s in trace.steps:
        z_next = trace.z_at(s.n + 1)
        if z_next is None:
            break
        _, q1 = trace.prev_pq(s.n)
        zlo, zhi = abs_bounds(z_next, prec)
        min_z = zlo if min_z is None else min(min_z, zlo)
        if q1.norm() > s.q_norm:
            continue
        if isinstance(z_next, BallComplex):
            if zlo <= alpha:
                continue
        elif hermitian_sign(z_next, 1, 0, -alpha * alpha) <= 0:
            continue
        N.append(s.n)
        dlo, dhi = abs_bounds(s.delta, prec)
        sup_hi = max(sup_hi, dhi)
        # |delta_n| (|z_{n+1}| - 1) <= 1
        if dlo * (zlo - 1) > 1:
            bound_ok = False
        if s.n > 0:
            plo, _ = abs_bounds(trace.steps[s.n - 1].delta, prec)
            if plo > dhi + 1:
                step_ok = False
        if dlo > 1 / (alpha - 1):
            neat_ok = False
    norms = trace.q_norms
    mono = all(b > a for a, b in zip(norms, norms[1:]))
    rs = [abs_bounds(s.r, prec)[0] for s in trace.steps if s.r is not None]
    contracting = bool(rs) and min(rs) > 1
    return NeatReport(alpha, N, float(sup_hi), bound_ok, step_ok, neat_ok, mono,
                      min_z is not None and min_z > 1, contracting)


# -- monotonicity ------------------------------------------------------------------------------


@dataclass
class TripleDiagnostics:
    """Hypotheses and conclusions of the triple lemma on ``(r_{m-1}, r_m, r_{m+1})``."""

    gamma: tuple[str, str, str]
    alpha1: RingElement
    alpha2: RingElement
    hypotheses: dict[str, bool]
    conclusions: dict[str, bool]

    def to_json(self) -> dict:
        return {"gamma": list(self.gamma), "alpha1": str(self.alpha1), "alpha2": str(self.alpha2),
                "hypotheses": self.hypotheses, "conclusions": self.conclusions}


@dataclass
class MonotoneVerdict:
    verdict: str  # strict | nonstrict-violation | strict-violation
    m: int | None = None
    r_m: KElement | None = None
    a_m: RingElement | None = None
    a_m1: RingElement | None = None
    branch: dict[str, bool] | None = None
    triple: TripleDiagnostics | None = None
    note: str = ""

    @property
    def strict(self) -> bool:
        return self.verdict == "strict"

    def to_json(self) -> dict:
        out: dict[str, Any] = {"verdict": self.verdict}
        if self.m is not None:
            out.update({"m": self.m, "r_m": str(self.r_m), "a_m": str(self.a_m), "a_m+1": str(self.a_m1)})
        if self.branch is not None:
            out["branch_ii"] = self.branch
        if self.triple is not None:
            out["triple"] = self.triple.to_json()
        if self.note:
            out["note"] = self.note
        return out


def _in_disc(x: KElement, c: KElement, radius: Fraction, closed: bool) -> bool:
    d = (x - c).norm()
    rr = radius * radius
    return d <= rr if closed else d < rr


def check_monotone(trace_or_seq: ExpansionTrace | Sequence[Any]) -> MonotoneVerdict:
    """Strict growth of ``|q_n|`` with the corollary's branch (ii) and the triple lemma evaluated on a violation."""
    trace = trace_or_seq if isinstance(trace_or_seq, ExpansionTrace) else run_external(trace_or_seq)
    norms = trace.q_norms
    steps = trace.steps
    for n in range(len(norms) - 1):
        if norms[n + 1] > norms[n]:
            continue
        m = n
        kind = "nonstrict-violation" if norms[n + 1] == norms[n] else "strict-violation"
        v = MonotoneVerdict(kind, m, steps[m].r, steps[m].a, steps[m + 1].a)
        if m == 0:
            v.note = "violation at the first step; the corollary needs |a_1| > 1"
            return v
        if not all(s.a.norm() > 1 for s in steps[1:m + 2]):
            v.note = "some |a_n| <= 1 for n >= 1; diagnostics withheld"
            return v
        a1 = KElement.from_ring(steps[m + 1].a)
        N = a1.norm()
        center = -a1.conj() / (N - 1)
        r_m = steps[m].r if m > 0 else None
        v.r_m = r_m
        v.branch = {
            "r_n > 1 for n <= m": all(s.r is not None and s.r.norm() > 1 for s in steps[1:m + 1]),
            "|r_m+1| <= 1": steps[m + 1].r is not None and steps[m + 1].r.norm() <= 1,
            "|a_m+1| < 2": N < 4,
            "r_m in closed disc": r_m is not None and _in_disc(r_m, center, 1 / (N - 1), True),
            "a_m in open disc": _in_disc(KElement.from_ring(steps[m].a), center, N / (N - 1), False),
        }
        v.triple = _triple(trace, m)
        return v
    return MonotoneVerdict("strict")


def _triple(trace: ExpansionTrace, m: int) -> TripleDiagnostics:
    steps = trace.steps
    g1, g2 = steps[m].r, steps[m + 1].r
    g0 = steps[m - 1].r if m >= 2 else None  # r_0 = q_0/q_{-1} is infinite
    inv0 = KElement(trace.ring, 0, 0, 1) if g0 is None else g0.inverse()
    al1 = g1 - inv0
    al2 = g2 - g1.inverse()
    hyp = {
        "|gamma_0| > 1": g0 is None or g0.norm() > 1,
        "|gamma_1| > 1": g1.norm() > 1,
        "0 < |gamma_2| <= 1": 0 < g2.norm() <= 1,
        "alpha_j in ring": al1.is_integral() and al2.is_integral(),
        "|alpha_2| > 1": al2.norm() > 1,
    }
    N = al2.norm()
    con: dict[str, bool] = {"|alpha_2| < 2": N < 4}
    if N > 1:
        c = -al2.conj() / (N - 1)
        con["gamma_1 in closed disc"] = _in_disc(g1, c, 1 / (N - 1), True)
        con["alpha_1 in open disc"] = _in_disc(al1, c, N / (N - 1), False)
    return TripleDiagnostics(("inf" if g0 is None else str(g0), str(g1), str(g2)),
                             al1.to_ring() if al1.is_integral() else al1,  # type: ignore[arg-type]
                             al2.to_ring() if al2.is_integral() else al2,  # type: ignore[arg-type]
                             hyp, con)


@dataclass
class HVerdict:
    ok: bool
    violation: tuple[int, int] | None = None
    reason: str = ""

    def to_json(self) -> dict:
        out: dict[str, Any] = {"ok": self.ok, "reason": self.reason}
        if self.violation:
            out["k"], out["l"] = self.violation
        return out


def check_condition_H(sequence: Sequence[RingElement] | ExpansionTrace) -> HVerdict:
    """Condition (H) on a Gaussian partial-quotient sequence."""
    seq = sequence.a if isinstance(sequence, ExpansionTrace) else list(sequence)
    if any(x.ring is not G for x in seq):
        raise WrongRing("Condition (H) is defined for Gaussian integers")
    for n, x in enumerate(seq[1:], start=1):
        if x.norm() <= 1:
            return HVerdict(False, None, f"|a_{n}| <= 1")
    for l in range(2, len(seq)):
        al = seq[l]
        if al.norm() != 2:
            continue
        for k in range(l - 1, 0, -1):
            s = apply_symmetry(SIGMA_Y ** (l - k), al)
            if seq[k] == s * 2:
                continue  # the chain goes on
            if (seq[k] - s).norm() >= 4:
                break
            return HVerdict(False, (k, l), f"a_{k} = {seq[k]} too close to {s}")
    return HVerdict(True)


# -- theta ------------------------------------------------------------------------------------


@dataclass(frozen=True)
class Theta:
    lo: Fraction
    hi: Fraction

    def __float__(self) -> float:
        return float((self.lo + self.hi) / 2)

    def to_json(self) -> dict:
        return {"approx": float(self), "lo": str(self.lo), "hi": str(self.hi)}


def compute_theta(trace: ExpansionTrace, n: int, prec: int = 128, max_prec: int = MAX_PREC) -> Theta:
    """``theta_n = max(|delta_n| / nu, 1/|z_{n+1}|)`` as a rigorous interval."""
    ring = trace.ring
    s = trace.steps[n]
    z_next = trace.z_at(n + 1)
    if z_next is None:
        raise HypothesisFailed("z_{n+1} is not available")
    while prec <= max_prec:
        nlo, nhi = _sqrt_bounds(ring.nu_squared, prec)
        dlo, dhi = abs_bounds(s.delta, prec)
        if dlo >= nhi:
            raise HypothesisFailed(f"|delta_{n}| >= nu")
        if dhi < nlo:
            zlo, zhi = abs_bounds(z_next, prec)
            return Theta(max(dlo / nhi, 1 / zhi), max(dhi / nlo, 1 / zlo))
        if isinstance(s.delta, BallComplex):
            break
        prec *= 2
    raise PrecisionExhausted("cannot compare |delta_n| with nu")


__all__ = [
    "BALL_BUDGET",
    "EXACT_BUDGET",
    "ExpansionStep",
    "ExpansionTrace",
    "HVerdict",
    "IdentityReport",
    "MonotoneVerdict",
    "NeatReport",
    "Theta",
    "abs_bounds",
    "check_condition_H",
    "check_monotone",
    "compute_theta",
    "neat_subset",
    "run",
    "run_external",
    "verify_identities",
]
