"""Corpus-level verification suites shared by the CLI and the test-suite."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .algorithms import AlgorithmSpec, parse_algorithm
from .approximation import verify_app_pr
from .arithmetic.surd import QuadraticSurd
from .corpus import surd_corpus
from .errors import EnumerationLimit, HypothesisFailed
from .expansion import EXACT_BUDGET, check_condition_H, check_monotone, neat_subset, run, verify_identities
from .forms import SigmaForm, orbit_along, zero_correspondence
from .rings import G

SUITES = ("identities", "monotone", "conditionH", "neat", "appr", "forms", "geometry")
MAX_LISTED = 20


@dataclass
class SuiteReport:
    suite: str
    params: dict
    items: int = 0
    counts: dict[str, int] = field(default_factory=dict)
    violations: list[dict] = field(default_factory=list)
    worst: dict[str, Any] = field(default_factory=dict)
    detail: Any = None

    @property
    def passed(self) -> bool:
        return self.counts.get("violations", 0) == 0

    def add(self, res: dict) -> None:
        self.items += 1
        for k, v in res.get("counts", {}).items():
            self.counts[k] = self.counts.get(k, 0) + v
        vs = res.get("violations", [])
        self.counts["violations"] = self.counts.get("violations", 0) + len(vs)
        for v in vs:
            if len(self.violations) < MAX_LISTED:
                self.violations.append({"item": res.get("item"), **v})
        for k, v in res.get("worst", {}).items():
            cur = self.worst.get(k)
            if cur is None or v[0] < cur[0]:
                self.worst[k] = v

    def to_json(self) -> dict:
        worst = {k: {"value": float(v[0]), "exact": str(v[0]), "item": v[1]} for k, v in self.worst.items()}
        out = {"suite": self.suite, "params": self.params, "items": self.items, "passed": self.passed,
               "counts": dict(sorted(self.counts.items())), "violations": self.violations, "worst": worst}
        if self.detail is not None:
            out["detail"] = self.detail
        return out


# -- per-item checks -------------------------------------------------------------------------


def _identities(z: QuadraticSurd, alg: AlgorithmSpec, steps: int) -> dict:
    tr = run(z, alg, steps, stop_at_period=True)
    rep = verify_identities(tr)
    return {
        "counts": {"steps": len(tr.steps), "period_found": int(tr.termination == "period_found"),
                   "budget_exhausted": int(tr.termination == "budget_reached")},
        "violations": [{"n": n, "identity": k} for n, k in rep.violations]
                      + ([] if tr.termination == "period_found" else [{"check": "no period within budget"}]),
    }


def _monotone(z: QuadraticSurd, alg: AlgorithmSpec, steps: int) -> dict:
    tr = run(z, alg, steps, stop_at_period=True)
    v = check_monotone(tr)
    viol = [] if v.verdict == "strict" else [{"check": "monotone", "verdict": v.verdict, "m": v.m}]
    return {"counts": {"steps": len(tr.steps)}, "violations": viol}


def _condition_h(z: QuadraticSurd, alg: AlgorithmSpec, steps: int) -> dict:
    tr = run(z, alg, steps, stop_at_period=True)
    h = check_condition_H(tr.a)
    return {"counts": {"sequences": 1}, "violations": [] if h.ok else [{"check": "conditionH", "reason": h.reason}]}


def _neat(z: QuadraticSurd, alg: AlgorithmSpec, steps: int) -> dict:
    tr = run(z, alg, steps, stop_at_period=True)
    rep = neat_subset(tr, 2)
    bad = [k for k in ("delta_bound_ok", "delta_step_ok", "neat_bound_ok") if not getattr(rep, k)]
    return {"counts": {"N_size": len(rep.N)}, "violations": [{"check": k} for k in bad]}


def _appr(z: QuadraticSurd, alg: AlgorithmSpec, steps: int, max_n: int = 6) -> dict:
    tr = run(z, alg, max_n + 2)
    counts = {"checked": 0, "skipped_hypothesis": 0, "skipped_limit": 0, "lattice_points": 0}
    out: dict = {"counts": counts, "violations": [], "worst": {}}
    for n in range(min(max_n, len(tr.steps) - 1) + 1):
        try:
            v = verify_app_pr(tr, n)
        except HypothesisFailed:
            counts["skipped_hypothesis"] += 1
            continue
        except EnumerationLimit:
            counts["skipped_limit"] += 1
            continue
        counts["checked"] += 1
        counts["lattice_points"] += v.checked
        if not v.passed:
            out["violations"].append({"n": n, "failures": v.failures[:3], "margin_lo": str(v.margin_lo)})
        cur = out["worst"].get("margin")
        if cur is None or v.margin_lo < cur[0]:
            out["worst"]["margin"] = (v.margin_lo, None)
    return out


def _forms(z: QuadraticSurd, alg: AlgorithmSpec, steps: int) -> dict:
    tr = run(z, alg, steps, stop_at_period=True)
    if tr.period is not None:
        # repetition of forms is only forced once the doubled period has elapsed
        n0, k = tr.period
        tr = run(z, alg, min(steps, max(n0 - 1, 0) + 2 * k + 2))
    X = SigmaForm.from_surd(z)
    rep = orbit_along(tr, X)
    viol = [dict(v) for v in rep.violations]
    if not rep.stabilized:
        viol.append({"check": "orbit did not stabilize", "last_new": rep.stabilized_at})
    zc = 0
    for n in range(len(tr.steps) - 1):
        zc += 1
        if not zero_correspondence(tr, X, n).agree:
            viol.append({"n": n, "check": "zero correspondence"})
    return {"counts": {"orbit_size": rep.cardinality, "zero_checks": zc, **rep.checked}, "violations": viol}


CHECKS: dict[str, Callable[..., dict]] = {
    "identities": _identities,
    "monotone": _monotone,
    "conditionH": _condition_h,
    "neat": _neat,
    "appr": _appr,
    "forms": _forms,
}


def _task(args: tuple) -> dict:
    suite, alg_name, z, steps, index = args
    res = CHECKS[suite](z, parse_algorithm(alg_name), steps)
    res["item"] = index
    if "worst" in res:
        res["worst"] = {k: (v[0], index) for k, v in res["worst"].items()}
    return res


def run_suite(suite: str, alg: AlgorithmSpec, count: int = 100, seed: int = 0, steps: int = EXACT_BUDGET,
              workers: int = 1) -> SuiteReport:
    """Run one per-item suite over a seeded corpus; results are assembled in corpus order."""
    if suite not in CHECKS:
        raise ValueError(f"unknown corpus suite {suite!r}")
    corpus = surd_corpus(alg.ring, count, seed)
    report = SuiteReport(suite, {"alg": alg.name, "ring": alg.ring.code, "count": count, "seed": seed,
                                 "steps": steps})
    tasks = [(suite, alg.name, it.surd, steps, it.index) for it in corpus]
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            results = list(ex.map(_task, tasks))
    else:
        results = [_task(t) for t in tasks]
    for r in results:
        report.add(r)
    return report


# -- geometry ----------------------------------------------------------------------------------------

GEOMETRY_CHECKS = ("h-perturb", "hurwitz", "disc-family", "invert-disc", "h-inverse", "contract")


def run_geometry(check: str, r: Any = None, mesh: int = 80, samples: int = 10_000, seed: int = 0) -> SuiteReport:
    from . import regions
    from .algorithms import hurwitz, perturbed_hurwitz, validate_contract

    params = {"check": check, "r": None if r is None else str(r), "mesh": mesh}
    report = SuiteReport("geometry", params)
    if check in ("h-perturb", "hurwitz"):
        if check == "hurwitz":
            geo = regions.verify_geom_hurwitz(hurwitz(), regions.Q_h(), mesh=mesh)
        else:
            rr = Fraction(3, 20) if r is None else Fraction(r)
            # outside the algorithm's admissible range the geometry is still examined
            alg = AlgorithmSpec(G, "perturbed_hurwitz", rr)
            geo = regions.verify_geom_hurwitz(alg, regions.Q_r(rr), mesh=mesh)
        _from_geometry(report, geo)
    elif check == "disc-family":
        from .rings import E

        rr = Fraction(59, 100) if r is None else Fraction(r)
        _from_geometry(report, regions.verify_disc_family(regions.uniform_disc_family(E, rr * rr), mesh=mesh))
    elif check == "invert-disc":
        _invert_disc_suite(report, samples, seed)
    elif check == "h-inverse":
        pts = [w for w in regions.random_points(G, (-3.0, 3.0, -3.0, 3.0), samples, random.Random(seed))
               if not w.is_zero()]
        h_inv, ref = regions.diamond_H().invert(), regions.H_inverse_identity()
        bad = [w for w in pts if h_inv.contains(w) != ref.contains(w)]
        report.items = len(pts)
        report.counts = {"points": len(pts), "violations": len(bad)}
        report.violations = [{"witness": str(w)} for w in bad[:MAX_LISTED]]
    elif check == "contract":
        for name in ("hurwitz", "eisenstein", "even", "lambda", "perturbed:r=3/20", "chi:x=5/4"):
            _from_geometry(report, validate_contract(parse_algorithm(name), mesh=min(mesh, 40)))
    else:
        raise ValueError(f"unknown geometry check {check!r}; expected one of {GEOMETRY_CHECKS}")
    return report


def _from_geometry(report: SuiteReport, geo: Any) -> None:
    report.items += len(geo.checks)
    fails = geo.failures()
    report.counts["checks"] = report.counts.get("checks", 0) + len(geo.checks)
    report.counts["violations"] = report.counts.get("violations", 0) + len(fails)
    report.violations.extend(c.to_json() for c in fails[:MAX_LISTED])
    report.detail = (report.detail or []) + [geo.to_json()]


def _invert_disc_suite(report: SuiteReport, samples: int, seed: int) -> None:
    """Random discs avoiding 0: the inverted disc agrees with pointwise inversion."""
    from .arithmetic.kfield import KElement
    from .regions import Disc, invert_disc, random_points

    rng = random.Random(seed)
    discs = 0
    mismatches = 0
    while discs < samples:
        c = KElement.from_coords(G, Fraction(rng.randint(-40, 40), 8), Fraction(rng.randint(-40, 40), 8))
        r2 = Fraction(rng.randint(1, 64), 64)
        if c.norm() <= r2:
            continue
        d = Disc(c, r2, rng.random() < 0.5)
        inv = invert_disc(d).region()
        src = d.region()
        discs += 1
        x0, x1, y0, y1 = inv.bbox()
        near = (x0 - 0.1, x1 + 0.1, y0 - 0.1, y1 + 0.1)
        pts = list(random_points(G, near, 5, rng)) + list(random_points(G, (-4.0, 4.0, -4.0, 4.0), 5, rng))
        for w in pts:
            if w.is_zero():
                continue
            if inv.contains(w) != src.contains(w.inverse()):
                mismatches += 1
                if len(report.violations) < MAX_LISTED:
                    report.violations.append({"disc": str(c), "r2": str(r2), "point": str(w)})
    report.items = discs
    report.counts = {"discs": discs, "points": discs * 10, "violations": mismatches}
