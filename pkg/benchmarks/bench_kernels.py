"""Compiled vs pure-Python lattice kernels.

Run with ``python3 benchmarks/bench_kernels.py``. Each row reports the best of
several repeats for both backends on identical arguments and checks that the
results agree before timing is trusted.
"""

from __future__ import annotations

import argparse
import time
from typing import Any, Callable

from complexcf import kernels
from complexcf.kernels import _pykernels

try:
    from complexcf.kernels import _ckernels
except ImportError:  # pragma: no cover - depends on the build
    _ckernels = None


def best_of(fn: Callable[[], Any], repeat: int) -> tuple[float, Any]:
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


CASES = [
    # name, kernel, args
    ("norm_search G n=10^6+1", "norm_search", (1_000_001, 0, 1)),
    ("norm_search E 1847*7", "norm_search", (1847 * 7, -1, 1)),
    ("norm_search G n=4*10^9 (miss)", "norm_search", (4_000_000_003, 0, 1)),
    ("representable_norms G 10^5", "representable_norms", (100_000, 0, 1)),
    ("representable_norms E 10^5", "representable_norms", (100_000, -1, 1)),
    ("disc_points G r^2=2*10^4", "disc_points", (0, 1, 3, 7, 8, 20_000, 1, False)),
    ("disc_points E r^2=5*10^3", "disc_points", (-1, 1, 1, 2, 3, 5_000, 1, True)),
    ("annulus_screen G 10^4 < N <= 10^5", "annulus_screen", (0, 1, 10_000, 100_000, 0.3137, 1.4142, 2.0, 1e-6, 0.5)),
]


def end_to_end(repeat: int) -> list[tuple[str, float, float]]:
    """Wall time of a library call that leans on the kernels, under each backend."""
    from complexcf.approximation import verify_app_pr
    from complexcf.arithmetic.surd import surd_from_poly
    from complexcf.algorithms import hurwitz
    from complexcf.expansion import run
    from complexcf.rings import G

    tr = run(surd_from_poly(1, 1, 3, ring=G), hurwitz(), 12)
    rows = []
    saved = kernels._ckernels
    try:
        kernels._ckernels = None
        py, _ = best_of(lambda: verify_app_pr(tr, 9), repeat)
        kernels._ckernels = saved
        c, _ = best_of(lambda: verify_app_pr(tr, 9), repeat)
    finally:
        kernels._ckernels = saved
    rows.append(("best-approx check n=9 (z^2+z+3)", c, py))
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels are not built; only the Python backend is available")
        return
    print(f"{'case':40s} {'cython s':>10s} {'python s':>10s} {'speedup':>8s}")
    for name, kernel, kargs in CASES:
        c, c_out = best_of(lambda: getattr(_ckernels, kernel)(*kargs), args.repeat)
        py, py_out = best_of(lambda: getattr(_pykernels, kernel)(*kargs), args.repeat)
        if kernel == "disc_points":
            same = sorted(c_out) == sorted(py_out)
        elif kernel == "annulus_screen":
            same = c_out[:2] == py_out[:2] and sorted(c_out[2]) == sorted(py_out[2])
        else:
            same = c_out == py_out
        if not same:
            raise SystemExit(f"backends disagree on {name}")
        print(f"{name:40s} {c:10.4f} {py:10.4f} {py / c:8.1f}x")
    for name, c, py in end_to_end(args.repeat):
        print(f"{name:40s} {c:10.4f} {py:10.4f} {py / c:8.1f}x")


if __name__ == "__main__":
    main()
