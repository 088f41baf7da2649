"""Integer lattice kernels with a compiled core and a pure-Python fallback.

The compiled extension is used when it imported and the arguments fit the
int64 range it was written for; otherwise the Python version runs. Set
``COMPLEXCF_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

_C_LIMIT = 1 << 24  # keeps every intermediate product far below 2**63

try:
    if os.environ.get("COMPLEXCF_PURE_PYTHON"):
        raise ImportError("pure-python backend forced")
    from . import _ckernels  # type: ignore[attr-defined]
except ImportError:
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"


def _fits(*values: int) -> bool:
    return all(-_C_LIMIT < v < _C_LIMIT for v in values)


def norm_search(n: int, t: int, m: int) -> tuple[int, int] | None:
    if _ckernels is not None and 0 <= n < (1 << 40) and _fits(t, m):
        return _ckernels.norm_search(n, t, m)
    return _pykernels.norm_search(n, t, m)


def representable_norms(limit: int, t: int, m: int) -> bytearray:
    if _ckernels is not None and limit < (1 << 31) and _fits(t, m):
        return _ckernels.representable_norms(limit, t, m)
    return _pykernels.representable_norms(limit, t, m)


def disc_points(
    t: int, m: int, cu: int, cv: int, den: int, r2_num: int, r2_den: int, strict: bool = False
) -> list[tuple[int, int]]:
    # products like r2_num * den^2 * 4 must stay inside int64
    if _ckernels is not None and _fits(cu, cv, den * den, r2_num, r2_den) and (
        abs(r2_num) * den * den * max(r2_den, 4) * 16 < (1 << 62)
    ):
        return _ckernels.disc_points(t, m, cu, cv, den, r2_num, r2_den, strict)
    return _pykernels.disc_points(t, m, cu, cv, den, r2_num, r2_den, strict)


def annulus_screen(
    t: int, m: int, lo_norm: int, hi_norm: int, zr: float, zi: float, scale: float, tol: float, need: float
) -> tuple[int, float, list[tuple[int, int]]]:
    if _ckernels is not None and _fits(t, m) and 0 <= lo_norm and hi_norm < (1 << 40):
        return _ckernels.annulus_screen(t, m, lo_norm, hi_norm, zr, zi, scale, tol, need)
    return _pykernels.annulus_screen(t, m, lo_norm, hi_norm, zr, zi, scale, tol, need)


__all__ = ["BACKEND", "annulus_screen", "norm_search", "representable_norms", "disc_points"]
