"""Pure-Python reference versions of the integer lattice kernels.

A ring is given by the trace ``t`` and norm ``m`` of its second generator
``g`` (so ``g**2 = t*g - m``); the norm form is ``a^2 + t*a*b + m*b^2``.
Every function here has a twin in ``_ckernels.pyx`` with the same
signature and results.
"""

from __future__ import annotations

from math import floor, inf, isqrt, sqrt


def norm_search(n: int, t: int, m: int) -> tuple[int, int] | None:
    """First ``(a, b)`` with ``b >= 0`` ascending and ``a^2 + tab + mb^2 == n``."""
    if n < 0:
        return None
    if n == 0:
        return (0, 0)
    disc = 4 * m - t * t
    b = 0
    while disc * b * b <= 4 * n:
        rest = 4 * n - disc * b * b
        s = isqrt(rest)
        if s * s == rest:
            for u in (s, -s):
                if (u - t * b) % 2 == 0:
                    return ((u - t * b) // 2, b)
        b += 1
    return None


def representable_norms(limit: int, t: int, m: int) -> bytearray:
    """``flags[k] == 1`` iff ``k <= limit`` is the norm of a ring element."""
    flags = bytearray(limit + 1)
    disc = 4 * m - t * t
    b = 0
    while disc * b * b <= 4 * limit:
        room = 4 * limit - disc * b * b
        umax = isqrt(room)
        parity = (t * b) & 1
        u = parity
        while u <= umax:
            flags[(u * u + disc * b * b) // 4] = 1
            u += 2
        b += 1
    return flags


def disc_points(
    t: int, m: int, cu: int, cv: int, den: int, r2_num: int, r2_den: int, strict: bool
) -> list[tuple[int, int]]:
    """Lattice points ``a + b g`` with ``N(a + b g - (cu + cv g)/den)`` ``<=`` (or ``<``) ``r2``.

    The comparison is done exactly as
    ``N(den*a - cu, den*b - cv) * r2_den  <=  r2_num * den^2``.
    """
    disc = 4 * m - t * t
    bound = r2_num * den * den  # compare N(A, B) * r2_den against this
    out: list[tuple[int, int]] = []
    # 4 N = (2A + tB)^2 + disc B^2  with  N <= bound / r2_den
    bmax_scaled = isqrt((4 * bound) // (disc * r2_den)) + 1
    b_lo = (cv - bmax_scaled) // den - 1
    b_hi = (cv + bmax_scaled) // den + 1
    for b in range(b_lo, b_hi + 1):
        big_b = den * b - cv
        room = 4 * bound - disc * big_b * big_b * r2_den
        if room < 0:
            continue
        w = isqrt(room // r2_den) + 1
        # 2A + tB in [-w, w]  =>  A in [(-w - tB)/2, (w - tB)/2]
        a_lo = ((-w - t * big_b) // 2 + cu) // den - 1
        a_hi = ((w - t * big_b) // 2 + cu) // den + 1
        for a in range(a_lo, a_hi + 1):
            big_a = den * a - cu
            val = (big_a * big_a + t * big_a * big_b + m * big_b * big_b) * r2_den
            if val < bound or (not strict and val == bound):
                out.append((a, b))
    return out


def annulus_screen(
    t: int, m: int, lo_norm: int, hi_norm: int, zr: float, zi: float, scale: float, tol: float,
    need: float,
) -> tuple[int, float, list[tuple[int, int]]]:
    """Float screen of ``dist(q z, lattice) * scale`` over ``lo_norm < N(q) <= hi_norm``.

    Returns the number of lattice points, the smallest screened value and the
    points whose value is within ``tol`` of that minimum or of ``need``.
    """
    disc = 4 * m - t * t
    h = sqrt(disc) / 2
    gr = t / 2
    count = 0
    fmin = inf
    near: list[tuple[float, int, int]] = []
    low: list[tuple[int, int]] = []
    bmax = isqrt(4 * hi_norm // disc) + 1
    for b in range(-bmax, bmax + 1):
        room = 4 * hi_norm - disc * b * b
        if room < 0:
            continue
        w = isqrt(room)
        for a in range((-w - t * b) // 2 - 1, (w - t * b) // 2 + 2):
            n = a * a + t * a * b + m * b * b
            if n <= lo_norm or n > hi_norm:
                continue
            count += 1
            qr = a + b * gr
            qi = b * h
            wr = qr * zr - qi * zi
            wi = qr * zi + qi * zr
            v = wi / h
            u = wr - v * gr
            u0 = floor(u + 0.5)
            v0 = floor(v + 0.5)
            best = inf
            for dv in (-1, 0, 1):
                for du in (-1, 0, 1):
                    lr = (u0 + du) + (v0 + dv) * gr
                    li = (v0 + dv) * h
                    dx = wr - lr
                    dy = wi - li
                    d = sqrt(dx * dx + dy * dy)
                    if d < best:
                        best = d
            r = best * scale
            if r < fmin:
                fmin = r
            if r <= fmin + tol:
                near.append((r, a, b))
            if r <= need + tol:
                low.append((a, b))
    seen = set(low)
    out = list(low)
    for r, a, b in near:
        if r <= fmin + tol and (a, b) not in seen:
            seen.add((a, b))
            out.append((a, b))
    return count, fmin, out
