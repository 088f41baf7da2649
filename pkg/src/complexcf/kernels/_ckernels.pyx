# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of ``_pykernels``; callers guarantee the int64 ranges."""

from libc.math cimport INFINITY, floor, sqrt


cdef inline long long _isqrt(long long x) nogil:
    cdef long long s
    if x <= 0:
        return 0
    s = <long long> sqrt(<double> x)
    while s * s > x:
        s -= 1
    while (s + 1) * (s + 1) <= x:
        s += 1
    return s


cdef inline long long _floordiv(long long a, long long b) nogil:
    cdef long long q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


def norm_search(long long n, long long t, long long m):
    cdef long long disc = 4 * m - t * t
    cdef long long b = 0, rest, s, u
    cdef int k
    if n < 0:
        return None
    if n == 0:
        return (0, 0)
    while disc * b * b <= 4 * n:
        rest = 4 * n - disc * b * b
        s = _isqrt(rest)
        if s * s == rest:
            for k in range(2):
                u = s if k == 0 else -s
                if ((u - t * b) & 1) == 0:
                    return ((u - t * b) // 2, b)
        b += 1
    return None


def representable_norms(long long limit, long long t, long long m):
    cdef bytearray flags = bytearray(limit + 1)
    cdef unsigned char[:] view = flags
    cdef long long disc = 4 * m - t * t
    cdef long long b = 0, room, umax, u
    with nogil:
        while disc * b * b <= 4 * limit:
            room = 4 * limit - disc * b * b
            umax = _isqrt(room)
            u = (t * b) & 1
            while u <= umax:
                view[(u * u + disc * b * b) // 4] = 1
                u += 2
            b += 1
    return flags


def disc_points(long long t, long long m, long long cu, long long cv, long long den,
                long long r2_num, long long r2_den, bint strict):
    cdef long long disc = 4 * m - t * t
    cdef long long bound = r2_num * den * den
    cdef long long bmax_scaled = _isqrt((4 * bound) // (disc * r2_den)) + 1
    cdef long long b_lo = _floordiv(cv - bmax_scaled, den) - 1
    cdef long long b_hi = _floordiv(cv + bmax_scaled, den) + 1
    cdef long long b, a, big_a, big_b, room, w, a_lo, a_hi, val
    out = []
    for b in range(b_lo, b_hi + 1):
        big_b = den * b - cv
        room = 4 * bound - disc * big_b * big_b * r2_den
        if room < 0:
            continue
        w = _isqrt(room // r2_den) + 1
        a_lo = _floordiv(_floordiv(-w - t * big_b, 2) + cu, den) - 1
        a_hi = _floordiv(_floordiv(w - t * big_b, 2) + cu, den) + 1
        for a in range(a_lo, a_hi + 1):
            big_a = den * a - cu
            val = (big_a * big_a + t * big_a * big_b + m * big_b * big_b) * r2_den
            if val < bound or (not strict and val == bound):
                out.append((a, b))
    return out


def annulus_screen(long long t, long long m, long long lo_norm, long long hi_norm, double zr, double zi,
                   double scale, double tol, double need):
    cdef long long disc = 4 * m - t * t
    cdef double h = sqrt(<double> disc) / 2
    cdef double gr = <double> t / 2
    cdef long long count = 0, b, a, n, room, w, bmax
    cdef double fmin = INFINITY, qr, qi, wr, wi, u, v, u0, v0, best, lr, li, dx, dy, d, r
    cdef int du, dv
    near = []
    low = []
    bmax = _isqrt(4 * hi_norm // disc) + 1
    for b in range(-bmax, bmax + 1):
        room = 4 * hi_norm - disc * b * b
        if room < 0:
            continue
        w = _isqrt(room)
        for a in range(_floordiv(-w - t * b, 2) - 1, _floordiv(w - t * b, 2) + 2):
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
            best = INFINITY
            for dv in range(-1, 2):
                for du in range(-1, 2):
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
