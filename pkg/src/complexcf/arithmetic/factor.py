"""Trial-division factorization in Z and in the five Euclidean rings."""

from __future__ import annotations

from .. import kernels
from ..errors import FactorizationBudget
from ..rings import RingDescriptor, RingElement, units

TRIAL_LIMIT = 10**7


def factor_int(n: int, limit: int = TRIAL_LIMIT) -> dict[int, int]:
    """Prime factorization of ``n >= 1`` by trial division up to ``limit``."""
    if n < 1:
        raise ValueError("factor_int expects a positive integer")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p, step = 5, 2
    while p * p <= n:
        if p > limit:
            raise FactorizationBudget(f"cofactor {n} has no factor below {limit}")
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += step
        step = 6 - step
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def exact_quotient(x: RingElement, y: RingElement) -> RingElement | None:
    """``x / y`` when it lies in the ring, else None."""
    n = y.norm()
    if n == 0:
        raise ZeroDivisionError("division by 0 in the ring")
    num = x * y.conj()
    if num.a % n or num.b % n:
        return None
    return RingElement(x.ring, num.a // n, num.b // n)


def primes_above(p: int, ring: RingDescriptor) -> list[RingElement]:
    """Pairwise non-associate ring primes dividing the rational prime ``p``."""
    hit = kernels.norm_search(p, ring.trace, ring.gnorm)
    if hit is None:
        return [ring(p, 0)]
    pi = ring(*hit)
    pib = pi.conj()
    if exact_quotient(pi, pib) is not None:
        return [pi]  # ramified: the conjugate is an associate
    return [pi, pib]


def valuation(x: RingElement, pi: RingElement) -> tuple[int, RingElement]:
    e = 0
    while True:
        q = exact_quotient(x, pi)
        if q is None:
            return e, x
        x = q
        e += 1


def squarefree_part(x: RingElement) -> tuple[RingElement, RingElement]:
    """Write nonzero ``x = s * k**2`` with ``s`` squarefree, normalized over unit squares.

    The representative ``s`` is the lexicographically greatest (Re, Im) among
    ``s * u**2`` for units ``u``, so two elements differing by a square
    factor in K get the same ``s``.
    """
    ring = x.ring
    if x.is_zero():
        raise ValueError("0 has no squarefree part")
    s = ring.one()
    k = ring.one()
    rest = x
    for p in sorted(factor_int(x.norm())):
        for pi in primes_above(p, ring):
            e, rest = valuation(rest, pi)
            if e % 2:
                s = s * pi
            k = k * pi ** (e // 2)
    # rest is a unit now
    s = s * rest
    best = max(units(ring), key=lambda u: (s * u * u).lex_key())
    # x = s k^2 = (s u^2) (k u^-1)^2 and u^-1 = conj(u)
    return s * best * best, k * best.conj()
