"""Seeded corpora of quadratic surds for the verification suites."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass

from .arithmetic.surd import QuadraticSurd, surd_from_poly
from .errors import ComplexCFError, ReduciblePolynomial
from .rings import RingDescriptor, RingElement, elements_in_disc

MAX_COEFF_NORM = 20

# fixed inputs with hand-checked expansions
FIXTURES = {
    "G": [(1, 0, 2), (1, -1, 1), (1, 0, -3), (2, 1, 1)],
    "E": [(1, 0, 2), (1, 0, 1), (1, 1, 2)],
}


@dataclass(frozen=True)
class CorpusItem:
    index: int
    poly: tuple[RingElement, RingElement, RingElement]
    branch: str
    surd: QuadraticSurd

    def to_json(self) -> dict:
        return {"index": self.index, "poly": [str(c) for c in self.poly], "branch": self.branch}


def surd_corpus(ring: RingDescriptor, count: int, seed: int = 0, max_norm: int = MAX_COEFF_NORM) -> list[CorpusItem]:
    """``count`` distinct roots of irreducible ``a z^2 + b z + c`` with ``|a|^2, |b|^2, |c|^2 <= max_norm``.

    Coefficients are drawn uniformly from the ring elements of bounded norm and
    reducible polynomials are rejected; the draw order depends only on ``seed``.
    """
    pool = elements_in_disc(ring, 0, max_norm)
    nonzero = [x for x in pool if not x.is_zero()]
    rng = random.Random(seed)
    out: list[CorpusItem] = []
    seen: set[tuple] = set()
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > 1000 * (count + 10):
            raise ComplexCFError("corpus generation is not making progress")
        a, b, c = rng.choice(nonzero), rng.choice(pool), rng.choice(pool)
        branch = rng.choice(("plus", "minus"))
        try:
            z = surd_from_poly(a, b, c, branch=branch, ring=ring)
        except ReduciblePolynomial:
            continue
        if z.key() in seen:
            continue
        seen.add(z.key())
        out.append(CorpusItem(len(out), (a, b, c), branch, z))
    return out


def fixtures(ring: RingDescriptor) -> list[QuadraticSurd]:
    return [surd_from_poly(a, b, c, ring=ring) for a, b, c in FIXTURES.get(ring.code, [])]


_SPEC = re.compile(r"^surds:(\d+)(?::seed=(-?\d+))?$")


def parse_corpus_spec(text: str) -> tuple[int, int]:
    """``'surds:100:seed=7'`` -> ``(100, 7)``; the seed defaults to 0."""
    m = _SPEC.match(text.strip())
    if m is None:
        raise ComplexCFError(f"corpus spec {text!r} does not look like surds:N[:seed=S]")
    return int(m.group(1)), int(m.group(2) or 0)
