from __future__ import annotations

from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from complexcf.arithmetic.kfield import KElement
from complexcf.rings import RINGS, RingElement

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small = st.integers(-30, 30)
rings = st.sampled_from(RINGS)


@st.composite
def ring_elements(draw, ring=None, nonzero=False):
    r = ring or draw(rings)
    x = RingElement(r, draw(small), draw(small))
    if nonzero and x.is_zero():
        x = r.one()
    return x


@st.composite
def k_elements(draw, ring=None, nonzero=False):
    r = ring or draw(rings)
    den = draw(st.integers(1, 12))
    x = KElement.from_coords(r, Fraction(draw(small), den), Fraction(draw(small), den))
    if nonzero and x.is_zero():
        x = KElement.from_rational(r, 1)
    return x


ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
