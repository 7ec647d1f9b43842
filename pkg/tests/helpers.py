"""Shared parameter generators for the test suite."""

from __future__ import annotations

import dataclasses

from hypothesis import strategies as st

from selectorate.model import BASELINE_PARAMS, FunctionFamily, PolityParams
from selectorate.sampling import random_polities, random_polity  # noqa: F401


@st.composite
def polities(draw, max_share: float = 0.9):
    """Hypothesis strategy over the same space as ``random_polity``."""
    S = 10 ** draw(st.floats(3, 5))
    N = S * 10 ** draw(st.floats(0, 1))
    W = max(1.0, S * draw(st.floats(0.005, max_share)))
    return PolityParams(
        n_residents=N,
        selectorate=S,
        coalition=W,
        base_revenue=10 ** draw(st.floats(0, 4)),
        tax_rate=draw(st.floats(0.1, 0.9)),
        public_price=10 ** draw(st.floats(1, 3)),
        discount=draw(st.floats(0.1, 0.9)),
    )


exponents = st.floats(0.3, 0.7)
families = st.builds(FunctionFamily, exponents, exponents, exponents)


def baseline(**changes) -> PolityParams:
    return dataclasses.replace(BASELINE_PARAMS, **changes)
