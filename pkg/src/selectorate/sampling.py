"""Random feasible polities for property checks and experiments."""

from __future__ import annotations

import numpy as np

from .model import FunctionFamily, PolityParams


def random_polity(rng: np.random.Generator) -> tuple[PolityParams, FunctionFamily]:
    """A polity with W < S, drawn log-uniformly over several orders of magnitude.

    Exponents of the power-function family are drawn from [0.3, 0.7].
    """
    S = 10 ** rng.uniform(3, 5)
    N = S * 10 ** rng.uniform(0, 1)
    W = max(1.0, S * rng.uniform(0.005, 0.9))
    params = PolityParams(
        n_residents=N,
        selectorate=S,
        coalition=W,
        base_revenue=10 ** rng.uniform(0, 4),
        tax_rate=rng.uniform(0.1, 0.9),
        public_price=10 ** rng.uniform(1, 3),
        discount=rng.uniform(0.1, 0.9),
    )
    return params, FunctionFamily(*rng.uniform(0.3, 0.7, 3))


def random_polities(seed: int, count: int) -> list[tuple[PolityParams, FunctionFamily]]:
    rng = np.random.default_rng(seed)
    return [random_polity(rng) for _ in range(count)]
