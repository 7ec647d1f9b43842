"""Leader allocation under coalition uncertainty in the selectorate survival model."""

from .model import (
    BASELINE_PARAMS,
    SQRT_FAMILY,
    Allocation,
    Benchmark,
    FunctionFamily,
    ModelDomainError,
    PolityParams,
)
from .solver import (
    EquilibriumSolution,
    GeneralRegimeSpec,
    closed_form_equal_sqrt,
    oracle_grid_maximize,
    solve,
    solve_asymmetric,
    solve_challenger,
    solve_equal,
    solve_general,
)
from .statics import SweepSpec, detect_gap_decay, sweep

__all__ = [
    "BASELINE_PARAMS",
    "SQRT_FAMILY",
    "Allocation",
    "Benchmark",
    "EquilibriumSolution",
    "FunctionFamily",
    "GeneralRegimeSpec",
    "ModelDomainError",
    "PolityParams",
    "SweepSpec",
    "closed_form_equal_sqrt",
    "detect_gap_decay",
    "oracle_grid_maximize",
    "solve",
    "solve_asymmetric",
    "solve_challenger",
    "solve_equal",
    "solve_general",
    "sweep",
]
