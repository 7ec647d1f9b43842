"""Parameter sweeps across regimes and the decay of the regime gap."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

import numpy as np

from .model import FunctionFamily, ModelDomainError, PolityParams, SQRT_FAMILY
from .solver import REGIMES, EquilibriumSolution, SolverError, solve

PARAM_FIELDS = tuple(f.name for f in dataclasses.fields(PolityParams))
SWEEPABLE = PARAM_FIELDS + ("rho",)

GAP_NAMES = ("public_gap", "private_gap", "discretionary_gap")


class SweepSpecError(ValueError):
    pass


class InsufficientRowsError(ValueError):
    pass


@dataclass(frozen=True)
class SweepSpec:
    varied_parameter: str
    from_value: float
    to_value: float
    steps: int
    base_params: PolityParams
    fns: FunctionFamily = SQRT_FAMILY
    regimes: tuple[str, ...] = ("asymmetric", "equal")
    rho: float | None = None  # for the general regime when rho is not swept

    def __post_init__(self):
        if self.varied_parameter not in SWEEPABLE:
            raise SweepSpecError(f"cannot sweep {self.varied_parameter!r}; choose from {SWEEPABLE}")
        if not self.from_value < self.to_value:
            raise SweepSpecError(f"need from < to, got {self.from_value} >= {self.to_value}")
        if int(self.steps) != self.steps or self.steps < 2:
            raise SweepSpecError(f"steps must be an integer >= 2, got {self.steps}")
        if not self.regimes:
            raise SweepSpecError("at least one regime is required")
        for regime in self.regimes:
            if regime not in REGIMES:
                raise SweepSpecError(f"unknown regime {regime!r}")
        if "general" in self.regimes and self.varied_parameter != "rho" and self.rho is None:
            raise SweepSpecError("the general regime needs rho unless rho is swept")
        # every swept point must be a valid polity
        for value in self.values():
            try:
                self.point(value)
            except ModelDomainError as exc:
                raise SweepSpecError(f"{self.varied_parameter}={value}: {exc}") from exc

    def values(self) -> np.ndarray:
        return np.linspace(self.from_value, self.to_value, int(self.steps))

    def point(self, value: float) -> tuple[PolityParams, float | None]:
        """Params and rho at one sweep value."""
        value = float(value)
        if self.varied_parameter == "rho":
            params, rho = self.base_params, value
            if not params.coalition_share <= rho <= 1.0:
                raise ModelDomainError(f"rho must lie in [W/S, 1], got {rho}")
            return params, rho
        params = dataclasses.replace(self.base_params, **{self.varied_parameter: value})
        if self.rho is not None and not params.coalition_share <= self.rho <= 1.0:
            raise ModelDomainError(f"rho={self.rho} outside [W/S, 1]")
        return params, self.rho


@dataclass(frozen=True)
class SweepFailure:
    regime: str
    error: str


@dataclass
class SweepRow:
    param_value: float
    solutions: dict[str, EquilibriumSolution | SweepFailure]

    def ok(self, regime: str) -> bool:
        sol = self.solutions.get(regime)
        return isinstance(sol, EquilibriumSolution) and sol.converged


@dataclass
class GapMetrics:
    public_gap: list = field(default_factory=list)
    private_gap: list = field(default_factory=list)
    discretionary_gap: list = field(default_factory=list)


@dataclass
class SweepResult:
    spec: SweepSpec
    rows: list[SweepRow]
    gap_metrics: GapMetrics

    @property
    def failures(self) -> int:
        return sum(
            1 for row in self.rows for regime in self.spec.regimes if not row.ok(regime)
        )

    def column(self, regime: str, attr: str) -> list:
        out = []
        for row in self.rows:
            sol = row.solutions[regime]
            out.append(getattr(sol, attr) if row.ok(regime) else None)
        return out


def solve_point(spec: SweepSpec, value: float, regime: str) -> EquilibriumSolution | SweepFailure:
    params, rho = spec.point(value)
    try:
        sol = solve(params, spec.fns, regime, rho)
    except (SolverError, ModelDomainError) as exc:
        return SweepFailure(regime, f"{type(exc).__name__}: {exc}")
    if not sol.converged:
        return SweepFailure(regime, "residuals above tolerance")
    return sol


def _gaps(rows, regimes) -> GapMetrics:
    gaps = GapMetrics()
    if not ("equal" in regimes and "asymmetric" in regimes):
        return gaps
    for row in rows:
        if row.ok("equal") and row.ok("asymmetric"):
            eq, asym = row.solutions["equal"], row.solutions["asymmetric"]
            gaps.public_gap.append(eq.g - asym.g)
            gaps.private_gap.append(eq.z - asym.z)
            gaps.discretionary_gap.append(eq.discretionary_resources - asym.discretionary_resources)
        else:
            for name in GAP_NAMES:
                getattr(gaps, name).append(None)
    return gaps


def sweep(spec: SweepSpec) -> SweepResult:
    """Solve every regime at ``steps`` evenly spaced values, endpoints included.

    A row that fails to solve is recorded as a :class:`SweepFailure` and
    the sweep carries on.
    """
    rows = []
    for value in spec.values():
        value = float(value)
        rows.append(SweepRow(value, {r: solve_point(spec, value, r) for r in spec.regimes}))
    return SweepResult(spec, rows, _gaps(rows, spec.regimes))


@dataclass(frozen=True)
class GapDecay:
    first: float
    last: float
    shrink_fraction: float
    monotone: bool


def _decay(values, tol) -> GapDecay:
    pairs = list(zip(values[:-1], values[1:]))
    # a pair shrinks when the gap magnitude drops; gaps already at zero count as decayed
    shrinking = sum(1 for a, b in pairs if abs(b) < abs(a) or (abs(a) <= tol and abs(b) <= tol))
    frac = shrinking / len(pairs)
    return GapDecay(values[0], values[-1], frac, frac == 1.0)


def detect_gap_decay(result: SweepResult, tol: float = 1e-9) -> dict[str, GapDecay]:
    """Per gap, whether the equal-minus-asymmetric difference shrinks row by row.

    Only rows where both regimes solved are used.
    """
    if not ("equal" in result.spec.regimes and "asymmetric" in result.spec.regimes):
        raise InsufficientRowsError("gap decay needs both the equal and asymmetric regimes")
    report = {}
    for name in GAP_NAMES:
        values = [v for v in getattr(result.gap_metrics, name) if v is not None]
        if len(values) < 3:
            raise InsufficientRowsError(f"{name}: need at least 3 solved rows, got {len(values)}")
        report[name] = _decay(values, tol)
    return report


def coalition_sweep(
    base: PolityParams,
    fns: FunctionFamily = SQRT_FAMILY,
    from_value: float = 300.0,
    to_value: float | None = None,
    steps: int = 30,
    regimes: tuple[str, ...] = ("asymmetric", "equal"),
) -> SweepResult:
    """Sweep coalition size W; the upper end defaults to 0.9 S."""
    if to_value is None:
        to_value = 0.9 * base.selectorate
    return sweep(SweepSpec("coalition", from_value, to_value, steps, base, fns, regimes))
