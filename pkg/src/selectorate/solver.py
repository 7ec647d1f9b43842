"""Equilibrium allocations for the challenger, equal and asymmetric regimes.

Each program is reduced to one scalar root in ``s = sqrt(g)``:

* on the budget line (challenger / equal uncertainty) the root is the
  point where ``v_g / u_z + (N r phi_g - p) / W`` vanishes, with ``z``
  read off the binding budget;
* on the binding Select constraint (asymmetric / general retention) the
  root is where the leader's marginal discretionary revenue vanishes,
  with ``z`` read off the inverted constraint.

Both reduced residuals are the corresponding first-order conditions
divided by ``u_z(z)``, which keeps them finite where ``z`` hits zero.
:func:`oracle_grid_maximize` solves the same programs by exhaustive grid
search and shares none of this machinery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .model import (
    Allocation,
    Benchmark,
    FunctionFamily,
    ModelDomainError,
    PolityParams,
    SQRT_FAMILY,
    afoc_residual,
    check_retention,
    discretionary,
    efoc_residual,
    general_foc_residual,
    general_select_residual,
    retention_weight,
    revenue,
    select_residual,
    z_from_budget,
)

ROOT_TOL = 1e-12
FOC_TOL = 1e-10
CONSTRAINT_TOL = 1e-9
ORACLE_RTOL = 1e-3
MAX_ITER = 200

REGIMES = ("asymmetric", "equal", "general")


class SolverError(RuntimeError):
    pass


class InfeasibleParamsError(SolverError):
    pass


class NoInteriorSolutionError(SolverError):
    pass


class NoSignChangeError(SolverError):
    pass


class NonConvergenceError(SolverError):
    pass


class NoRealRootError(SolverError):
    pass


@dataclass(frozen=True)
class RootResult:
    root: float
    iterations: int
    bracket: tuple[float, float]
    converged: bool


def root_find_bracketed(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = ROOT_TOL,
    maxiter: int = MAX_ITER,
) -> RootResult:
    """Root of ``f`` on ``[lo, hi]`` by Brent's method.

    Requires a strict sign change across the bracket. Raises
    :class:`NonConvergenceError` if ``maxiter`` iterations do not shrink
    the bracket below ``tol``.
    """
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return RootResult(lo, 0, (lo, hi), True)
    if fhi == 0.0:
        return RootResult(hi, 0, (lo, hi), True)
    if not flo * fhi < 0.0:
        raise NoSignChangeError(f"f({lo})={flo} and f({hi})={fhi} share a sign")
    x, info = brentq(f, lo, hi, xtol=tol, maxiter=maxiter, full_output=True, disp=False)
    if not info.converged:
        raise NonConvergenceError(f"no convergence after {info.iterations} iterations on [{lo}, {hi}]")
    return RootResult(float(x), int(info.iterations), (lo, hi), True)


@dataclass(frozen=True)
class Residuals:
    foc_residual: float
    constraint_residual: float


@dataclass(frozen=True)
class Diagnostics:
    iterations: int
    bracket: tuple[float, float]  # in g units
    converged: bool


@dataclass(frozen=True)
class GeneralRegimeSpec:
    """Incumbent retention probability ``rho`` in ``[W/S, 1]``."""

    retention_probability: float

    def validate(self, params: PolityParams) -> float:
        return check_retention(params, self.retention_probability)


@dataclass(frozen=True)
class EquilibriumSolution:
    regime: str
    allocation: Allocation
    discretionary_resources: float
    benchmark: Benchmark
    residuals: Residuals
    diagnostics: Diagnostics
    rho: float | None = None

    @property
    def g(self) -> float:
        return self.allocation.g

    @property
    def z(self) -> float:
        return self.allocation.z

    @property
    def converged(self) -> bool:
        return self.diagnostics.converged

    @property
    def triple(self) -> tuple[float, float, float]:
        return (self.g, self.z, self.discretionary_resources)


def _budget_slack(params, fns, g):
    return revenue(params, fns, g) - params.public_price * g


def _marginal_public_cost(params, fns, g):
    return (params.tax_base * fns.phi_g(g) - params.public_price) / params.coalition


def _positive_lower_end(h, s_hi):
    # h -> +inf as s -> 0 for power utilities; walk down until it is positive
    s = s_hi
    for _ in range(MAX_ITER):
        s *= 0.5
        if h(s) > 0.0:
            return s
    raise NoInteriorSolutionError("reduced residual never turns positive near g = 0")


def budget_interval(params: PolityParams, fns: FunctionFamily) -> tuple[float, float]:
    """``(g0, g1)``: break-even public spending and budget exhaustion.

    ``g0`` maximizes the budget-implied ``z``; ``g1 > g0`` is where that
    ``z`` falls back to zero.
    """
    g0 = fns.public_break_even(params)
    if not _budget_slack(params, fns, g0) > 0.0:
        raise InfeasibleParamsError(
            "no public-goods level leaves positive private goods (revenue never exceeds cost)"
        )
    hi = max(2.0 * g0, 1.0)
    for _ in range(MAX_ITER):
        if _budget_slack(params, fns, hi) < 0.0:
            break
        hi *= 2.0
    else:
        raise InfeasibleParamsError("budget never exhausts")
    g1 = root_find_bracketed(lambda g: _budget_slack(params, fns, g), g0, hi).root
    return g0, g1


def _within_tolerance(foc, foc_scale, slack, slack_scale):
    return abs(foc) <= FOC_TOL * max(1.0, foc_scale) and abs(slack) <= CONSTRAINT_TOL * max(1.0, slack_scale)


def _solve_on_budget(params, fns):
    g0, g1 = budget_interval(params, fns)

    def h(s):
        g = s * s
        z = max(z_from_budget(params, fns, g), 0.0)
        return fns.v_g(g) * fns.inv_u_z(z) + _marginal_public_cost(params, fns, g)

    s_hi = math.sqrt(g1)
    s_lo = math.sqrt(g0) if g0 > 0.0 else _positive_lower_end(h, s_hi)
    res = root_find_bracketed(h, s_lo, s_hi)
    g = res.root**2
    z = float(z_from_budget(params, fns, g))
    if not (g > 0.0 and z > 0.0):
        raise NoInteriorSolutionError(f"budget-line root is on the boundary: g={g}, z={z}")
    return g, z, res


def solve_challenger(params: PolityParams, fns: FunctionFamily = SQRT_FAMILY) -> Benchmark:
    """Challenger's best immediate offer: max v(g) + u(z) on the binding budget."""
    g, z, _ = _solve_on_budget(params, fns)
    return Benchmark.at(fns, g, z)


def solve_equal(params: PolityParams, fns: FunctionFamily = SQRT_FAMILY) -> EquilibriumSolution:
    """Leader's allocation when the coalition is equally unsure of both sides.

    The leader must match the challenger's offer, so the allocation is the
    benchmark and nothing is left over.
    """
    g, z, res = _solve_on_budget(params, fns)
    alloc = Allocation(g, z)
    bench = Benchmark.at(fns, g, z)
    d = discretionary(params, fns, alloc)
    foc = efoc_residual(params, fns, alloc)
    ok = res.converged and _within_tolerance(
        foc, fns.v_g(g), d, revenue(params, fns, g)
    )
    return EquilibriumSolution(
        regime="equal",
        allocation=alloc,
        discretionary_resources=d,
        benchmark=bench,
        residuals=Residuals(foc, d),
        diagnostics=Diagnostics(res.iterations, (res.bracket[0] ** 2, res.bracket[1] ** 2), ok),
    )


def _z_on_select(params, fns, g, bench, c):
    target = (bench.offer_value - fns.v(g)) / c
    return fns.u_inv(max(target, 0.0))


def _solve_on_select(params, fns, bench, rho):
    c = retention_weight(params, rho)
    g0 = fns.public_break_even(params)
    g_top = fns.v_inv(bench.offer_value)
    if not g_top > g0:
        raise NoInteriorSolutionError("Select constraint leaves no room above break-even public goods")

    def h(s):
        g = s * s
        z = _z_on_select(params, fns, g, bench, c)
        return fns.v_g(g) * fns.inv_u_z(z) / c + _marginal_public_cost(params, fns, g)

    s_hi = math.sqrt(g_top)
    s_lo = math.sqrt(g0) if g0 > 0.0 else _positive_lower_end(h, s_hi)
    res = root_find_bracketed(h, s_lo, s_hi)
    g = res.root**2
    z = float(_z_on_select(params, fns, g, bench, c))
    if not (g > 0.0 and z > 0.0):
        raise NoInteriorSolutionError(f"Select-line root is on the boundary: g={g}, z={z}")
    return g, z, res


def _select_solution(params, fns, bench, rho, regime):
    rho = float(rho)
    g, z, res = _solve_on_select(params, fns, bench, rho)
    alloc = Allocation(g, z)
    if regime == "asymmetric":
        foc = afoc_residual(params, fns, alloc)
        slack = select_residual(params, fns, alloc, bench)
    else:
        foc = general_foc_residual(params, fns, alloc, rho)
        slack = general_select_residual(params, fns, alloc, bench, rho)
    d = discretionary(params, fns, alloc)
    ok = (
        res.converged
        and d >= -CONSTRAINT_TOL * max(1.0, revenue(params, fns, g))
        and _within_tolerance(foc, fns.v_g(g) / retention_weight(params, rho), slack, bench.offer_value)
    )
    return EquilibriumSolution(
        regime=regime,
        allocation=alloc,
        discretionary_resources=d,
        benchmark=bench,
        residuals=Residuals(foc, slack),
        diagnostics=Diagnostics(res.iterations, (res.bracket[0] ** 2, res.bracket[1] ** 2), ok),
        rho=rho,
    )


def solve_asymmetric(params: PolityParams, fns: FunctionFamily = SQRT_FAMILY) -> EquilibriumSolution:
    """Leader maximizes discretionary resources subject to a binding Select."""
    bench = solve_challenger(params, fns)
    return _select_solution(params, fns, bench, 1.0, "asymmetric")


def solve_general(
    params: PolityParams, fns: FunctionFamily, spec: GeneralRegimeSpec
) -> EquilibriumSolution:
    """Leader's allocation when the incumbent keeps members with probability rho.

    ``rho = 1`` is the asymmetric regime; ``rho = W/S`` removes the
    incumbent's advantage and reproduces the equal regime.
    """
    rho = spec.validate(params)
    bench = solve_challenger(params, fns)
    return _select_solution(params, fns, bench, rho, "general")


def solve(
    params: PolityParams,
    fns: FunctionFamily = SQRT_FAMILY,
    regime: str = "asymmetric",
    rho: float | None = None,
) -> EquilibriumSolution:
    if regime == "asymmetric":
        return solve_asymmetric(params, fns)
    if regime == "equal":
        return solve_equal(params, fns)
    if regime == "general":
        if rho is None:
            raise ModelDomainError("the general regime needs a retention probability rho")
        return solve_general(params, fns, GeneralRegimeSpec(rho))
    raise ValueError(f"unknown regime {regime!r}; expected one of {REGIMES}")


def equal_sqrt_quadratic(params: PolityParams) -> tuple[float, float]:
    """Coefficients ``(b, c)`` of ``s**2 + b s + c = 0`` for the all-sqrt equal optimum.

    With v = u = phi = sqrt, the budget-line FOC gives
    ``sqrt(z) = (p s - N r / 2) / W`` and squaring against the budget yields
    ``s**2 - (N r / p) s + ((N r)**2 / 4 - W R) / (p (p + W)) = 0``.
    """
    nr, p, W, R = params.tax_base, params.public_price, params.coalition, params.base_revenue
    return -nr / p, (nr * nr / 4.0 - W * R) / (p * (p + W))


def quadratic_roots(b: float, c: float) -> tuple[float, float]:
    """Real roots of ``s**2 + b s + c``, smaller first."""
    disc = b * b - 4.0 * c
    if disc < 0.0:
        raise NoRealRootError(f"discriminant {disc} < 0")
    half = math.sqrt(disc) / 2.0
    return -b / 2.0 - half, -b / 2.0 + half


def closed_form_equal_sqrt(params: PolityParams, fns: FunctionFamily = SQRT_FAMILY) -> Benchmark:
    """Analytic challenger benchmark, valid only for the all-sqrt family."""
    if not fns.is_sqrt:
        raise ModelDomainError("closed form needs v = u = phi = sqrt")
    _, s = quadratic_roots(*equal_sqrt_quadratic(params))
    # the FOC fixes sqrt(z) = (p s - N r / 2) / W, which must be positive
    root_z = (params.public_price * s - params.tax_base / 2.0) / params.coalition
    if not (s > 0.0 and root_z > 0.0):
        raise InfeasibleParamsError(f"no root gives positive private goods (larger root s={s})")
    g = s * s
    return Benchmark.at(fns, g, z_from_budget(params, fns, g))


# ---------------------------------------------------------------------------
# brute-force oracle


@dataclass(frozen=True)
class GridResult:
    g: float
    z: float
    value: float
    cell: tuple[float, float]


def _grid_pass(objective, feasible, g_lo, g_hi, z_lo, z_hi, n, chunk_rows):
    G = np.linspace(g_lo, g_hi, n)
    Z = np.linspace(z_lo, z_hi, n)
    dz = (z_hi - z_lo) / (n - 1)
    best, best_idx = -np.inf, None
    for i0 in range(0, n, chunk_rows):
        Gc = G[i0 : i0 + chunk_rows, None]
        vals = objective(Gc, Z[None, :])
        if feasible is not None:
            vals = np.where(feasible(Gc, Z[None, :], dz), vals, -np.inf)
        j = int(np.argmax(vals))  # first maximum in row-major order
        a, b = divmod(j, n)
        if vals[a, b] > best:  # strict: earlier rows win ties
            best, best_idx = float(vals[a, b]), (i0 + a, b)
    if best_idx is None:
        return None
    cell = ((g_hi - g_lo) / (n - 1), dz)
    return GridResult(float(G[best_idx[0]]), float(Z[best_idx[1]]), best, cell)


def grid_maximize(
    objective,
    g_range: tuple[float, float],
    z_range: tuple[float, float],
    resolution: int = 4000,
    feasible=None,
    refine: bool = True,
    window: int = 25,
    chunk_rows: int = 256,
) -> GridResult:
    """Exhaustive ``resolution x resolution`` grid search over a box.

    ``objective(G, Z)`` and ``feasible(G, Z, dz)`` are vectorized over
    broadcast arrays ``(G[:, None], Z[None, :])``; ``dz`` is the current
    z spacing. With ``refine`` the box is shrunk to
    ``window`` coarse cells around the winner and searched once more at
    the same resolution. Ties go to the lexicographically smallest
    ``(g, z)`` index.
    """
    if resolution < 100:
        raise ValueError(f"resolution must be at least 100, got {resolution}")
    (g_lo, g_hi), (z_lo, z_hi) = g_range, z_range
    coarse = _grid_pass(objective, feasible, g_lo, g_hi, z_lo, z_hi, resolution, chunk_rows)
    if coarse is None:
        raise InfeasibleParamsError("no feasible grid point")
    if not refine:
        return coarse
    dg, dz = coarse.cell
    fine = _grid_pass(
        objective,
        feasible,
        max(g_lo, coarse.g - window * dg),
        min(g_hi, coarse.g + window * dg),
        max(z_lo, coarse.z - window * dz),
        min(z_hi, coarse.z + window * dz),
        resolution,
        chunk_rows,
    )
    # the refined box holds the coarse winner's neighbourhood, so its best
    # point is kept even when a cell-relaxed coarse value looked higher
    return coarse if fine is None else fine


def _exhaustion_by_bisection(params, fns):
    def slack(g):
        return params.base_revenue + params.tax_base * fns.phi(g) - params.public_price * g

    hi = 1.0
    while slack(hi) > 0.0:
        hi *= 2.0
    lo = hi / 2.0 if hi > 1.0 else 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if slack(mid) >= 0.0:
            lo = mid
        else:
            hi = mid
    return hi


def oracle_grid_search(
    params: PolityParams,
    fns: FunctionFamily = SQRT_FAMILY,
    constraint: str = "budget",
    resolution: int = 4000,
    rho: float = 1.0,
    bench: Benchmark | None = None,
) -> GridResult:
    """Grid-search the challenger (``"budget"``) or Select-bound leader program.

    For ``"select"`` the benchmark defaults to the oracle's own budget
    solution so the check stays independent of the root-finding path.
    """
    g_hi = _exhaustion_by_bisection(params, fns)
    if not g_hi > 0.0:
        raise InfeasibleParamsError("revenue never covers any public goods")
    gs = np.linspace(0.0, g_hi, 4 * resolution)
    z_hi = float(np.max(params.base_revenue + params.tax_base * fns.phi(gs) - params.public_price * gs))
    z_hi /= params.coalition
    if not z_hi > 0.0:
        raise InfeasibleParamsError("no grid point leaves positive private goods")

    def leftover(G, Z):
        return params.base_revenue + params.tax_base * fns.phi(G) - params.public_price * G - params.coalition * Z

    if constraint == "budget":
        return grid_maximize(
            lambda G, Z: fns.v(G) + fns.u(Z),
            (0.0, g_hi),
            (0.0, z_hi),
            resolution,
            feasible=lambda G, Z, dz: leftover(G, Z) >= 0.0,
        )
    if constraint != "select":
        raise ValueError(f"unknown constraint {constraint!r}")
    check_retention(params, rho)
    c = 1.0 + params.future_weight * (rho - params.coalition_share)
    if bench is None:
        top = oracle_grid_search(params, fns, "budget", resolution)
        bench = Benchmark.at(fns, top.g, top.z)

    # When c is close to 1 the set between the indifference curve and the
    # budget line is thinner than a grid cell, so a point is kept when both
    # constraints hold somewhere within its z-cell.
    def keeps_coalition(G, Z, dz):
        return (fns.v(G) + c * fns.u(Z + dz) >= bench.offer_value) & (
            leftover(G, Z) >= -params.coalition * dz
        )

    return grid_maximize(leftover, (0.0, g_hi), (0.0, z_hi), resolution, feasible=keeps_coalition)


def oracle_grid_maximize(
    params: PolityParams,
    fns: FunctionFamily = SQRT_FAMILY,
    constraint: str = "budget",
    resolution: int = 4000,
    rho: float = 1.0,
    bench: Benchmark | None = None,
) -> Allocation:
    r = oracle_grid_search(params, fns, constraint, resolution, rho, bench)
    return Allocation(r.g, r.z)


def oracle_for_regime(
    params: PolityParams,
    fns: FunctionFamily = SQRT_FAMILY,
    regime: str = "asymmetric",
    rho: float | None = None,
    resolution: int = 4000,
) -> tuple[float, float, float]:
    """Oracle ``(g, z, discretionary)`` for a regime tag."""
    if regime == "equal":
        alloc = oracle_grid_maximize(params, fns, "budget", resolution)
    elif regime == "asymmetric":
        alloc = oracle_grid_maximize(params, fns, "select", resolution, 1.0)
    elif regime == "general":
        if rho is None:
            raise ModelDomainError("the general regime needs a retention probability rho")
        alloc = oracle_grid_maximize(params, fns, "select", resolution, rho)
    else:
        raise ValueError(f"unknown regime {regime!r}")
    return alloc.g, alloc.z, discretionary(params, fns, alloc)


def relative_deviation(a: float, b: float) -> float:
    return abs(a - b) / max(abs(a), abs(b), 1e-300)
