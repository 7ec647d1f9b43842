"""Model arithmetic for the selectorate survival game.

Everything here is a pure function of its arguments: revenue and budget
bookkeeping, the first-order-condition residuals of the challenger and
leader programs, and the coalition retention (Select) constraint.

Quantities follow the usual notation: ``g`` public goods, ``z`` private
goods per coalition member (total private spending is ``W * z``), ``N``,
``S``, ``W`` residents / selectorate / winning coalition, ``R`` non-tax
revenue, ``r`` tax rate, ``p`` unit price of public goods and ``delta``
the common discount factor.
"""

from __future__ import annotations

from dataclasses import dataclass


class ModelDomainError(ValueError):
    """Raised when an input lies outside the domain of a model function."""


@dataclass(frozen=True)
class PolityParams:
    n_residents: float
    selectorate: float
    coalition: float
    base_revenue: float
    tax_rate: float
    public_price: float
    discount: float

    def __post_init__(self):
        N, S, W = self.n_residents, self.selectorate, self.coalition
        if not (N >= S >= W >= 1):
            raise ModelDomainError(f"need N >= S >= W >= 1, got N={N}, S={S}, W={W}")
        if not 0.0 < self.discount < 1.0:
            raise ModelDomainError(f"discount must lie in (0, 1), got {self.discount}")
        if not 0.0 <= self.tax_rate <= 1.0:
            raise ModelDomainError(f"tax_rate must lie in [0, 1], got {self.tax_rate}")
        if not self.public_price > 0.0:
            raise ModelDomainError(f"public_price must be positive, got {self.public_price}")
        if not self.base_revenue >= 0.0:
            raise ModelDomainError(f"base_revenue must be nonnegative, got {self.base_revenue}")

    @property
    def tax_base(self) -> float:
        """N * r, the revenue multiplier on phi(g)."""
        return self.n_residents * self.tax_rate

    @property
    def coalition_share(self) -> float:
        """W / S, the chance of being kept by a challenger."""
        return self.coalition / self.selectorate

    @property
    def future_weight(self) -> float:
        """delta / (1 - delta), the weight of all future periods."""
        return self.discount / (1.0 - self.discount)


# N=S=10000, W=300, R=1000, p=200, r=0.5, delta=0.55
BASELINE_PARAMS = PolityParams(
    n_residents=10_000.0,
    selectorate=10_000.0,
    coalition=300.0,
    base_revenue=1000.0,
    tax_rate=0.5,
    public_price=200.0,
    discount=0.55,
)


def _power(x, a):
    return x**a


def _power_slope(x, a):
    return a * x ** (a - 1.0)


@dataclass(frozen=True)
class FunctionFamily:
    """Power-function utilities ``v``, ``u`` and tax production ``phi``.

    Each member is ``x -> x**alpha`` with ``alpha`` in (0, 1), so all
    three are increasing, strictly concave and vanish at zero.
    """

    v_exponent: float = 0.5
    u_exponent: float = 0.5
    phi_exponent: float = 0.5

    def __post_init__(self):
        for name in ("v_exponent", "u_exponent", "phi_exponent"):
            a = getattr(self, name)
            if not 0.0 < a < 1.0:
                raise ModelDomainError(f"{name} must lie in (0, 1), got {a}")

    @property
    def is_sqrt(self) -> bool:
        return self.v_exponent == self.u_exponent == self.phi_exponent == 0.5

    def v(self, g):
        return _power(g, self.v_exponent)

    def v_g(self, g):
        return _power_slope(g, self.v_exponent)

    def v_inv(self, y):
        return _power(y, 1.0 / self.v_exponent)

    def u(self, z):
        return _power(z, self.u_exponent)

    def u_z(self, z):
        return _power_slope(z, self.u_exponent)

    def u_inv(self, y):
        return _power(y, 1.0 / self.u_exponent)

    def inv_u_z(self, z):
        """1 / u_z(z), finite (zero) at z = 0."""
        a = self.u_exponent
        return z ** (1.0 - a) / a

    def phi(self, g):
        return _power(g, self.phi_exponent)

    def phi_g(self, g):
        return _power_slope(g, self.phi_exponent)

    def public_break_even(self, params: PolityParams) -> float:
        """The g at which marginal tax revenue N*r*phi_g(g) equals p.

        Below this point an extra unit of public goods pays for itself;
        any interior optimum lies strictly above it.
        """
        a = self.phi_exponent
        if params.tax_base == 0.0:
            return 0.0
        return (params.tax_base * a / params.public_price) ** (1.0 / (1.0 - a))


SQRT_FAMILY = FunctionFamily()


@dataclass(frozen=True)
class Allocation:
    public_goods: float
    private_goods: float

    def __post_init__(self):
        if not (self.public_goods >= 0.0 and self.private_goods >= 0.0):
            raise ModelDomainError(
                f"allocation must be nonnegative, got g={self.public_goods}, z={self.private_goods}"
            )

    @property
    def g(self) -> float:
        return self.public_goods

    @property
    def z(self) -> float:
        return self.private_goods


@dataclass(frozen=True)
class Benchmark:
    """The challenger's best immediate offer and its value to a supporter."""

    g_hat: float
    z_hat: float
    offer_value: float

    @classmethod
    def at(cls, fns: FunctionFamily, g_hat: float, z_hat: float) -> "Benchmark":
        if g_hat < 0.0 or z_hat < 0.0:
            raise ModelDomainError(f"benchmark must be nonnegative, got ({g_hat}, {z_hat})")
        return cls(g_hat, z_hat, fns.v(g_hat) + fns.u(z_hat))

    @property
    def allocation(self) -> Allocation:
        return Allocation(self.g_hat, self.z_hat)


def _check_g(g):
    if not g >= 0.0:
        raise ModelDomainError(f"public goods must be nonnegative, got {g}")


def _check_interior(alloc: Allocation):
    if alloc.g <= 0.0 or alloc.z <= 0.0:
        raise ModelDomainError(
            f"marginal utilities diverge on the boundary, got g={alloc.g}, z={alloc.z}"
        )


def revenue(params: PolityParams, fns: FunctionFamily, g: float) -> float:
    _check_g(g)
    return params.base_revenue + params.tax_base * fns.phi(g)


def discretionary(params: PolityParams, fns: FunctionFamily, alloc: Allocation) -> float:
    """Revenue left to the leader after paying for ``alloc``; negative if infeasible."""
    return (
        revenue(params, fns, alloc.g)
        - params.public_price * alloc.g
        - params.coalition * alloc.z
    )


def z_from_budget(params: PolityParams, fns: FunctionFamily, g: float) -> float:
    """Private goods per member that exhaust the budget at ``g``.

    A negative value is meaningful: public spending alone exceeds revenue.
    """
    return (revenue(params, fns, g) - params.public_price * g) / params.coalition


def _marginal_public_cost(params, fns, g):
    # (N r phi_g(g) - p) / W: change in budget-implied z per unit of g
    return (params.tax_base * fns.phi_g(g) - params.public_price) / params.coalition


def efoc_residual(params: PolityParams, fns: FunctionFamily, alloc: Allocation) -> float:
    """Equal-uncertainty (and challenger) first-order residual."""
    _check_interior(alloc)
    g, z = alloc.g, alloc.z
    return fns.v_g(g) + _marginal_public_cost(params, fns, g) * fns.u_z(z)


def asymmetric_weight(params: PolityParams) -> float:
    """(1 - delta) S / (S - delta W), the discount on v_g in the asymmetric FOC."""
    d, S, W = params.discount, params.selectorate, params.coalition
    return (1.0 - d) * S / (S - d * W)


def afoc_residual(params: PolityParams, fns: FunctionFamily, alloc: Allocation) -> float:
    """Asymmetric-uncertainty first-order residual."""
    _check_interior(alloc)
    g, z = alloc.g, alloc.z
    return asymmetric_weight(params) * fns.v_g(g) + _marginal_public_cost(params, fns, g) * fns.u_z(z)


def check_retention(params: PolityParams, rho: float) -> float:
    W_S = params.coalition_share
    if not W_S <= rho <= 1.0:
        raise ModelDomainError(f"retention probability must lie in [W/S={W_S}, 1], got {rho}")
    return rho


def retention_weight(params: PolityParams, rho: float = 1.0) -> float:
    """Multiplier on u(z) in the generalized Select constraint.

    ``1 + delta/(1-delta) * (rho - W/S)``; equals 1 at ``rho = W/S`` and
    ``(S - delta W) / ((1 - delta) S)`` at ``rho = 1``.
    """
    check_retention(params, rho)
    return 1.0 + params.future_weight * (rho - params.coalition_share)


def general_select_residual(
    params: PolityParams, fns: FunctionFamily, alloc: Allocation, bench: Benchmark, rho: float
) -> float:
    """Select constraint when the incumbent keeps each member with probability ``rho``."""
    check_retention(params, rho)
    g, z = alloc.g, alloc.z
    future = params.future_weight * (rho - params.coalition_share) * fns.u(z)
    return fns.v(g) + fns.u(z) - fns.v(bench.g_hat) - fns.u(bench.z_hat) + future


def select_residual(
    params: PolityParams, fns: FunctionFamily, alloc: Allocation, bench: Benchmark
) -> float:
    """Retention constraint under asymmetric uncertainty; >= 0 keeps the coalition."""
    return general_select_residual(params, fns, alloc, bench, 1.0)


def general_foc_residual(
    params: PolityParams, fns: FunctionFamily, alloc: Allocation, rho: float
) -> float:
    """FOC of the leader's program under the generalized Select constraint.

    Reduces to the asymmetric residual at ``rho = 1`` and to the equal
    residual at ``rho = W/S``.
    """
    _check_interior(alloc)
    g, z = alloc.g, alloc.z
    w = 1.0 / retention_weight(params, rho)
    return w * fns.v_g(g) + _marginal_public_cost(params, fns, g) * fns.u_z(z)


def _z_on_select(params, fns, g, bench, rho):
    # unclamped inversion of the binding constraint; negative -> v(g) > offer value
    return (bench.offer_value - fns.v(g)) / retention_weight(params, rho)


def z_from_select(
    params: PolityParams, fns: FunctionFamily, g: float, bench: Benchmark, rho: float = 1.0
) -> float:
    """Private goods per member that make the Select constraint bind at ``g``."""
    _check_g(g)
    target = _z_on_select(params, fns, g, bench, rho)
    if target < 0.0:
        raise ModelDomainError(
            f"v(g)={fns.v(g)} exceeds the offer value {bench.offer_value}; Select cannot bind with z >= 0"
        )
    return fns.u_inv(target)


def dz_dg_select(
    params: PolityParams, fns: FunctionFamily, g: float, bench: Benchmark, rho: float = 1.0
) -> float:
    """Analytic slope of :func:`z_from_select` with respect to ``g``."""
    z = z_from_select(params, fns, g, bench, rho)
    if z <= 0.0 or g <= 0.0:
        raise ModelDomainError(f"slope undefined at g={g}, z={z}")
    return -fns.v_g(g) / (retention_weight(params, rho) * fns.u_z(z))


def incumbent_stream_value(params: PolityParams, fns: FunctionFamily, steady: Allocation) -> float:
    """Value to a secure coalition member of receiving ``steady`` forever."""
    return (fns.v(steady.g) + fns.u(steady.z)) / (1.0 - params.discount)


def credible_challenger_value(
    params: PolityParams, fns: FunctionFamily, bench: Benchmark, steady: Allocation
) -> float:
    """Best offer a challenger can credibly make to a defector.

    The defector collects the benchmark once, then the steady-state public
    goods for sure and the steady-state private goods only with
    probability W/S.
    """
    w = params.future_weight
    return (
        fns.v(bench.g_hat)
        + fns.u(bench.z_hat)
        + w * fns.v(steady.g)
        + w * params.coalition_share * fns.u(steady.z)
    )
