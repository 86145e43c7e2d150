"""Monetary-inflexibility scenario models.

Fisher-identity price paths under a fixed money stock, the super-linear
congestion fee curve, a holding-time velocity estimator, fixed-payment
debt burdens under deflation, regression-calibrated deflation/debt paths,
and the four-mean difference-in-differences estimator.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InsufficientDataError

# Annual debt-to-GDP impact of deflation, percentage points per year,
# by regime (End et al. 2015 regression coefficients).
DEFLATION_COEFFICIENTS = {
    "general": 1.732,
    "expansionary": 0.435,
    "recessionary": 3.279,
}


@dataclass(frozen=True)
class FisherScenario:
    """MV = PY identity inputs; output normalized so P_0 = 1."""

    m: float
    v0: float
    g_y: float
    g_v: float
    years: int

    def __post_init__(self):
        if self.m <= 0 or self.v0 <= 0 or self.years <= 0:
            raise DomainError("M, V0 and years must be positive")
        if self.g_y <= -1 or self.g_v <= -1:
            raise DomainError("growth rates must exceed -100%")


def fisher_price_path(s: FisherScenario) -> list[dict]:
    """Price level P_t = M*V_t/Y_t with V_t = V0(1+g_V)^t, Y growing at g_Y.

    Y_0 is normalized to M*V0 so the path starts at 1; every row carries
    all four identity terms so M*V = P*Y is checkable.
    """
    y0 = s.m * s.v0
    rows = []
    for t in range(s.years + 1):
        v_t = s.v0 * (1 + s.g_v) ** t
        y_t = y0 * (1 + s.g_y) ** t
        p_t = s.m * v_t / y_t
        rows.append(
            {"year": t, "price_level": p_t, "velocity": v_t, "output": y_t, "money": s.m}
        )
    return rows


@dataclass(frozen=True)
class CongestionParams:
    """Base fee, throughput ceiling and the super-linear escalation shape."""

    c0: float
    t_max: float
    kappa: float = 1.0
    gamma: float = 2.0

    def __post_init__(self):
        if self.c0 <= 0 or self.t_max <= 0:
            raise DomainError("c0 and t_max must be positive")
        if self.kappa < 0:
            raise DomainError("kappa must be nonnegative")
        if self.gamma <= 1:
            raise DomainError("gamma must exceed 1 (super-linearity)")


def congestion_fee(demand: float, p: CongestionParams) -> float:
    """c0 below capacity; c0*(1 + kappa*((D-T_max)/T_max)^gamma) above."""
    if demand < 0:
        raise DomainError("demand must be nonnegative")
    if demand <= p.t_max:
        return p.c0
    overload = (demand - p.t_max) / p.t_max
    return p.c0 * (1.0 + p.kappa * overload**p.gamma)


def velocity_from_holding_times(holding_times, bin_width: float) -> float:
    """Holding-time density at zero: count(h < bin)/(N*bin).

    One-sided histogram cell rather than a symmetric kernel, which would be
    biased at the zero boundary.
    """
    times = np.asarray(list(holding_times), dtype=float)
    if times.size == 0:
        raise InsufficientDataError("empty holding-time sample")
    if bin_width <= 0:
        raise DomainError("bin_width must be positive")
    if np.any(times < 0):
        raise DomainError("holding times must be nonnegative")
    return float(np.count_nonzero(times < bin_width) / (times.size * bin_width))


@dataclass(frozen=True)
class MortgageScenario:
    """Fixed nominal payment under a constant annual deflation rate."""

    deflation_rate: float
    years: int

    def __post_init__(self):
        if not 0 <= self.deflation_rate < 1:
            raise DomainError("deflation_rate must be in [0,1)")
        if self.years < 0:
            raise DomainError("years must be nonnegative")


def real_payment_burden(s: MortgageScenario) -> list[tuple[int, float]]:
    """Real-value multiplier of a fixed payment: (1-d)^(-t) per year."""
    return [(t, (1.0 - s.deflation_rate) ** (-t)) for t in range(s.years + 1)]


@dataclass(frozen=True)
class DeflationDebtScenario:
    """Linear debt-to-GDP drift under a deflation regime.

    coefficient defaults to the regime's regression estimate and may be
    overridden.
    """

    regime: str
    years: int
    initial_debt_ratio: float
    coefficient: float | None = None

    def __post_init__(self):
        if self.regime not in DEFLATION_COEFFICIENTS:
            raise DomainError(f"unknown regime {self.regime!r}")
        if self.years < 0:
            raise DomainError("years must be nonnegative")

    @property
    def annual_coefficient(self) -> float:
        if self.coefficient is not None:
            return self.coefficient
        return DEFLATION_COEFFICIENTS[self.regime]


def debt_ratio_path(s: DeflationDebtScenario) -> list[tuple[int, float]]:
    """ratio_t = initial + coefficient*t (percent of GDP)."""
    c = s.annual_coefficient
    return [(t, s.initial_debt_ratio + c * t) for t in range(s.years + 1)]


def diff_in_diff(
    treat_pre: float, treat_post: float, control_pre: float, control_post: float
) -> float:
    """(treat_post - treat_pre) - (control_post - control_pre)."""
    for v in (treat_pre, treat_post, control_pre, control_post):
        if not np.isfinite(v):
            raise DomainError("inputs must be finite")
    return (treat_post - treat_pre) - (control_post - control_pre)
