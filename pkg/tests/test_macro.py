import numpy as np
import pytest

from csl import macro
from csl.errors import DomainError, InsufficientDataError


def test_fisher_price_path_cases():
    flat = macro.fisher_price_path(macro.FisherScenario(21e6, 10, 0.03, 0.03, 5))
    assert all(r["price_level"] == pytest.approx(1.0, rel=1e-12) for r in flat)
    ten = macro.fisher_price_path(macro.FisherScenario(1.0, 1.0, 0.03, 0.0, 10))
    assert ten[-1]["price_level"] == pytest.approx(1.03**-10, rel=1e-12)
    assert ten[-1]["price_level"] == pytest.approx(0.7441, abs=1e-4)
    static = macro.fisher_price_path(macro.FisherScenario(5, 2, 0.0, 0.0, 3))
    assert all(r["price_level"] == 1.0 for r in static)


def test_fisher_identity_invariant():
    rows = macro.fisher_price_path(macro.FisherScenario(21e6, 7.5, 0.025, 0.01, 50))
    for r in rows:
        lhs = r["money"] * r["velocity"]
        rhs = r["price_level"] * r["output"]
        assert abs(lhs - rhs) / rhs < 1e-12


def test_congestion_fee_curve():
    p = macro.CongestionParams(c0=1.5, t_max=7.0, kappa=1.0, gamma=2.0)
    assert macro.congestion_fee(7.0, p) == 1.5
    assert macro.congestion_fee(3.0, p) == 1.5
    assert macro.congestion_fee(14.0, p) == pytest.approx(3.0)  # 2*c0
    # convexity above capacity: midpoint under the chord
    f = [macro.congestion_fee(d * 7.0, p) for d in (1.5, 2.0, 2.5)]
    assert f[1] < (f[0] + f[2]) / 2
    # continuity at the boundary and monotonicity
    assert macro.congestion_fee(7.0 + 1e-12, p) == pytest.approx(1.5, rel=1e-9)
    fees = [macro.congestion_fee(d, p) for d in np.linspace(0, 30, 200)]
    assert all(b >= a for a, b in zip(fees, fees[1:]))
    with pytest.raises(DomainError):
        macro.congestion_fee(-1.0, p)
    with pytest.raises(DomainError):
        macro.CongestionParams(1.0, 1.0, 1.0, gamma=1.0)


def test_velocity_estimator_exponential():
    rng = np.random.default_rng(31)
    sample = rng.exponential(1 / 2.0, 100_000)
    v = macro.velocity_from_holding_times(sample, 0.01)
    assert v == pytest.approx(2.0, rel=0.05)
    # halving the bin roughly preserves the estimate
    v2 = macro.velocity_from_holding_times(sample, 0.005)
    assert v2 == pytest.approx(v, rel=0.10)


def test_velocity_estimator_edges():
    assert macro.velocity_from_holding_times([1.0, 2.0, 3.0], 0.5) == 0.0
    sample = [0.001, 0.2, 0.4]
    v = macro.velocity_from_holding_times(sample, 0.01)
    assert macro.velocity_from_holding_times(sample * 2, 0.01) == pytest.approx(v)
    with pytest.raises(InsufficientDataError):
        macro.velocity_from_holding_times([], 0.1)
    with pytest.raises(DomainError):
        macro.velocity_from_holding_times([1.0], 0.0)
    with pytest.raises(DomainError):
        macro.velocity_from_holding_times([-1.0], 0.1)


def test_real_payment_burden():
    path = macro.real_payment_burden(macro.MortgageScenario(0.03, 30))
    assert path[0] == (0, 1.0)
    assert path[30][1] == pytest.approx(2.4936, abs=1e-3)
    flat = macro.real_payment_burden(macro.MortgageScenario(0.0, 10))
    assert all(v == 1.0 for _, v in flat)
    increasing = [v for _, v in path]
    assert all(b > a for a, b in zip(increasing, increasing[1:]))
    with pytest.raises(DomainError):
        macro.MortgageScenario(1.0, 10)


def test_debt_ratio_path():
    rec = macro.debt_ratio_path(macro.DeflationDebtScenario("recessionary", 10, 60.0))
    assert rec[-1][1] == pytest.approx(92.79)
    gen = macro.debt_ratio_path(macro.DeflationDebtScenario("general", 1, 0.0))
    assert gen[-1][1] == pytest.approx(1.732)
    flat = macro.debt_ratio_path(
        macro.DeflationDebtScenario("general", 5, 50.0, coefficient=0.0)
    )
    assert all(v == 50.0 for _, v in flat)
    with pytest.raises(DomainError):
        macro.DeflationDebtScenario("hyperinflation", 1, 0.0)


def test_diff_in_diff():
    assert macro.diff_in_diff(1.0, 3.0, 5.0, 7.0) == 0.0  # parallel trends
    assert macro.diff_in_diff(0.0, 5.0, 0.0, 0.855) == pytest.approx(4.145)
    a = macro.diff_in_diff(1.0, 4.0, 2.0, 3.0)
    b = macro.diff_in_diff(2.0, 3.0, 1.0, 4.0)
    assert b == -a
    # invariant to adding a constant to all inputs
    c = macro.diff_in_diff(1.0 + 9, 4.0 + 9, 2.0 + 9, 3.0 + 9)
    assert c == a
    with pytest.raises(DomainError):
        macro.diff_in_diff(float("nan"), 0, 0, 0)
