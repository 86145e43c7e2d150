"""Published reference tables shipped as read-only constants.

Each table carries its source citation. The computable ones (the
double-spend probability table and the 51%-attack cost arithmetic) can be
regenerated from the security module and checked against these constants;
the purely empirical ones are display data.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import security
from .errors import DomainError


@dataclass(frozen=True)
class ReferenceTable:
    name: str
    citation: str
    description: str
    columns: tuple[str, ...]
    rows: tuple[tuple, ...]


NAKAMOTO_ATTACK_PROB = ReferenceTable(
    name="nakamoto_attack_prob",
    citation="Nakamoto (2008)",
    description="Double-spend success probability by attacker share q and confirmations z",
    columns=("q", "z", "probability"),
    rows=(
        (0.1, 0, 1.0000000),
        (0.1, 1, 0.2045873),
        (0.1, 2, 0.0509779),
        (0.1, 5, 0.0009137),
        (0.1, 10, 0.0000012),
        (0.3, 0, 1.0000000),
        (0.3, 5, 0.1773523),
        (0.3, 10, 0.0416605),
        (0.3, 15, 0.0101008),
        (0.3, 20, 0.0024804),
    ),
)

NAKAMOTO_CONFIRMATION_LADDER = ReferenceTable(
    name="nakamoto_confirmation_ladder",
    citation="Nakamoto (2008)",
    description="Confirmations needed to push attack success below 0.1%",
    columns=("q", "z"),
    rows=(
        (0.10, 5),
        (0.15, 8),
        (0.20, 11),
        (0.25, 15),
        (0.30, 24),
        (0.35, 41),
        (0.40, 89),
        (0.45, 340),
    ),
)

BUDISH_ATTACK_COST = ReferenceTable(
    name="budish_attack_cost",
    citation="Budish (2018)",
    description="Expected net cost of a majority attack (alpha), in block rewards",
    columns=("attacker_multiple", "escrow_blocks", "alpha"),
    rows=(
        (1.05, 6, 2.33),
        (1.05, 100, 9.2),
        (1.05, 1000, 53.5),
        (1.25, 6, 3.35),
        (1.25, 100, 25.9),
        (1.25, 1000, 250.5),
        (1.50, 6, 4.88),
        (1.50, 100, 51.0),
        (1.50, 1000, 501.0),
        (2.00, 6, 8.39),
        (2.00, 100, 102.0),
        (2.00, 1000, 1002.0),
    ),
)

ATTACK_COST_51 = ReferenceTable(
    name="51_attack_cost",
    citation="Harvey (2025)",
    description="Component costs of a one-week 51% attack (July 2025 network)",
    columns=("item", "value"),
    rows=(
        ("network_hashrate_ehs", 600.0),
        ("attack_hashrate_ehs", 306.0),
        ("unit_hashrate_ths", 200.0),
        ("units_required", 1_530_000),
        ("hardware_cost_usd", 4_590_000_000.0),
        ("datacenter_capex_usd", 1_340_000_000.0),
        ("power_gw", 5.355),
        ("electricity_price_per_kwh", 0.05),
        ("electricity_cost_usd", 44_982_000.0),
        ("datacenter_opex_week_usd", 80_300_000.0),
        ("total_cost_usd", 6_060_000_000.0),
    ),
)

GARCH_PARAMS = ReferenceTable(
    name="garch_params",
    citation="GARCH(1,1) fit to BTC-USD daily returns, 2020-2025",
    description="Estimated GARCH(1,1) coefficients (percent-return units) and p-values",
    columns=("parameter", "coefficient", "p_value"),
    rows=(
        ("omega", 0.3375, 0.0213),
        ("alpha", 0.0614, 0.0007),
        ("beta", 0.9257, 0.0001),
    ),
)

IMF_DEFLATION_IMPACT = ReferenceTable(
    name="imf_deflation_impact",
    citation="End et al. (2015)",
    description="Annual change in debt-to-GDP (pp) attributable to deflation",
    columns=("regime", "coefficient", "significant"),
    rows=(
        ("general", 1.732, True),
        ("expansionary", 0.435, False),
        ("recessionary", 3.279, True),
    ),
)

CHARFI_DID_SUMMARY = ReferenceTable(
    name="charfi_did_summary",
    citation="Charfi (2024)",
    description="Difference-in-differences estimates of legal-tender adoption impacts",
    columns=("variable", "did_coefficient_pp"),
    rows=(
        ("gdp_growth", 0.779),
        ("employment_rate", -0.465),
        ("investment_rate", -0.645),
        ("inflation_rate", 4.145),
        ("remittance_inflows", 1.805),
        ("government_bond_yield", 0.482),
    ),
)

CONG_WASH_TRADING = ReferenceTable(
    name="cong_wash_trading",
    citation="Cong et al. (2022)",
    description="Estimated wash-trading share of reported volume on unregulated exchanges",
    columns=("category", "equal_weighted_pct", "volume_weighted_pct"),
    rows=(
        ("all_unregulated", 70.85, 77.50),
        ("unregulated_tier1", 53.41, 61.86),
        ("unregulated_tier2", 81.76, 86.26),
    ),
)

WASH_TRADING = ReferenceTable(
    name="wash_trading",
    citation="Le Pennec et al. (2021)",
    description="Reported vs model-predicted real volume on suspect exchanges",
    columns=("exchange", "reported_volume_usd", "predicted_real_volume_usd", "printed_suspicious_pct"),
    rows=(
        ("Exchange C (WTG)", 110_554_502.0, 1_030_878.0, 98.0),
        ("Exchange F (WTG)", 104_211_641.0, 3_053_750.0, 96.0),
        ("Exchange H (WTG)", 91_207_546.0, 1_581_087.0, 97.0),
    ),
)

DOWNSIDE_RISK_COVID = ReferenceTable(
    name="downside_risk_covid",
    citation="Conlon, Corbet & McGee (2020)",
    description="1% MVaR before/after a 10% bitcoin allocation, 2019-2020 (percent)",
    columns=("index", "equity_only_mvar_pct", "blended_mvar_pct", "risk_change_pct"),
    rows=(
        ("S&P 500 (US)", 9.09, 11.57, 27.3),
        ("MSCI World", 9.92, 11.84, 19.4),
        ("FTSE 100 (UK)", 11.57, 14.52, 25.5),
        ("CSI 300 (China)", 5.37, 4.77, -11.2),
    ),
)

ALL_TABLES: dict[str, ReferenceTable] = {
    t.name: t
    for t in (
        NAKAMOTO_ATTACK_PROB,
        NAKAMOTO_CONFIRMATION_LADDER,
        BUDISH_ATTACK_COST,
        ATTACK_COST_51,
        GARCH_PARAMS,
        IMF_DEFLATION_IMPACT,
        CHARFI_DID_SUMMARY,
        CONG_WASH_TRADING,
        WASH_TRADING,
        DOWNSIDE_RISK_COVID,
    )
}


def get_table(name: str) -> ReferenceTable:
    try:
        return ALL_TABLES[name]
    except KeyError:
        raise DomainError(f"unknown reference table {name!r}") from None


# Inputs that reproduce the 51%-attack table's arithmetic exactly. Unit
# price and power are implied by the published totals (4.59e9/1.53e6 units,
# 5.355 GW/1.53e6 units).
ATTACK_COST_51_MODEL = security.AttackCostModel(
    network_hashrate_ehs=600.0,
    unit_hashrate_ths=200.0,
    unit_price_usd=3000.0,
    unit_power_kw=3.5,
    datacenter_capex_usd=1_340_000_000.0,
    datacenter_opex_per_week_usd=80_300_000.0,
    electricity_price_per_kwh=0.05,
    duration_hours=168.0,
    attack_share=0.51,
)


def regenerate_nakamoto_rows() -> list[tuple[float, int, float]]:
    """Recompute the probability table from the security module."""
    return [
        (q, z, round(security.attacker_success_probability(security.DoubleSpendParams(q, z)), 7))
        for q, z, _ in NAKAMOTO_ATTACK_PROB.rows
    ]


def regenerate_confirmation_ladder(target: float = 0.001) -> list[tuple[float, int]]:
    return [
        (q, security.min_confirmations(q, target))
        for q, _ in NAKAMOTO_CONFIRMATION_LADDER.rows
    ]


def regenerate_attack_cost() -> security.AttackCostReport:
    return security.attack_cost(ATTACK_COST_51_MODEL)
