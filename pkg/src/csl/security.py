"""Proof-of-work security economics.

Nakamoto's double-spend success probabilities, the flow-vs-stock economic
limit with a simulated net attack cost, a bottom-up 51%-attack cost model,
the hash-rate/revenue equilibrium, and security-budget projections across
subsidy halvings.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

HALVING_INTERVAL = 210_000
INITIAL_SUBSIDY = 50.0
MC_CHUNK = 16_384


@dataclass(frozen=True)
class DoubleSpendParams:
    """Attacker hashrate share q and confirmation depth z."""

    q: float
    z: int

    def __post_init__(self):
        if not 0 <= self.q < 1:
            raise DomainError("q must be in [0,1)")
        if self.z < 0:
            raise DomainError("z must be nonnegative")


def catch_up_probability(params: DoubleSpendParams) -> float:
    """Gambler's-ruin catch-up from a deficit of z blocks: (q/p)^z, 1 if q>=p."""
    q, z = params.q, params.z
    p = 1.0 - q
    if q >= p:
        return 1.0
    if z == 0:
        return 1.0
    return (q / p) ** z


def attacker_success_probability(params: DoubleSpendParams) -> float:
    """Full double-spend success probability with a Poisson head start.

    P = 1 - sum_{k=0..z} Pois(k; lam)*(1 - (q/p)^(z-k)), lam = z*q/p.
    This, not the bare catch-up form, generates the reference table.
    """
    q, z = params.q, params.z
    p = 1.0 - q
    if q >= p:
        return 1.0
    if z == 0:
        return 1.0
    lam = z * q / p
    ratio = q / p
    total = 0.0
    for k in range(z + 1):
        log_pmf = k * math.log(lam) - lam - math.lgamma(k + 1) if lam > 0 else (0.0 if k == 0 else -math.inf)
        pmf = math.exp(log_pmf)
        total += pmf * (1.0 - ratio ** (z - k))
    return 1.0 - total


def min_confirmations(q: float, target: float, z_cap: int = 100_000) -> int:
    """Smallest z with attacker_success_probability(q, z) < target."""
    if not 0 < target < 1:
        raise DomainError("target must be in (0,1)")
    if q >= 0.5:
        raise DomainError("no finite confirmation count for q >= 0.5")
    for z in range(z_cap + 1):
        if attacker_success_probability(DoubleSpendParams(q, z)) < target:
            return z
    raise DomainError(f"no z below cap {z_cap} reaches target {target}")


def economic_limit(p_block: float, v_attack: float, alpha: float) -> tuple[bool, float]:
    """Flow-vs-stock security condition: P_block must exceed V_attack/alpha.

    Returns (secure, min_p_block); the inequality is strict.
    """
    if alpha <= 0:
        raise DomainError("alpha must be positive")
    if p_block <= 0 or v_attack <= 0:
        raise DomainError("p_block and v_attack must be positive")
    min_p_block = v_attack / alpha
    return p_block > min_p_block, min_p_block


def rent_seeking_check(n_star_c: float, p_block: float) -> float:
    """Residual of the free-entry mining condition; zero at equilibrium."""
    return n_star_c - p_block


def _race_times(rng: np.random.Generator, n: int, a: float, e: int) -> np.ndarray:
    """Vectorized double-spend races.

    Honest blocks arrive at rate 1, attacker at rate a (exponential
    inter-arrivals, simulated as a merged Poisson stream). A race ends the
    first instant the attacker chain is strictly longer than the honest
    chain while the honest chain has at least e blocks; returns the end
    times in honest block-time units.
    """
    honest = np.zeros(n, dtype=np.int64)
    attacker = np.zeros(n, dtype=np.int64)
    t = np.zeros(n)
    active = np.arange(n)
    total_rate = 1.0 + a
    p_att = a / total_rate
    while active.size:
        t[active] += rng.exponential(1.0 / total_rate, active.size)
        is_att = rng.random(active.size) < p_att
        attacker[active] += is_att
        honest[active] += ~is_att
        done = (attacker[active] > honest[active]) & (honest[active] >= e)
        active = active[~done]
    return t


def simulate_attack_alpha(
    a: float, e: int, replicas: int, seed: int, workers: int | None = None
) -> tuple[float, float]:
    """Monte Carlo net cost of a majority attack, in block-reward units.

    Per replica the cost is (a-1)*(T+2): the attacker burns hashrate worth
    `a` block rewards per block-time and recoups one per block-time once his
    replacement chain is canonical, over the race duration T plus the
    two-block window bracketing the double-spent payment. This accounting
    reproduces the published cost table; the gross-cost form a*E[T]-e does
    not (see package docs).

    Deterministic for a fixed (seed, replicas): replicas are split into
    fixed-size chunks, each driven by an independent substream derived from
    (seed, chunk index), and merged in chunk order regardless of execution
    order. CSL_THREADS (or `workers`) caps chunk parallelism.
    """
    if a <= 1:
        raise DomainError("attacker multiple a must exceed 1")
    if e < 1:
        raise DomainError("escrow depth e must be >= 1")
    if replicas < 1000:
        raise DomainError("need at least 1000 replicas")
    if workers is None:
        workers = max(1, int(os.environ.get("CSL_THREADS", "1")))

    chunks = [
        (i, min(MC_CHUNK, replicas - i * MC_CHUNK))
        for i in range((replicas + MC_CHUNK - 1) // MC_CHUNK)
    ]

    def run(chunk):
        idx, size = chunk
        rng = np.random.default_rng([seed, idx])
        return _race_times(rng, size, a, e)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, chunks))
    else:
        parts = [run(c) for c in chunks]
    costs = (a - 1.0) * (np.concatenate(parts) + 2.0)
    return float(costs.mean()), float(costs.std(ddof=1) / math.sqrt(replicas))


@dataclass(frozen=True)
class AttackCostModel:
    """Inputs of the one-week 51%-attack cost estimate (unit-suffixed)."""

    network_hashrate_ehs: float
    unit_hashrate_ths: float
    unit_price_usd: float
    unit_power_kw: float
    datacenter_capex_usd: float
    datacenter_opex_per_week_usd: float
    electricity_price_per_kwh: float
    duration_hours: float = 168.0
    attack_share: float = 0.51

    def __post_init__(self):
        for name, v in self.__dict__.items():
            if not v > 0:
                raise DomainError(f"{name} must be positive")


@dataclass(frozen=True)
class AttackCostReport:
    """Itemized costs; power in kW, money in the model's currency."""

    attack_hashrate_ehs: float
    units_required: int
    hardware_cost: float
    power_kw: float
    energy_cost: float
    datacenter_capex: float
    datacenter_opex: float
    total_cost: float


def attack_cost(model: AttackCostModel) -> AttackCostReport:
    """Bottom-up hardware/datacenter/electricity cost of a timed attack."""
    attack_ehs = model.network_hashrate_ehs * model.attack_share
    units = math.ceil(attack_ehs * 1e6 / model.unit_hashrate_ths)
    hardware = units * model.unit_price_usd
    power_kw = units * model.unit_power_kw
    energy = power_kw * model.duration_hours * model.electricity_price_per_kwh
    dc_opex = model.datacenter_opex_per_week_usd * model.duration_hours / 168.0
    total = hardware + model.datacenter_capex_usd + energy + dc_opex
    return AttackCostReport(
        attack_hashrate_ehs=attack_ehs,
        units_required=units,
        hardware_cost=hardware,
        power_kw=power_kw,
        energy_cost=energy,
        datacenter_capex=model.datacenter_capex_usd,
        datacenter_opex=dc_opex,
        total_cost=total,
    )


def hashrate_equilibrium(c_m: float, fee_revenue: float, b: float) -> float:
    """Equilibrium total hashrate: (fee revenue + subsidy) / marginal cost."""
    if c_m <= 0:
        raise DomainError("marginal cost must be positive")
    return (fee_revenue + b) / c_m


def subsidy_at(height: int) -> float:
    """Block subsidy in coin: 50 / 2^(height // 210000), zero after 64 halvings."""
    if height < 0:
        raise DomainError("height must be nonnegative")
    halvings = height // HALVING_INTERVAL
    if halvings >= 64:
        return 0.0
    return INITIAL_SUBSIDY / (2**halvings)


@dataclass(frozen=True)
class BudgetScenario:
    """Security-budget projection inputs.

    `price_path` and `fee_per_block_path` are either constants or one value
    per height. `elasticity` is the log-log response of security to budget.
    `marginal_cost` (optional) adds the implied equilibrium hashrate and the
    free-entry flow cost to each point.
    """

    heights: tuple[int, ...]
    price_path: tuple[float, ...]
    fee_per_block_path: tuple[float, ...]
    elasticity: float = 1.38
    marginal_cost: float | None = None

    def __post_init__(self):
        n = len(self.heights)
        if n == 0:
            raise DomainError("need at least one height")
        if len(self.price_path) != n or len(self.fee_per_block_path) != n:
            raise DomainError("price and fee paths must match heights")
        if self.elasticity <= 0:
            raise DomainError("elasticity must be positive")

    @classmethod
    def from_constants(
        cls,
        heights,
        price: float | list,
        fee_per_block: float | list,
        elasticity: float = 1.38,
        marginal_cost: float | None = None,
    ) -> "BudgetScenario":
        heights = tuple(int(h) for h in heights)
        n = len(heights)
        expand = lambda v: tuple(float(x) for x in v) if isinstance(v, (list, tuple)) else (float(v),) * n
        return cls(heights, expand(price), expand(fee_per_block), elasticity, marginal_cost)


@dataclass(frozen=True)
class BudgetPoint:
    height: int
    subsidy: float
    fee_per_block: float
    price: float
    budget: float
    security_index: float | None
    implied_hashrate: float | None = None


def project_security_budget(scenario: BudgetScenario) -> list[BudgetPoint]:
    """Budget (subsidy+fees)*price per height and a security index.

    The index starts at 1.0 and evolves as dln(security) =
    elasticity * dln(budget); once the budget hits zero it is reported as
    None from that point on (log response undefined).
    """
    out: list[BudgetPoint] = []
    index: float | None = None
    prev_budget: float | None = None
    for h, price, fee in zip(
        scenario.heights, scenario.price_path, scenario.fee_per_block_path
    ):
        sub = subsidy_at(h)
        budget = (sub + fee) * price
        if not out:
            index = 1.0 if budget > 0 else None
        elif index is None or budget <= 0 or prev_budget is None or prev_budget <= 0:
            index = None
        else:
            index = index * (budget / prev_budget) ** scenario.elasticity
        implied_h = None
        if scenario.marginal_cost:
            implied_h = (sub + fee) / scenario.marginal_cost
        out.append(
            BudgetPoint(
                height=h,
                subsidy=sub,
                fee_per_block=fee,
                price=price,
                budget=budget,
                security_index=index,
                implied_hashrate=implied_h,
            )
        )
        prev_budget = budget
    return out
