"""Pydantic request/response models for the service and the CLI reports.

Every model forbids unknown keys so malformed payloads and scenario typos
fail loudly. Infinities never cross the wire: fields that can be infinite
in core (player cost, tail exponent) are mapped to None with a flag.
"""
from __future__ import annotations

import math
from datetime import date as Date
from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from .. import forensics, garch, marketdata, routing, security


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


# ---------------------------------------------------------------- series


class DatedValue(StrictModel):
    date: Date
    value: float


class DatedOptionalValue(StrictModel):
    date: Date
    value: Optional[float] = None


class PricePoint(StrictModel):
    date: Date
    close: float = Field(gt=0)


class PriceSeriesModel(StrictModel):
    symbol: str
    points: list[PricePoint] = Field(min_length=2)

    def to_core(self) -> marketdata.PriceSeries:
        return marketdata.PriceSeries(
            self.symbol,
            tuple(p.date for p in self.points),
            tuple(p.close for p in self.points),
        )

    @classmethod
    def from_core(cls, p: marketdata.PriceSeries) -> "PriceSeriesModel":
        return cls(
            symbol=p.symbol,
            points=[PricePoint(date=d, close=c) for d, c in zip(p.dates, p.closes)],
        )


class ReturnSeriesModel(StrictModel):
    symbol: str
    points: list[DatedValue]

    def to_core(self) -> marketdata.ReturnSeries:
        return marketdata.ReturnSeries(
            self.symbol,
            tuple(p.date for p in self.points),
            tuple(p.value for p in self.points),
        )

    @classmethod
    def from_core(cls, r: marketdata.ReturnSeries) -> "ReturnSeriesModel":
        return cls(
            symbol=r.symbol,
            points=[DatedValue(date=d, value=v) for d, v in zip(r.dates, r.values)],
        )


# ------------------------------------------------------------ marketdata


class ReturnsRequest(StrictModel):
    prices: PriceSeriesModel


class RiskRequest(StrictModel):
    prices: PriceSeriesModel
    var_confidence: float = Field(default=0.95, gt=0, lt=1)
    mvar_confidence: float = Field(default=0.99, gt=0, lt=1)


class RiskResponse(StrictModel):
    symbol: str
    n_observations: int
    annualized_vol: float
    var_confidence: float
    var_95: float
    mvar_confidence: float
    mvar: float
    max_drawdown: float
    drawdown_path: list[DatedValue]

    @classmethod
    def from_core(cls, r: marketdata.RiskReport) -> "RiskResponse":
        return cls(
            symbol=r.symbol,
            n_observations=r.n_observations,
            annualized_vol=r.annualized_vol,
            var_confidence=r.var_confidence,
            var_95=r.var_95,
            mvar_confidence=r.mvar_confidence,
            mvar=r.mvar,
            max_drawdown=r.max_drawdown,
            drawdown_path=[DatedValue(date=d, value=v) for d, v in r.drawdown_path],
        )


class RollingStatRequest(StrictModel):
    returns: ReturnSeriesModel
    window: int = Field(gt=0)
    stat: Literal["volatility", "mean"] = "volatility"


class SeriesResponse(StrictModel):
    points: list[DatedValue]


class OptionalSeriesResponse(StrictModel):
    points: list[DatedOptionalValue]


class RollingCorrelationRequest(StrictModel):
    a: ReturnSeriesModel
    b: ReturnSeriesModel
    window: int = Field(gt=1)


class BlendRequest(StrictModel):
    a: ReturnSeriesModel
    b: ReturnSeriesModel
    weight: float = Field(ge=0, le=1)


class MvarRequest(StrictModel):
    returns: ReturnSeriesModel
    confidence: float = Field(default=0.99, gt=0, lt=1)


class MvarResponse(StrictModel):
    mvar: float
    mean: float
    stdev: float
    skewness: float
    excess_kurtosis: float
    confidence: float


# ----------------------------------------------------------------- garch


class GarchFitRequest(StrictModel):
    values: list[float]
    p: int = Field(default=1, ge=0, le=garch.MAX_LAGS)
    q: int = Field(default=1, ge=0, le=garch.MAX_LAGS)
    mean: Literal["constant", "zero"] = "constant"
    include_variance_path: bool = False


class GarchFitResponse(StrictModel):
    p: int
    q: int
    mean: str
    omega: float
    alpha: list[float]
    beta: list[float]
    mu: float
    loglik: float
    aic: float
    bic: float
    aic_per_obs: float
    bic_per_obs: float
    persistence: float
    half_life_days: float
    nobs: int
    converged: bool
    cond_variance: Optional[list[float]] = None

    @classmethod
    def from_core(cls, f: garch.GarchFit, include_path: bool) -> "GarchFitResponse":
        return cls(
            p=f.spec.p,
            q=f.spec.q,
            mean=f.spec.mean,
            omega=f.omega,
            alpha=list(f.alpha),
            beta=list(f.beta),
            mu=f.mu,
            loglik=f.loglik,
            aic=f.aic,
            bic=f.bic,
            aic_per_obs=f.aic_per_obs,
            bic_per_obs=f.bic_per_obs,
            persistence=f.persistence,
            half_life_days=f.half_life_days,
            nobs=f.nobs,
            converged=f.converged,
            cond_variance=list(f.cond_variance) if include_path else None,
        )


class GarchGridCell(StrictModel):
    p: int
    q: int
    converged: bool
    loglik: Optional[float] = None
    aic: Optional[float] = None
    bic: Optional[float] = None
    aic_per_obs: Optional[float] = None
    bic_per_obs: Optional[float] = None


class GarchSelectRequest(StrictModel):
    values: list[float]
    max_p: int = Field(default=3, ge=1, le=garch.MAX_LAGS)
    max_q: int = Field(default=3, ge=1, le=garch.MAX_LAGS)
    mean: Literal["constant", "zero"] = "constant"


class GarchSelectResponse(StrictModel):
    selected_p: int
    selected_q: int
    grid: list[GarchGridCell]


class GarchSimRequest(StrictModel):
    omega: float = Field(gt=0)
    alpha: list[float]
    beta: list[float]
    n: int = Field(gt=0, le=1_000_000)
    seed: int
    mu: float = 0.0


class ValuesResponse(StrictModel):
    values: list[float]


# -------------------------------------------------------------- security


class SuccessProbRequest(StrictModel):
    q: float = Field(ge=0, lt=1)
    z: int = Field(ge=0)


class SuccessProbResponse(StrictModel):
    q: float
    z: int
    catch_up_probability: float
    success_probability: float


class NakamotoTableRequest(StrictModel):
    q_values: list[float] = [0.1, 0.3]
    z_values: list[int] = [0, 1, 2, 5, 10, 15, 20]
    ladder_q: list[float] = [0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45]
    target: float = Field(default=0.001, gt=0, lt=1)


class NakamotoRow(StrictModel):
    q: float
    z: int
    probability: float


class LadderRow(StrictModel):
    q: float
    z: int


class NakamotoTableResponse(StrictModel):
    rows: list[NakamotoRow]
    ladder: list[LadderRow]
    target: float


class MinConfirmationsRequest(StrictModel):
    q: float = Field(ge=0, lt=0.5)
    target: float = Field(gt=0, lt=1)


class MinConfirmationsResponse(StrictModel):
    q: float
    target: float
    z: int


class EconomicLimitRequest(StrictModel):
    p_block: float = Field(gt=0)
    v_attack: float = Field(gt=0)
    alpha: float = Field(gt=0)


class EconomicLimitResponse(StrictModel):
    secure: bool
    min_p_block: float


class BudishRequest(StrictModel):
    attacker_multiple: float = Field(gt=1)
    escrow_blocks: int = Field(ge=1)
    replicas: int = Field(default=100_000, ge=1000)
    seed: int


class BudishResponse(StrictModel):
    attacker_multiple: float
    escrow_blocks: int
    replicas: int
    alpha_hat: float
    stderr: float


class AttackCostRequest(StrictModel):
    network_hashrate_ehs: float = Field(gt=0)
    unit_hashrate_ths: float = Field(gt=0)
    unit_price_usd: float = Field(gt=0)
    unit_power_kw: float = Field(gt=0)
    datacenter_capex_usd: float = Field(gt=0)
    datacenter_opex_per_week_usd: float = Field(gt=0)
    electricity_price_per_kwh: float = Field(gt=0)
    duration_hours: float = Field(default=168.0, gt=0)
    attack_share: float = Field(default=0.51, gt=0, le=1)

    def to_core(self) -> security.AttackCostModel:
        return security.AttackCostModel(**self.model_dump())


class AttackCostResponse(StrictModel):
    attack_hashrate_ehs: float
    units_required: int
    hardware_cost: float
    power_kw: float
    energy_cost: float
    datacenter_capex: float
    datacenter_opex: float
    total_cost: float


class HashrateEquilibriumRequest(StrictModel):
    marginal_cost: float = Field(gt=0)
    fee_revenue: float = Field(ge=0)
    subsidy: float = Field(ge=0)


class HashrateEquilibriumResponse(StrictModel):
    total_hashrate: float


class BudgetRequest(StrictModel):
    heights: list[int]
    price: Union[float, list[float]]
    fee_per_block: Union[float, list[float]]
    elasticity: float = Field(default=1.38, gt=0)
    marginal_cost: Optional[float] = Field(default=None, gt=0)

    def to_core(self) -> security.BudgetScenario:
        return security.BudgetScenario.from_constants(
            self.heights, self.price, self.fee_per_block, self.elasticity, self.marginal_cost
        )


class BudgetPointModel(StrictModel):
    height: int
    subsidy: float
    fee_per_block: float
    price: float
    budget: float
    security_index: Optional[float] = None
    implied_hashrate: Optional[float] = None


class BudgetResponse(StrictModel):
    points: list[BudgetPointModel]
    elasticity: float


# --------------------------------------------------------------- netgame


class ProfileRequest(StrictModel):
    opens: list[list[int]]
    b: float = Field(ge=0)
    c: float = Field(ge=0)


class PlayerCostRequest(ProfileRequest):
    node: int = Field(ge=0)


class PlayerCostResponse(StrictModel):
    connected: bool
    cost: Optional[float] = None  # None when the graph is disconnected (inf)


class NashDeviation(StrictModel):
    node: int
    new_opens: list[int]
    old_cost: Optional[float] = None
    new_cost: Optional[float] = None


class NashResponse(StrictModel):
    is_nash: bool
    deviation: Optional[NashDeviation] = None


class SocialOptimumRequest(StrictModel):
    n: int = Field(ge=3, le=12)
    b_grid: list[float]
    c_grid: list[float]
    candidates: list[Literal["star", "path", "cycle", "complete"]] = [
        "star",
        "path",
        "cycle",
        "complete",
    ]


class SocialOptimumCell(StrictModel):
    b: float
    c: float
    winner: str
    costs: dict[str, float]


class SocialOptimumResponse(StrictModel):
    cells: list[SocialOptimumCell]


class BAGraphRequest(StrictModel):
    n: int = Field(gt=1, le=100_000)
    m: int = Field(ge=1)
    seed: int


class BAGraphResponse(StrictModel):
    n: int
    m: int
    n_edges: int
    max_degree: int
    median_degree: float
    degree_gini: float
    edges: Optional[list[list[int]]] = None


class GiniRequest(StrictModel):
    values: list[float]


class GiniResponse(StrictModel):
    gini: float


class NullModelRequest(StrictModel):
    edges: Optional[list[list[int]]] = None
    ba: Optional[BAGraphRequest] = None
    metric: Literal["degree", "betweenness", "closeness", "eigenvector"] = "betweenness"
    swaps_factor: float = Field(default=2.0, gt=0)
    samples: int = Field(default=20, ge=20)
    seed: int


class NullModelResponse(StrictModel):
    metric: str
    observed_gini: float
    expected_gini: float
    std_gini: float
    zscore: Optional[float] = None  # None when infinite
    samples: int
    mean_swaps: float


# --------------------------------------------------------------- routing


class ChannelModel(StrictModel):
    u: int
    v: int
    capacity: float = Field(gt=0)
    balance_uv: Optional[float] = Field(default=None, ge=0)


class ChannelGraphModel(StrictModel):
    channels: list[ChannelModel]
    offline_nodes: list[int] = []

    def to_core(self) -> routing.ChannelGraph:
        g = routing.ChannelGraph()
        for ch in self.channels:
            g.add_channel(ch.u, ch.v, ch.capacity, ch.balance_uv)
        for node in self.offline_nodes:
            g.add_node(node, online=False)
        return g


class SmallWorldModel(StrictModel):
    n: int = Field(ge=4, le=10_000)
    k: int = Field(ge=1)
    rewire_prob: float = Field(default=0.1, ge=0, le=1)
    mean_capacity: float = Field(default=100.0, gt=0)
    capacity_sigma: float = Field(default=1.0, ge=0)
    balance_beta_a: float = Field(default=0.3, gt=0)
    balance_beta_b: float = Field(default=0.3, gt=0)
    seed: int = 0

    def to_core(self) -> routing.ChannelGraph:
        return routing.small_world_channel_graph(
            self.n,
            self.k,
            self.rewire_prob,
            self.mean_capacity,
            self.capacity_sigma,
            self.balance_beta_a,
            self.balance_beta_b,
            self.seed,
        )


class RouteRequest(StrictModel):
    graph: ChannelGraphModel
    src: int
    dst: int
    amount: float = Field(ge=0)


class RouteResponse(StrictModel):
    path: Optional[list[int]] = None


class PaymentRequest(StrictModel):
    graph: ChannelGraphModel
    src: int
    dst: int
    amount: float = Field(ge=0)
    max_retries: int = Field(default=25, ge=0)


class PaymentResponse(StrictModel):
    success: bool
    error: str
    attempts: int
    path: Optional[list[int]] = None

    @classmethod
    def from_core(cls, o: routing.PaymentOutcome) -> "PaymentResponse":
        return cls(
            success=o.success,
            error=o.error,
            attempts=o.attempts,
            path=list(o.path) if o.path else None,
        )


class ProbeRequest(StrictModel):
    graph: Optional[ChannelGraphModel] = None
    generator: Optional[SmallWorldModel] = None
    n_sources: int = Field(default=5, ge=1)
    amounts: list[float] = Field(min_length=1)
    payments_per_amount: int = Field(default=500, ge=1)
    offline_prob: float = Field(default=0.05, ge=0, le=1)
    max_retries: int = Field(default=25, ge=0)
    seed: int


class AmountStatsModel(StrictModel):
    amount: float
    payments: int
    success_rate: float
    tcf_share: float
    unp_share: float
    no_route_share: float
    nodes_reached: float
    mean_attempts: float

    @classmethod
    def from_core(cls, s: routing.AmountStats) -> "AmountStatsModel":
        return cls(**s.__dict__)


class ProbeResponse(StrictModel):
    per_amount: list[AmountStatsModel]


# ----------------------------------------------------------------- macro


class FisherRequest(StrictModel):
    money: float = Field(gt=0)
    velocity0: float = Field(gt=0)
    output_growth: float = Field(gt=-1)
    velocity_growth: float = Field(default=0.0, gt=-1)
    years: int = Field(gt=0, le=1000)


class FisherPoint(StrictModel):
    year: int
    price_level: float
    velocity: float
    output: float
    money: float


class FisherResponse(StrictModel):
    points: list[FisherPoint]


class CongestionRequest(StrictModel):
    c0: float = Field(gt=0)
    t_max: float = Field(gt=0)
    kappa: float = Field(default=1.0, ge=0)
    gamma: float = Field(default=2.0, gt=1)
    demands: list[float] = Field(min_length=1)


class CongestionResponse(StrictModel):
    fees: list[float]


class VelocitySample(StrictModel):
    """Synthetic exponential holding-time sample (rate = true velocity)."""

    rate: float = Field(gt=0)
    n: int = Field(gt=0, le=10_000_000)
    seed: int


class VelocityRequest(StrictModel):
    bin_width: float = Field(gt=0)
    holding_times: Optional[list[float]] = None
    sample: Optional[VelocitySample] = None


class VelocityResponse(StrictModel):
    velocity: float
    n: int
    bin_width: float


class MortgageRequest(StrictModel):
    deflation_rate: float = Field(ge=0, lt=1)
    years: int = Field(ge=0, le=1000)


class YearValue(StrictModel):
    year: int
    value: float


class YearSeriesResponse(StrictModel):
    points: list[YearValue]


class DebtRequest(StrictModel):
    regime: Literal["general", "expansionary", "recessionary"]
    years: int = Field(ge=0, le=1000)
    initial_debt_ratio: float
    coefficient: Optional[float] = None


class DebtResponse(StrictModel):
    coefficient: float
    points: list[YearValue]


class DidRequest(StrictModel):
    treat_pre: float
    treat_post: float
    control_pre: float
    control_post: float


class DidResponse(StrictModel):
    coefficient: float


# ------------------------------------------------------------ throughput


class ThroughputEntry(StrictModel):
    name: str
    tps: Optional[float] = Field(default=None, gt=0)
    tx_per_year: Optional[float] = Field(default=None, gt=0)


class ThroughputRequest(StrictModel):
    entries: list[ThroughputEntry] = Field(min_length=1)


class ThroughputRow(StrictModel):
    name: str
    tps: float
    ratio_to_smallest: float


class ThroughputResponse(StrictModel):
    rows: list[ThroughputRow]


# -------------------------------------------------------------- forensics


class TapeModel(StrictModel):
    """Trade tape; timestamps/prices are synthesized when omitted."""

    sizes: list[float] = Field(min_length=1)
    prices: Optional[list[float]] = None
    timestamps: Optional[list[float]] = None

    def to_core(self) -> forensics.TradeTape:
        n = len(self.sizes)
        ts = self.timestamps if self.timestamps is not None else [float(i) for i in range(n)]
        prices = self.prices if self.prices is not None else [1.0] * n
        return forensics.TradeTape(tuple(ts), tuple(prices), tuple(self.sizes))


class BenfordRequest(StrictModel):
    tape: TapeModel
    field: Literal["price", "size"] = "size"


class BenfordResponse(StrictModel):
    chi2: float
    df: int
    passed: bool
    observed: list[float]
    expected: list[float]


class ClusteringRequest(StrictModel):
    tape: TapeModel
    round_bases: list[float] = [0.5, 1.0, 5.0, 10.0]
    tolerance: float = Field(default=1e-9, gt=0)


class ClusteringResponse(StrictModel):
    round_fraction: float
    benchmark_fraction: float
    excess: float
    zscore: float
    passed: bool


class HillRequest(StrictModel):
    sizes: list[float]
    k: int = Field(ge=10)


class HillResponse(StrictModel):
    xi: float
    tail_exponent: Optional[float] = None  # None when infinite (degenerate tail)
    k_used: int


class SuspiciousVolumeRequest(StrictModel):
    reported: float = Field(gt=0)
    predicted_real: float


class SuspiciousVolumeResponse(StrictModel):
    suspicious_fraction: float


class ForensicConfigModel(StrictModel):
    benford_field: Literal["price", "size"] = "size"
    round_bases: list[float] = [0.5, 1.0, 5.0, 10.0]
    clustering_tolerance: float = Field(default=1e-9, gt=0)
    hill_top_fraction: float = Field(default=0.05, gt=0, lt=0.5)
    max_tail_exponent: float = Field(default=5.0, gt=0)
    fail_threshold: int = Field(default=2, ge=1, le=3)
    reported_volume: Optional[float] = Field(default=None, gt=0)
    predicted_real_volume: Optional[float] = Field(default=None, ge=0)

    def to_core(self) -> forensics.ForensicConfig:
        return forensics.ForensicConfig(
            benford_field=self.benford_field,
            round_bases=tuple(self.round_bases),
            clustering_tolerance=self.clustering_tolerance,
            hill_top_fraction=self.hill_top_fraction,
            max_tail_exponent=self.max_tail_exponent,
            fail_threshold=self.fail_threshold,
            reported_volume=self.reported_volume,
            predicted_real_volume=self.predicted_real_volume,
        )


class VerdictRequest(StrictModel):
    tape: TapeModel
    config: ForensicConfigModel = ForensicConfigModel()


class VerdictResponse(StrictModel):
    benford: BenfordResponse
    clustering: ClusteringResponse
    tail: HillResponse
    tail_passed: bool
    tests_failed: int
    verdict: Literal["consistent", "suspicious"]
    suspicious_volume_fraction: Optional[float] = None

    @classmethod
    def from_core(cls, rep: forensics.ForensicReport) -> "VerdictResponse":
        return cls(
            benford=BenfordResponse(
                chi2=rep.benford.chi2,
                df=rep.benford.df,
                passed=rep.benford.passed,
                observed=list(rep.benford.observed),
                expected=list(rep.benford.expected),
            ),
            clustering=ClusteringResponse(
                round_fraction=rep.clustering.round_fraction,
                benchmark_fraction=rep.clustering.benchmark_fraction,
                excess=rep.clustering.excess,
                zscore=rep.clustering.zscore,
                passed=rep.clustering.passed,
            ),
            tail=HillResponse(
                xi=rep.tail.xi,
                tail_exponent=rep.tail.tail_exponent
                if math.isfinite(rep.tail.tail_exponent)
                else None,
                k_used=rep.tail.k_used,
            ),
            tail_passed=rep.tail_passed,
            tests_failed=rep.tests_failed,
            verdict=rep.verdict,
            suspicious_volume_fraction=rep.suspicious_volume_fraction,
        )


# ----------------------------------------------------------------- tables


class TableInfo(StrictModel):
    name: str
    citation: str
    description: str


class TableResponse(StrictModel):
    name: str
    citation: str
    description: str
    columns: list[str]
    rows: list[list[Union[str, float, int, bool]]]


class TableListResponse(StrictModel):
    tables: list[TableInfo]


class TableVerification(StrictModel):
    nakamoto_max_abs_diff: float
    ladder_matches: bool
    attack_cost_units: int
    attack_cost_total: float
    attack_cost_total_within_pct: float
    all_ok: bool


# ----------------------------------------------------------------- charts


class SeriesModel(StrictModel):
    name: str
    x: list[float]
    y: list[Optional[float]]


class ChartRenderRequest(StrictModel):
    series: list[SeriesModel] = Field(min_length=1)
    kind: Literal["line", "bar"] = "line"
    title: str = ""
    x_label: str = ""
    y_label: str = ""
    log_y: bool = False
    width: int = Field(default=800, ge=100, le=4000)
    height: int = Field(default=480, ge=100, le=4000)


class HeatmapRenderRequest(StrictModel):
    z_labels: list[list[str]] = Field(min_length=1)
    x_values: list[float]
    y_values: list[float]
    title: str = ""
    width: int = Field(default=800, ge=100, le=4000)
    height: int = Field(default=480, ge=100, le=4000)


# ------------------------------------------------------- command reports


class RiskCommandResult(StrictModel):
    reports: list[RiskResponse]
    rolling_windows: list[int]
    rolling_correlation: Optional[list[DatedOptionalValue]] = None
    blend_mvar: Optional[MvarResponse] = None


class GarchCommandResult(StrictModel):
    symbol: str
    fit: GarchFitResponse
    selection: Optional[GarchSelectResponse] = None


class SecurityCommandResult(StrictModel):
    nakamoto: Optional[NakamotoTableResponse] = None
    budish: Optional[BudishResponse] = None
    attack_cost: Optional[AttackCostResponse] = None
    budget: Optional[BudgetResponse] = None


class NetgameCommandResult(StrictModel):
    social_optimum: Optional[SocialOptimumResponse] = None
    star_nash: Optional[NashResponse] = None
    ba_graph: Optional[BAGraphResponse] = None
    null_model: Optional[NullModelResponse] = None


class RouteCommandResult(StrictModel):
    per_amount: list[AmountStatsModel]


class MacroCommandResult(StrictModel):
    fisher: Optional[FisherResponse] = None
    congestion: Optional[CongestionResponse] = None
    congestion_demands: Optional[list[float]] = None
    mortgage: Optional[YearSeriesResponse] = None
    debt: Optional[DebtResponse] = None
    did: Optional[DidResponse] = None
    velocity: Optional[VelocityResponse] = None


class ForensicsCommandResult(StrictModel):
    report: VerdictResponse
    n_trades: int


class TablesCommandResult(StrictModel):
    tables: list[TableResponse]
    verification: TableVerification
    throughput: Optional[ThroughputResponse] = None


class ChartCommandResult(StrictModel):
    svg_file: str
    svg_bytes: int


CommandResult = Union[
    RiskCommandResult,
    GarchCommandResult,
    SecurityCommandResult,
    NetgameCommandResult,
    RouteCommandResult,
    MacroCommandResult,
    ForensicsCommandResult,
    TablesCommandResult,
    ChartCommandResult,
]


class CommandReport(StrictModel):
    """The report.json envelope written by every CLI command."""

    schema_version: Literal["1"] = "1"
    command: str
    seed: Optional[int] = None
    scenario_file: Optional[str] = None
    data_files: list[str] = []
    artifacts: list[str] = []
    results: CommandResult
