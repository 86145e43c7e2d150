"""Scenario file: one JSON document driving every CLI command.

Versioned, seed-carrying, strictly validated (unknown keys are rejected at
any depth). Sections are keyed by module name and hold parameters only;
bulk data always comes from --data files.
"""
from __future__ import annotations

import json
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .errors import ConfigError
from .service import schemas as s


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class CorrelationSpec(_Section):
    symbol_b: str
    window: int = Field(default=60, gt=1)


class BlendSpec(_Section):
    symbol_b: str
    weight: float = Field(default=0.10, ge=0, le=1)
    confidence: float = Field(default=0.99, gt=0, lt=1)


class MarketdataSection(_Section):
    symbol: Optional[str] = None
    var_confidence: float = Field(default=0.95, gt=0, lt=1)
    mvar_confidence: float = Field(default=0.99, gt=0, lt=1)
    rolling_windows: list[int] = [15, 200]
    correlation: Optional[CorrelationSpec] = None
    blend: Optional[BlendSpec] = None


class GarchSection(_Section):
    symbol: Optional[str] = None
    p: int = Field(default=1, ge=0, le=3)
    q: int = Field(default=1, ge=0, le=3)
    mean: Literal["constant", "zero"] = "constant"
    select_order: bool = False
    max_p: int = Field(default=3, ge=1, le=3)
    max_q: int = Field(default=3, ge=1, le=3)
    include_variance_path: bool = True


class BudishSpec(_Section):
    attacker_multiple: float = Field(gt=1)
    escrow_blocks: int = Field(ge=1)
    replicas: int = Field(default=100_000, ge=1000)


class BudgetSpec(_Section):
    start_height: int = Field(ge=0)
    end_height: int = Field(gt=0)
    step: int = Field(default=210_000, gt=0)
    price: float | list[float] = 50_000.0
    fee_per_block: float | list[float] = 0.1
    elasticity: float = Field(default=1.38, gt=0)
    marginal_cost: Optional[float] = Field(default=None, gt=0)

    def heights(self) -> list[int]:
        if self.end_height <= self.start_height:
            raise ConfigError("end_height must exceed start_height")
        return list(range(self.start_height, self.end_height + 1, self.step))


class SecuritySection(_Section):
    nakamoto: Optional[s.NakamotoTableRequest] = s.NakamotoTableRequest()
    budish: Optional[BudishSpec] = None
    attack_cost: Optional[s.AttackCostRequest] = None
    budget: Optional[BudgetSpec] = None


class BaSpec(_Section):
    n: int = Field(default=2000, gt=1, le=100_000)
    m: int = Field(default=2, ge=1)


class NullModelSpec(_Section):
    metric: Literal["degree", "betweenness", "closeness", "eigenvector"] = "betweenness"
    swaps_factor: float = Field(default=2.0, gt=0)
    samples: int = Field(default=20, ge=20)
    ba: Optional[BaSpec] = None  # defaults to the section's ba spec or --data graph


class NetgameSection(_Section):
    n: int = Field(default=5, ge=3, le=12)
    b_grid: list[float] = [0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0]
    c_grid: list[float] = [0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0]
    candidates: list[Literal["star", "path", "cycle", "complete"]] = [
        "star",
        "path",
        "cycle",
        "complete",
    ]
    check_star_nash: bool = True
    star_nash_b: float = Field(default=0.5, ge=0)
    star_nash_c: float = Field(default=0.5, ge=0)
    ba: Optional[BaSpec] = None
    null_model: Optional[NullModelSpec] = None


class RoutingSection(_Section):
    generator: Optional[s.SmallWorldModel] = None  # else graph from --data edge list
    n_sources: int = Field(default=5, ge=1)
    amounts: list[float] = Field(min_length=1)
    payments_per_amount: int = Field(default=500, ge=1)
    offline_prob: float = Field(default=0.05, ge=0, le=1)
    max_retries: int = Field(default=25, ge=0)


class VelocitySampleSpec(_Section):
    rate: float = Field(gt=0)
    n: int = Field(default=100_000, gt=0, le=10_000_000)


class VelocitySpec(_Section):
    bin_width: float = Field(gt=0)
    holding_times: Optional[list[float]] = None
    sample: Optional[VelocitySampleSpec] = None


class CongestionSpec(_Section):
    c0: float = Field(gt=0)
    t_max: float = Field(gt=0)
    kappa: float = Field(default=1.0, ge=0)
    gamma: float = Field(default=2.0, gt=1)
    demands: list[float] = Field(min_length=1)


class MacroSection(_Section):
    fisher: Optional[s.FisherRequest] = None
    congestion: Optional[CongestionSpec] = None
    mortgage: Optional[s.MortgageRequest] = None
    debt: Optional[s.DebtRequest] = None
    did: Optional[s.DidRequest] = None
    velocity: Optional[VelocitySpec] = None


class ForensicsSection(_Section):
    config: s.ForensicConfigModel = s.ForensicConfigModel()


class TablesSection(_Section):
    names: Optional[list[str]] = None  # default: all tables
    throughput: Optional[s.ThroughputRequest] = s.ThroughputRequest(
        entries=[
            s.ThroughputEntry(name="bitcoin", tps=6.0),
            s.ThroughputEntry(name="mastercard", tx_per_year=159.4e9),
            s.ThroughputEntry(name="visa", tx_per_year=303e9),
        ]
    )


class ChartSection(_Section):
    kind: Literal["line", "bar"] = "line"
    title: str = ""
    x_label: str = ""
    y_label: str = ""
    log_y: bool = False
    width: int = Field(default=800, ge=100, le=4000)
    height: int = Field(default=480, ge=100, le=4000)


class ScenarioFile(_Section):
    """Top-level scenario document."""

    version: Literal["1"] = "1"
    seed: Optional[int] = Field(default=None, ge=0, lt=2**64)
    marketdata: MarketdataSection = MarketdataSection()
    garch: GarchSection = GarchSection()
    security: SecuritySection = SecuritySection()
    netgame: NetgameSection = NetgameSection()
    routing: Optional[RoutingSection] = None
    macro: MacroSection = MacroSection()
    forensics: ForensicsSection = ForensicsSection()
    tables: TablesSection = TablesSection()
    chart: ChartSection = ChartSection()


def load_scenario(path: str | None) -> ScenarioFile:
    """Parse and validate a scenario file; None yields the defaults."""
    if path is None:
        return ScenarioFile()
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read scenario {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"scenario {path} is not valid JSON: {exc}") from exc
    try:
        return ScenarioFile.model_validate(raw)
    except ValidationError as exc:
        raise ConfigError(f"scenario {path} invalid: {exc}") from exc
