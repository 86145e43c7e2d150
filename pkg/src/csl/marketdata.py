"""Price-series ingestion and descriptive risk statistics.

Covers daily log returns, annualized volatility (sqrt-252 convention),
rolling statistics, historical and Cornish-Fisher-modified VaR, portfolio
blending, drawdowns and rolling correlation. All operations are pure
functions of immutable inputs.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from datetime import date
from typing import Sequence

import numpy as np
from scipy.stats import norm

from .errors import (
    AlignmentError,
    DataFormatError,
    DomainError,
    InsufficientDataError,
)

TRADING_DAYS_PER_YEAR = 252

# Documented observation floors.
MIN_VAR_OBS = 20
MIN_MVAR_OBS = 30


@dataclass(frozen=True)
class PriceSeries:
    """Dated, strictly ordered closing prices of one asset."""

    symbol: str
    dates: tuple[date, ...]
    closes: tuple[float, ...]

    def __post_init__(self):
        if len(self.dates) != len(self.closes):
            raise DataFormatError("dates and closes must have equal length")
        for c in self.closes:
            if not (c > 0 and math.isfinite(c)):
                raise DataFormatError(f"non-positive or non-finite close: {c}")
        for a, b in zip(self.dates, self.dates[1:]):
            if not a < b:
                raise DataFormatError(f"dates not strictly increasing at {b}")

    def __len__(self) -> int:
        return len(self.dates)


@dataclass(frozen=True)
class ReturnSeries:
    """Daily log returns; dates mark the later day of each pair."""

    symbol: str
    dates: tuple[date, ...]
    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.dates) != len(self.values):
            raise DataFormatError("dates and values must have equal length")
        for v in self.values:
            if not math.isfinite(v):
                raise DataFormatError("returns must be finite")

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class RiskReport:
    """Headline risk statistics for one return/price history."""

    symbol: str
    n_observations: int
    annualized_vol: float
    var_confidence: float
    var_95: float
    mvar_confidence: float
    mvar: float
    max_drawdown: float
    drawdown_path: tuple[tuple[date, float], ...] = field(repr=False)


def log_returns(p: PriceSeries) -> ReturnSeries:
    """r[i] = ln(close[i+1]/close[i])."""
    if len(p) < 2:
        raise InsufficientDataError("need at least 2 observations for returns")
    closes = np.asarray(p.closes)
    values = np.log(closes[1:] / closes[:-1])
    return ReturnSeries(p.symbol, p.dates[1:], tuple(float(v) for v in values))


def annualized_volatility(r: ReturnSeries) -> float:
    """Sample stdev (n-1 divisor) scaled by sqrt(252)."""
    if len(r) < 2:
        raise InsufficientDataError("need at least 2 returns")
    return float(np.std(r.values, ddof=1) * math.sqrt(TRADING_DAYS_PER_YEAR))


def rolling_stat(
    r: ReturnSeries, window: int, stat: str = "volatility"
) -> list[tuple[date, float]]:
    """Trailing-window statistic; one point per window end.

    ``volatility`` points are annualized exactly like annualized_volatility;
    ``mean`` is the plain window average.
    """
    if stat not in ("volatility", "mean"):
        raise DomainError(f"unknown stat {stat!r}")
    min_window = 2 if stat == "volatility" else 1
    if window < min_window:
        raise DomainError(f"window must be >= {min_window} for {stat}")
    if window > len(r):
        raise InsufficientDataError("window longer than series")
    values = np.asarray(r.values)
    out = []
    for end in range(window, len(values) + 1):
        chunk = values[end - window : end]
        if stat == "volatility":
            v = float(np.std(chunk, ddof=1) * math.sqrt(TRADING_DAYS_PER_YEAR))
        else:
            v = float(chunk.mean())
        out.append((r.dates[end - 1], v))
    return out


def historical_var(r: ReturnSeries, confidence: float = 0.95) -> float:
    """Empirical VaR as a positive loss fraction.

    Quantile convention: linear interpolation of the empirical CDF at
    position n*(1-confidence) (Hyndman-Fan type 4), so the 5th percentile of
    100 returns is exactly the 5th-worst observation. A quantile that is a
    gain floors the reported VaR at 0.
    """
    if not 0 < confidence < 1:
        raise DomainError("confidence must be in (0,1)")
    if len(r) < MIN_VAR_OBS:
        raise InsufficientDataError(f"need at least {MIN_VAR_OBS} returns")
    q = np.quantile(r.values, 1 - confidence, method="interpolated_inverted_cdf")
    return max(0.0, float(-q))


def sample_moments(values: Sequence[float]) -> tuple[float, float, float, float]:
    """(mean, stdev, skewness, excess kurtosis).

    Stdev uses the n-1 divisor; skewness/kurtosis are bias-uncorrected
    moment ratios.
    """
    x = np.asarray(values, dtype=float)
    mu = float(x.mean())
    sigma = float(x.std(ddof=1)) if len(x) > 1 else 0.0
    d = x - mu
    m2 = float((d**2).mean())
    if m2 == 0:
        return mu, sigma, 0.0, 0.0
    skew = float((d**3).mean() / m2**1.5)
    kurt = float((d**4).mean() / m2**2 - 3.0)
    return mu, sigma, skew, kurt


def modified_var_from_moments(
    mu: float, sigma: float, skew: float, excess_kurt: float, confidence: float
) -> float:
    """Cornish-Fisher VaR from explicit moments.

    z_cf = z + (z^2-1)S/6 + (z^3-3z)K/24 - (2z^3-5z)S^2/36 with z the
    standard normal quantile at 1-confidence; MVaR = -(mu + sigma*z_cf),
    floored at 0.
    """
    if not 0 < confidence < 1:
        raise DomainError("confidence must be in (0,1)")
    if sigma == 0:
        return max(0.0, -mu)
    z = float(norm.ppf(1 - confidence))
    z_cf = (
        z
        + (z**2 - 1) * skew / 6
        + (z**3 - 3 * z) * excess_kurt / 24
        - (2 * z**3 - 5 * z) * skew**2 / 36
    )
    return max(0.0, -(mu + sigma * z_cf))


def cornish_fisher_mvar(r: ReturnSeries, confidence: float = 0.99) -> float:
    """Modified VaR with sample skewness and excess kurtosis."""
    if len(r) < MIN_MVAR_OBS:
        raise InsufficientDataError(f"need at least {MIN_MVAR_OBS} returns")
    mu, sigma, skew, kurt = sample_moments(r.values)
    return modified_var_from_moments(mu, sigma, skew, kurt, confidence)


def _align(a: ReturnSeries, b: ReturnSeries):
    common = sorted(set(a.dates) & set(b.dates))
    if not common:
        raise AlignmentError(f"no common dates between {a.symbol} and {b.symbol}")
    ia = {d: i for i, d in enumerate(a.dates)}
    ib = {d: i for i, d in enumerate(b.dates)}
    va = np.array([a.values[ia[d]] for d in common])
    vb = np.array([b.values[ib[d]] for d in common])
    return common, va, vb


def blend_returns(a: ReturnSeries, b: ReturnSeries, w: float) -> ReturnSeries:
    """(1-w)*a + w*b on the inner join of dates."""
    if not 0 <= w <= 1:
        raise DomainError("weight must be in [0,1]")
    common, va, vb = _align(a, b)
    blended = (1 - w) * va + w * vb
    return ReturnSeries(
        f"blend_{a.symbol}_{b.symbol}", tuple(common), tuple(float(v) for v in blended)
    )


def max_drawdown(p: PriceSeries) -> tuple[float, list[tuple[date, float]]]:
    """Peak-to-trough path: path[t] = 1 - close[t]/runmax(close)."""
    closes = np.asarray(p.closes)
    runmax = np.maximum.accumulate(closes)
    dd = 1.0 - closes / runmax
    path = [(d, float(v)) for d, v in zip(p.dates, dd)]
    return float(dd.max()), path


def rolling_correlation(
    a: ReturnSeries, b: ReturnSeries, window: int
) -> list[tuple[date, float | None]]:
    """Trailing Pearson correlation on aligned dates.

    Windows with zero variance on either side are emitted as explicit None
    markers rather than NaN.
    """
    if window < 2:
        raise DomainError("window must be >= 2")
    common, va, vb = _align(a, b)
    if window > len(common):
        raise InsufficientDataError("window longer than aligned series")
    out: list[tuple[date, float | None]] = []
    for end in range(window, len(common) + 1):
        xa = va[end - window : end]
        xb = vb[end - window : end]
        sa, sb = xa.std(), xb.std()
        if sa == 0.0 or sb == 0.0:
            out.append((common[end - 1], None))
            continue
        c = float(np.corrcoef(xa, xb)[0, 1])
        out.append((common[end - 1], min(1.0, max(-1.0, c))))
    return out


def risk_report(
    p: PriceSeries, var_confidence: float = 0.95, mvar_confidence: float = 0.99
) -> RiskReport:
    """Full descriptive risk report for one price history."""
    r = log_returns(p)
    mdd, path = max_drawdown(p)
    return RiskReport(
        symbol=p.symbol,
        n_observations=len(p),
        annualized_vol=annualized_volatility(r),
        var_confidence=var_confidence,
        var_95=historical_var(r, var_confidence),
        mvar_confidence=mvar_confidence,
        mvar=cornish_fisher_mvar(r, mvar_confidence),
        max_drawdown=mdd,
        drawdown_path=tuple(path),
    )


def load_prices_csv(path: str) -> dict[str, PriceSeries]:
    """Load a long-format price CSV: header date,symbol,close, ISO dates.

    Missing calendar days are tolerated (no gap filling); rows are sorted by
    date per symbol and duplicates rejected.
    """
    rows: dict[str, list[tuple[date, float]]] = {}
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != [
                "date",
                "symbol",
                "close",
            ]:
                raise DataFormatError(
                    f"{path}: expected header 'date,symbol,close', got {reader.fieldnames}"
                )
            for i, row in enumerate(reader, start=2):
                try:
                    d = date.fromisoformat(row["date"].strip())
                    close = float(row["close"])
                except (ValueError, AttributeError, TypeError) as exc:
                    raise DataFormatError(f"{path}:{i}: bad row {row}") from exc
                rows.setdefault(row["symbol"].strip(), []).append((d, close))
    except OSError as exc:
        raise DataFormatError(f"cannot read {path}: {exc}") from exc
    out = {}
    for symbol, obs in rows.items():
        obs.sort(key=lambda t: t[0])
        for (d1, _), (d2, _) in zip(obs, obs[1:]):
            if d1 == d2:
                raise DataFormatError(f"{path}: duplicate date {d1} for {symbol}")
        out[symbol] = PriceSeries(
            symbol, tuple(d for d, _ in obs), tuple(c for _, c in obs)
        )
    if not out:
        raise DataFormatError(f"{path}: no data rows")
    return out
