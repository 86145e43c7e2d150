"""GARCH(p,q) estimation by Gaussian maximum likelihood.

Variance recursion: sigma2[t] = omega + sum_i alpha[i]*r2[t-1-i]
                               + sum_j beta[j]*sigma2[t-1-j]
(q ARCH lags on squared residuals, p GARCH lags on past variances).

Returns are rescaled x100 before estimation (omega is therefore in
percent^2 units) and the recursion is seeded with the sample variance.
Constraints omega>0, alpha>=0, beta>=0, sum(alpha)+sum(beta)<1 are enforced
by a log/logistic reparameterization that shares one stationarity budget
across all lags, so the optimizer runs unconstrained.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import date

import numpy as np
from scipy.optimize import minimize
from scipy.signal import lfilter, lfiltic

from .errors import DomainError, EstimationError, InsufficientDataError
from .marketdata import TRADING_DAYS_PER_YEAR, ReturnSeries

RESCALE = 100.0
MIN_OBS = 250
MAX_LAGS = 3
MAX_ITER = 10_000
LOGLIK_TOL = 1e-8


@dataclass(frozen=True)
class GarchSpec:
    """Model order: p GARCH (variance) lags, q ARCH (squared-return) lags."""

    p: int
    q: int
    mean: str = "constant"  # or "zero"

    def __post_init__(self):
        if self.p < 0 or self.q < 0 or self.p + self.q < 1:
            raise DomainError("need p,q >= 0 with p+q >= 1")
        if self.p > MAX_LAGS or self.q > MAX_LAGS:
            raise DomainError(f"p and q are capped at {MAX_LAGS}")
        if self.mean not in ("constant", "zero"):
            raise DomainError("mean must be 'constant' or 'zero'")

    @property
    def n_params(self) -> int:
        return self.p + self.q + 1 + (1 if self.mean == "constant" else 0)


@dataclass(frozen=True)
class GarchFit:
    """Estimated model. omega/mu and cond_variance are in percent units."""

    spec: GarchSpec
    omega: float
    alpha: tuple[float, ...]
    beta: tuple[float, ...]
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
    cond_variance: tuple[float, ...]


def persistence_half_life(alpha, beta) -> tuple[float, float]:
    """Shock persistence sum(alpha)+sum(beta) and its decay half-life in days."""
    persistence = float(np.sum(alpha) + np.sum(beta))
    if persistence <= 0.0:
        return persistence, 0.0
    if persistence >= 1.0:
        return persistence, math.inf
    return persistence, math.log(0.5) / math.log(persistence)


def conditional_variance(
    residuals: np.ndarray, omega: float, alpha, beta, seed_var: float | None = None
) -> np.ndarray:
    """Run the variance recursion over a (rescaled) residual series.

    Pre-sample squared residuals and variances are set to seed_var
    (sample variance of the residuals when not given).
    """
    e2 = np.asarray(residuals, dtype=float) ** 2
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    if seed_var is None:
        seed_var = float(e2.mean())
    n = len(e2)
    x = np.full(n, omega)
    for i, a in enumerate(alpha, start=1):
        if i < n:
            shifted = np.concatenate([np.full(i, seed_var), e2[:-i]])
        else:
            shifted = np.full(n, seed_var)
        x += a * shifted
    if len(beta):
        a_coeffs = np.concatenate([[1.0], -beta])
        zi = lfiltic([1.0], a_coeffs, [seed_var] * len(beta))
        sigma2 = lfilter([1.0], a_coeffs, x, zi=zi)[0]
    else:
        sigma2 = x
    return sigma2


def _gaussian_loglik(residuals: np.ndarray, sigma2: np.ndarray) -> float:
    sigma2 = np.maximum(sigma2, 1e-12)
    return float(
        -0.5 * np.sum(np.log(2 * np.pi) + np.log(sigma2) + residuals**2 / sigma2)
    )


def _unpack(theta: np.ndarray, spec: GarchSpec):
    """Unconstrained vector -> (mu, omega, alpha, beta)."""
    k = 0
    mu = 0.0
    if spec.mean == "constant":
        mu = theta[0]
        k = 1
    omega = math.exp(theta[k])
    u = np.exp(theta[k + 1 :])
    coefs = u / (1.0 + u.sum())
    return mu, omega, coefs[: spec.q], coefs[spec.q :]


def _pack(mu: float, omega: float, alpha, beta, spec: GarchSpec) -> np.ndarray:
    c = np.concatenate([alpha, beta])
    s = c.sum()
    if s >= 1.0 or np.any(c <= 0) or omega <= 0:
        raise DomainError("start point must satisfy the stationarity constraints")
    u = c / (1.0 - s)
    head = [mu] if spec.mean == "constant" else []
    return np.array([*head, math.log(omega), *np.log(u)])


def fit(r: ReturnSeries, spec: GarchSpec) -> GarchFit:
    """Maximum-likelihood fit of the given order.

    Optimization is a Nelder-Mead pass refined by BFGS with numerical
    gradients (iteration cap 10,000, log-likelihood tolerance 1e-8).
    Raises EstimationError (carrying the best point found) if neither stage
    converges.
    """
    if len(r) < MIN_OBS:
        raise InsufficientDataError(f"need at least {MIN_OBS} returns")
    x = np.asarray(r.values) * RESCALE
    sample_var = float(x.var())

    # Standard near-persistent start: total ARCH 0.05 / GARCH 0.90, split
    # evenly across lags; omega at 5% of sample variance.
    alpha0 = np.full(spec.q, 0.05 / spec.q) if spec.q else np.empty(0)
    beta0 = np.full(spec.p, 0.90 / spec.p) if spec.p else np.empty(0)
    if spec.q == 0:
        beta0 = np.full(spec.p, 0.95 / spec.p)
    theta0 = _pack(float(x.mean()), 0.05 * sample_var, alpha0, beta0, spec)

    def negll(theta: np.ndarray) -> float:
        mu, omega, alpha, beta = _unpack(theta, spec)
        resid = x - mu
        sigma2 = conditional_variance(resid, omega, alpha, beta, seed_var=float(np.mean(resid**2)))
        ll = _gaussian_loglik(resid, sigma2)
        if not math.isfinite(ll):
            return 1e12
        return -ll

    stage1 = minimize(
        negll,
        theta0,
        method="Nelder-Mead",
        options={"maxiter": MAX_ITER, "fatol": LOGLIK_TOL, "xatol": 1e-6},
    )
    stage2 = minimize(negll, stage1.x, method="BFGS", options={"maxiter": MAX_ITER})
    best = stage2 if stage2.fun <= stage1.fun else stage1
    converged = bool(stage1.success or stage2.success)

    mu, omega, alpha, beta = _unpack(best.x, spec)
    resid = x - mu
    seed_var = float(np.mean(resid**2))
    sigma2 = conditional_variance(resid, omega, alpha, beta, seed_var=seed_var)
    # With vanishing ARCH terms the GARCH lags are unidentified: any beta
    # with matching unconditional variance gives the same likelihood.
    # Canonicalize to the equivalent beta=0 parameterization.
    if spec.q and alpha.sum() < 1e-6 and len(beta) and beta.sum() > 0:
        omega = float(sigma2.mean()) * (1.0 - alpha.sum())
        beta = np.zeros_like(beta)
        sigma2 = conditional_variance(resid, omega, alpha, beta, seed_var=seed_var)
    loglik = _gaussian_loglik(resid, sigma2)
    persistence, half_life = persistence_half_life(alpha, beta)
    aic, bic, aic_po, bic_po = information_criteria(loglik, spec.n_params, len(x))
    result = GarchFit(
        spec=spec,
        omega=float(omega),
        alpha=tuple(float(a) for a in alpha),
        beta=tuple(float(b) for b in beta),
        mu=float(mu),
        loglik=loglik,
        aic=aic,
        bic=bic,
        aic_per_obs=aic_po,
        bic_per_obs=bic_po,
        persistence=persistence,
        half_life_days=half_life,
        nobs=len(x),
        converged=converged,
        cond_variance=tuple(float(s) for s in sigma2),
    )
    if not converged:
        raise EstimationError(
            f"GARCH({spec.p},{spec.q}) did not converge in {MAX_ITER} iterations",
            best=result,
        )
    return result


def information_criteria(
    loglik: float, n_params: int, n_obs: int
) -> tuple[float, float, float, float]:
    """(aic, bic, aic_per_obs, bic_per_obs)."""
    if n_obs <= 0:
        raise DomainError("n_obs must be positive")
    aic = -2.0 * loglik + 2.0 * n_params
    bic = -2.0 * loglik + n_params * math.log(n_obs) if n_params else -2.0 * loglik
    return aic, bic, aic / n_obs, bic / n_obs


def select_order(
    r: ReturnSeries, max_p: int = 3, max_q: int = 3, mean: str = "constant"
) -> tuple[GarchSpec, list[dict]]:
    """Grid search over p in 1..max_p, q in 1..max_q.

    Returns the order minimizing AIC (BIC breaks ties) plus the full grid
    of criteria for reporting. Raises EstimationError only if every cell
    fails.
    """
    if max_p > MAX_LAGS or max_q > MAX_LAGS:
        raise DomainError(f"grid bounds are capped at {MAX_LAGS}")
    grid: list[dict] = []
    fits: dict[tuple[int, int], GarchFit] = {}
    for p in range(1, max_p + 1):
        for q in range(1, max_q + 1):
            spec = GarchSpec(p, q, mean)
            try:
                f = fit(r, spec)
            except EstimationError as exc:
                f = exc.best
            if f is None:
                grid.append({"p": p, "q": q, "converged": False})
                continue
            fits[(p, q)] = f
            grid.append(
                {
                    "p": p,
                    "q": q,
                    "converged": f.converged,
                    "loglik": f.loglik,
                    "aic": f.aic,
                    "bic": f.bic,
                    "aic_per_obs": f.aic_per_obs,
                    "bic_per_obs": f.bic_per_obs,
                }
            )
    if not fits:
        raise EstimationError("all grid fits failed")
    best_key = min(fits, key=lambda k: (fits[k].aic, fits[k].bic))
    return fits[best_key].spec, grid


def conditional_vol_path(fit_: GarchFit, annualize: bool = False) -> tuple[float, ...]:
    """sqrt(sigma2) de-rescaled to daily return units (optionally annualized)."""
    scale = math.sqrt(TRADING_DAYS_PER_YEAR) if annualize else 1.0
    return tuple(math.sqrt(s) / RESCALE * scale for s in fit_.cond_variance)


def simulate(
    omega: float,
    alpha,
    beta,
    n: int,
    seed: int,
    mu: float = 0.0,
    burn: int = 500,
) -> np.ndarray:
    """Simulate a GARCH path and return daily fractional returns.

    Parameters are in the estimation (percent) units, so fitting the output
    recovers them directly.
    """
    alpha = np.atleast_1d(np.asarray(alpha, dtype=float))
    beta = np.atleast_1d(np.asarray(beta, dtype=float))
    persistence = alpha.sum() + beta.sum()
    if omega <= 0 or persistence >= 1:
        raise DomainError("need omega > 0 and sum(alpha)+sum(beta) < 1")
    rng = np.random.default_rng(seed)
    q, p = len(alpha), len(beta)
    uncond = omega / (1.0 - persistence)
    e2_hist = [uncond] * q
    s2_hist = [uncond] * p
    z = rng.standard_normal(n + burn)
    out = np.empty(n + burn)
    for t in range(n + burn):
        s2 = omega
        for i in range(q):
            s2 += alpha[i] * e2_hist[-1 - i]
        for j in range(p):
            s2 += beta[j] * s2_hist[-1 - j]
        e = math.sqrt(s2) * z[t]
        out[t] = mu + e
        if q:
            e2_hist.append(e * e)
        if p:
            s2_hist.append(s2)
    return out[burn:] / RESCALE


def simulate_series(
    omega: float, alpha, beta, n: int, seed: int, mu: float = 0.0
) -> ReturnSeries:
    """simulate() wrapped as a ReturnSeries with synthetic daily dates."""
    values = simulate(omega, alpha, beta, n, seed, mu=mu)
    base = date(2000, 1, 1).toordinal()
    dates = tuple(date.fromordinal(base + i) for i in range(n))
    return ReturnSeries("sim", dates, tuple(float(v) for v in values))
