"""FastAPI app exposing every computational operation as a JSON endpoint.

Routes are thin: validate the request model, call the core function, wrap
the response model. Domain errors map to HTTP 400 with a machine-readable
error kind; genuine estimation failures map to 500.
"""
from __future__ import annotations

import math

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, Response

from .. import __version__, charts, forensics, garch, macro, marketdata, netgame
from .. import reftables, reporting, routing, security
from ..errors import (
    CapacityError,
    ConfigError,
    CslError,
    DataFormatError,
    DegenerateGraphError,
    DomainError,
    EstimationError,
    InsufficientDataError,
)
from . import schemas as s

_ERROR_STATUS = {
    InsufficientDataError: 400,
    DomainError: 400,
    DataFormatError: 400,
    ConfigError: 400,
    CapacityError: 400,
    DegenerateGraphError: 400,
    EstimationError: 500,
}


def create_app() -> FastAPI:
    app = FastAPI(title="csl service", version=__version__)

    @app.exception_handler(CslError)
    async def csl_error_handler(_: Request, exc: CslError):
        status = next(
            (code for cls, code in _ERROR_STATUS.items() if isinstance(exc, cls)), 400
        )
        return JSONResponse(
            status_code=status,
            content={"error": type(exc).__name__, "message": str(exc)},
        )

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    # ------------------------------------------------------- marketdata

    @app.post("/marketdata/returns", response_model=s.ReturnSeriesModel)
    def md_returns(req: s.ReturnsRequest):
        return s.ReturnSeriesModel.from_core(marketdata.log_returns(req.prices.to_core()))

    @app.post("/marketdata/risk", response_model=s.RiskResponse)
    def md_risk(req: s.RiskRequest):
        rep = marketdata.risk_report(
            req.prices.to_core(), req.var_confidence, req.mvar_confidence
        )
        return s.RiskResponse.from_core(rep)

    @app.post("/marketdata/rolling-stat", response_model=s.SeriesResponse)
    def md_rolling(req: s.RollingStatRequest):
        pts = marketdata.rolling_stat(req.returns.to_core(), req.window, req.stat)
        return s.SeriesResponse(points=[s.DatedValue(date=d, value=v) for d, v in pts])

    @app.post("/marketdata/rolling-correlation", response_model=s.OptionalSeriesResponse)
    def md_rolling_corr(req: s.RollingCorrelationRequest):
        pts = marketdata.rolling_correlation(req.a.to_core(), req.b.to_core(), req.window)
        return s.OptionalSeriesResponse(
            points=[s.DatedOptionalValue(date=d, value=v) for d, v in pts]
        )

    @app.post("/marketdata/blend", response_model=s.ReturnSeriesModel)
    def md_blend(req: s.BlendRequest):
        blended = marketdata.blend_returns(req.a.to_core(), req.b.to_core(), req.weight)
        return s.ReturnSeriesModel.from_core(blended)

    @app.post("/marketdata/mvar", response_model=s.MvarResponse)
    def md_mvar(req: s.MvarRequest):
        core = req.returns.to_core()
        mvar = marketdata.cornish_fisher_mvar(core, req.confidence)
        mu, sigma, skew, kurt = marketdata.sample_moments(core.values)
        return s.MvarResponse(
            mvar=mvar,
            mean=mu,
            stdev=sigma,
            skewness=skew,
            excess_kurtosis=kurt,
            confidence=req.confidence,
        )

    # ------------------------------------------------------------ garch

    def _series_from_values(values: list[float]) -> garch.ReturnSeries:
        from datetime import date

        base = date(2000, 1, 1).toordinal()
        dates = tuple(date.fromordinal(base + i) for i in range(len(values)))
        return marketdata.ReturnSeries("payload", dates, tuple(values))

    @app.post("/garch/fit", response_model=s.GarchFitResponse)
    def garch_fit(req: s.GarchFitRequest):
        fit = garch.fit(_series_from_values(req.values), garch.GarchSpec(req.p, req.q, req.mean))
        return s.GarchFitResponse.from_core(fit, req.include_variance_path)

    @app.post("/garch/select", response_model=s.GarchSelectResponse)
    def garch_select(req: s.GarchSelectRequest):
        spec, grid = garch.select_order(
            _series_from_values(req.values), req.max_p, req.max_q, req.mean
        )
        return s.GarchSelectResponse(
            selected_p=spec.p,
            selected_q=spec.q,
            grid=[s.GarchGridCell(**cell) for cell in grid],
        )

    @app.post("/garch/simulate", response_model=s.ValuesResponse)
    def garch_simulate(req: s.GarchSimRequest):
        values = garch.simulate(req.omega, req.alpha, req.beta, req.n, req.seed, mu=req.mu)
        return s.ValuesResponse(values=[float(v) for v in values])

    # --------------------------------------------------------- security

    @app.post("/security/success-probability", response_model=s.SuccessProbResponse)
    def sec_success(req: s.SuccessProbRequest):
        params = security.DoubleSpendParams(req.q, req.z)
        return s.SuccessProbResponse(
            q=req.q,
            z=req.z,
            catch_up_probability=security.catch_up_probability(params),
            success_probability=security.attacker_success_probability(params),
        )

    @app.post("/security/nakamoto-table", response_model=s.NakamotoTableResponse)
    def sec_nakamoto_table(req: s.NakamotoTableRequest):
        rows = [
            s.NakamotoRow(
                q=q,
                z=z,
                probability=security.attacker_success_probability(
                    security.DoubleSpendParams(q, z)
                ),
            )
            for q in req.q_values
            for z in req.z_values
        ]
        ladder = [
            s.LadderRow(q=q, z=security.min_confirmations(q, req.target))
            for q in req.ladder_q
        ]
        return s.NakamotoTableResponse(rows=rows, ladder=ladder, target=req.target)

    @app.post("/security/min-confirmations", response_model=s.MinConfirmationsResponse)
    def sec_min_conf(req: s.MinConfirmationsRequest):
        return s.MinConfirmationsResponse(
            q=req.q, target=req.target, z=security.min_confirmations(req.q, req.target)
        )

    @app.post("/security/economic-limit", response_model=s.EconomicLimitResponse)
    def sec_economic_limit(req: s.EconomicLimitRequest):
        secure, min_p = security.economic_limit(req.p_block, req.v_attack, req.alpha)
        return s.EconomicLimitResponse(secure=secure, min_p_block=min_p)

    @app.post("/security/budish-alpha", response_model=s.BudishResponse)
    def sec_budish(req: s.BudishRequest):
        alpha_hat, stderr = security.simulate_attack_alpha(
            req.attacker_multiple, req.escrow_blocks, req.replicas, req.seed
        )
        return s.BudishResponse(
            attacker_multiple=req.attacker_multiple,
            escrow_blocks=req.escrow_blocks,
            replicas=req.replicas,
            alpha_hat=alpha_hat,
            stderr=stderr,
        )

    @app.post("/security/attack-cost", response_model=s.AttackCostResponse)
    def sec_attack_cost(req: s.AttackCostRequest):
        rep = security.attack_cost(req.to_core())
        return s.AttackCostResponse(**rep.__dict__)

    @app.post("/security/hashrate-equilibrium", response_model=s.HashrateEquilibriumResponse)
    def sec_hashrate(req: s.HashrateEquilibriumRequest):
        h = security.hashrate_equilibrium(req.marginal_cost, req.fee_revenue, req.subsidy)
        return s.HashrateEquilibriumResponse(total_hashrate=h)

    @app.post("/security/budget", response_model=s.BudgetResponse)
    def sec_budget(req: s.BudgetRequest):
        points = security.project_security_budget(req.to_core())
        return s.BudgetResponse(
            points=[s.BudgetPointModel(**p.__dict__) for p in points],
            elasticity=req.elasticity,
        )

    # ---------------------------------------------------------- netgame

    @app.post("/netgame/player-cost", response_model=s.PlayerCostResponse)
    def ng_player_cost(req: s.PlayerCostRequest):
        profile = netgame.StrategyProfile.from_lists(req.opens)
        cost = netgame.player_cost(profile, req.node, netgame.GameParams(req.b, req.c))
        if math.isinf(cost):
            return s.PlayerCostResponse(connected=False, cost=None)
        return s.PlayerCostResponse(connected=True, cost=cost)

    @app.post("/netgame/nash", response_model=s.NashResponse)
    def ng_nash(req: s.ProfileRequest):
        profile = netgame.StrategyProfile.from_lists(req.opens)
        flag, dev = netgame.is_nash(profile, netgame.GameParams(req.b, req.c))
        deviation = None
        if dev is not None:
            deviation = s.NashDeviation(
                node=dev["node"],
                new_opens=dev["new_opens"],
                old_cost=None if math.isinf(dev["old_cost"]) else dev["old_cost"],
                new_cost=None if math.isinf(dev["new_cost"]) else dev["new_cost"],
            )
        return s.NashResponse(is_nash=flag, deviation=deviation)

    @app.post("/netgame/social-optimum", response_model=s.SocialOptimumResponse)
    def ng_social_optimum(req: s.SocialOptimumRequest):
        cells = netgame.social_optimum_map(
            req.n, req.b_grid, req.c_grid, tuple(req.candidates)
        )
        return s.SocialOptimumResponse(
            cells=[s.SocialOptimumCell(**cell) for cell in cells]
        )

    def _ba_response(req: s.BAGraphRequest, include_edges: bool) -> s.BAGraphResponse:
        g = netgame.preferential_attachment(req.n, req.m, req.seed)
        degrees = g.degree_sequence()
        return s.BAGraphResponse(
            n=req.n,
            m=req.m,
            n_edges=len(g.edges()),
            max_degree=max(degrees),
            median_degree=float(np.median(degrees)),
            degree_gini=netgame.gini(degrees),
            edges=[[u, v] for u, v in g.edges()] if include_edges else None,
        )

    @app.post("/netgame/preferential-attachment", response_model=s.BAGraphResponse)
    def ng_ba(req: s.BAGraphRequest):
        return _ba_response(req, include_edges=True)

    @app.post("/netgame/gini", response_model=s.GiniResponse)
    def ng_gini(req: s.GiniRequest):
        return s.GiniResponse(gini=netgame.gini(req.values))

    @app.post("/netgame/null-model", response_model=s.NullModelResponse)
    def ng_null_model(req: s.NullModelRequest):
        if (req.edges is None) == (req.ba is None):
            raise ConfigError("provide exactly one of edges or ba")
        if req.ba is not None:
            g = netgame.preferential_attachment(req.ba.n, req.ba.m, req.ba.seed)
        else:
            n = max(max(e) for e in req.edges) + 1
            g = netgame.Graph(n, [(e[0], e[1]) for e in req.edges])
        res = netgame.null_model_comparison(
            g, req.metric, req.swaps_factor, req.samples, req.seed
        )
        z = res["zscore"]
        res["zscore"] = None if math.isinf(z) else z
        return s.NullModelResponse(**res)

    # ---------------------------------------------------------- routing

    @app.post("/routing/route", response_model=s.RouteResponse)
    def rt_route(req: s.RouteRequest):
        path = routing.route(req.graph.to_core(), req.src, req.dst, req.amount)
        return s.RouteResponse(path=list(path) if path else None)

    @app.post("/routing/payment", response_model=s.PaymentResponse)
    def rt_payment(req: s.PaymentRequest):
        outcome = routing.attempt_payment(
            req.graph.to_core(), req.src, req.dst, req.amount, req.max_retries
        )
        return s.PaymentResponse.from_core(outcome)

    @app.post("/routing/probe", response_model=s.ProbeResponse)
    def rt_probe(req: s.ProbeRequest):
        if (req.graph is None) == (req.generator is None):
            raise ConfigError("provide exactly one of graph or generator")
        g = req.graph.to_core() if req.graph is not None else req.generator.to_core()
        stats = routing.probe_experiment(
            g,
            req.n_sources,
            req.amounts,
            req.payments_per_amount,
            req.offline_prob,
            req.max_retries,
            req.seed,
        )
        return s.ProbeResponse(per_amount=[s.AmountStatsModel.from_core(x) for x in stats])

    # ------------------------------------------------------------ macro

    @app.post("/macro/fisher", response_model=s.FisherResponse)
    def mc_fisher(req: s.FisherRequest):
        rows = macro.fisher_price_path(
            macro.FisherScenario(req.money, req.velocity0, req.output_growth, req.velocity_growth, req.years)
        )
        return s.FisherResponse(points=[s.FisherPoint(**r) for r in rows])

    @app.post("/macro/congestion", response_model=s.CongestionResponse)
    def mc_congestion(req: s.CongestionRequest):
        params = macro.CongestionParams(req.c0, req.t_max, req.kappa, req.gamma)
        return s.CongestionResponse(
            fees=[macro.congestion_fee(d, params) for d in req.demands]
        )

    @app.post("/macro/velocity", response_model=s.VelocityResponse)
    def mc_velocity(req: s.VelocityRequest):
        if (req.holding_times is None) == (req.sample is None):
            raise ConfigError("provide exactly one of holding_times or sample")
        if req.sample is not None:
            rng = np.random.default_rng([req.sample.seed, 0x5E1])
            times = rng.exponential(1.0 / req.sample.rate, req.sample.n).tolist()
        else:
            times = req.holding_times
        v = macro.velocity_from_holding_times(times, req.bin_width)
        return s.VelocityResponse(velocity=v, n=len(times), bin_width=req.bin_width)

    @app.post("/macro/mortgage", response_model=s.YearSeriesResponse)
    def mc_mortgage(req: s.MortgageRequest):
        pts = macro.real_payment_burden(macro.MortgageScenario(req.deflation_rate, req.years))
        return s.YearSeriesResponse(points=[s.YearValue(year=t, value=v) for t, v in pts])

    @app.post("/macro/debt", response_model=s.DebtResponse)
    def mc_debt(req: s.DebtRequest):
        scenario = macro.DeflationDebtScenario(
            req.regime, req.years, req.initial_debt_ratio, req.coefficient
        )
        pts = macro.debt_ratio_path(scenario)
        return s.DebtResponse(
            coefficient=scenario.annual_coefficient,
            points=[s.YearValue(year=t, value=v) for t, v in pts],
        )

    @app.post("/macro/did", response_model=s.DidResponse)
    def mc_did(req: s.DidRequest):
        return s.DidResponse(
            coefficient=macro.diff_in_diff(
                req.treat_pre, req.treat_post, req.control_pre, req.control_post
            )
        )

    @app.post("/throughput/report", response_model=s.ThroughputResponse)
    def throughput(req: s.ThroughputRequest):
        rows = reporting.throughput_report([e.model_dump() for e in req.entries])
        return s.ThroughputResponse(rows=[s.ThroughputRow(**r) for r in rows])

    # -------------------------------------------------------- forensics

    @app.post("/forensics/benford", response_model=s.BenfordResponse)
    def fr_benford(req: s.BenfordRequest):
        res = forensics.benford_test(req.tape.to_core(), req.field)
        return s.BenfordResponse(
            chi2=res.chi2,
            df=res.df,
            passed=res.passed,
            observed=list(res.observed),
            expected=list(res.expected),
        )

    @app.post("/forensics/clustering", response_model=s.ClusteringResponse)
    def fr_clustering(req: s.ClusteringRequest):
        res = forensics.size_clustering_test(
            req.tape.to_core(), tuple(req.round_bases), req.tolerance
        )
        return s.ClusteringResponse(**res.__dict__)

    @app.post("/forensics/hill", response_model=s.HillResponse)
    def fr_hill(req: s.HillRequest):
        res = forensics.hill_tail_index(req.sizes, req.k)
        return s.HillResponse(
            xi=res.xi,
            tail_exponent=res.tail_exponent if math.isfinite(res.tail_exponent) else None,
            k_used=res.k_used,
        )

    @app.post("/forensics/suspicious-volume", response_model=s.SuspiciousVolumeResponse)
    def fr_suspicious(req: s.SuspiciousVolumeRequest):
        return s.SuspiciousVolumeResponse(
            suspicious_fraction=forensics.suspicious_volume_fraction(
                req.reported, req.predicted_real
            )
        )

    @app.post("/forensics/verdict", response_model=s.VerdictResponse)
    def fr_verdict(req: s.VerdictRequest):
        rep = forensics.forensic_verdict(req.tape.to_core(), req.config.to_core())
        return s.VerdictResponse.from_core(rep)

    # ----------------------------------------------------------- tables

    @app.get("/tables", response_model=s.TableListResponse)
    def tables_list():
        return s.TableListResponse(
            tables=[
                s.TableInfo(name=t.name, citation=t.citation, description=t.description)
                for t in reftables.ALL_TABLES.values()
            ]
        )

    @app.get("/tables/verify", response_model=s.TableVerification)
    def tables_verify():
        regen = reftables.regenerate_nakamoto_rows()
        diffs = [
            abs(got - want)
            for (_, _, got), (_, _, want) in zip(regen, reftables.NAKAMOTO_ATTACK_PROB.rows)
        ]
        ladder_ok = (
            tuple(reftables.regenerate_confirmation_ladder())
            == reftables.NAKAMOTO_CONFIRMATION_LADDER.rows
        )
        cost = reftables.regenerate_attack_cost()
        published_total = 6.06e9
        within = abs(cost.total_cost - published_total) / published_total
        return s.TableVerification(
            nakamoto_max_abs_diff=max(diffs),
            ladder_matches=ladder_ok,
            attack_cost_units=cost.units_required,
            attack_cost_total=cost.total_cost,
            attack_cost_total_within_pct=within * 100.0,
            all_ok=max(diffs) < 1e-7 and ladder_ok and within < 0.005,
        )

    @app.get("/tables/{name}", response_model=s.TableResponse)
    def tables_get(name: str):
        t = reftables.get_table(name)
        return s.TableResponse(
            name=t.name,
            citation=t.citation,
            description=t.description,
            columns=list(t.columns),
            rows=[list(row) for row in t.rows],
        )

    # ----------------------------------------------------------- charts

    @app.post("/charts/render")
    def charts_render(req: s.ChartRenderRequest):
        svg = charts.render_chart(
            [charts.Series(m.name, tuple(m.x), tuple(m.y)) for m in req.series],
            charts.ChartSpec(
                kind=req.kind,
                title=req.title,
                x_label=req.x_label,
                y_label=req.y_label,
                log_y=req.log_y,
                width=req.width,
                height=req.height,
            ),
        )
        return Response(content=svg, media_type="image/svg+xml")

    @app.post("/charts/heatmap")
    def charts_heatmap(req: s.HeatmapRenderRequest):
        svg = charts.render_heatmap(
            req.z_labels, req.x_values, req.y_values, req.title, req.width, req.height
        )
        return Response(content=svg, media_type="image/svg+xml")

    return app


app = create_app()
