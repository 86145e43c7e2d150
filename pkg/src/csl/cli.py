"""Command-line front end: a thin client over the service.

Every subcommand loads files, builds request payloads, calls the service
(in-process through ASGI by default, or a remote instance via --server),
and writes artifacts: report.json plus per-series CSV dumps and SVG
charts. All writes are atomic and byte-deterministic for identical
(scenario, data, seed).

Exit codes: 0 ok, 2 scenario/config error, 3 data error, 4 computation
error.
"""
from __future__ import annotations

import argparse
import csv as csvmod
import os
import sys

import httpx

from . import __version__, reporting, sample_data_path
from .errors import ConfigError, CslError, DataFormatError
from .scenario import ScenarioFile, load_scenario
from .service import schemas as s

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_COMPUTE = 4

COMMANDS = (
    "risk",
    "garch",
    "security",
    "netgame",
    "route",
    "macro",
    "forensics",
    "tables",
    "chart",
)


class ComputeError(CslError):
    """Service returned an error response."""


class ServiceClient:
    """JSON client over the in-process app or a remote server."""

    def __init__(self, server: str | None):
        if server:
            self._client = httpx.Client(base_url=server, timeout=600.0)
        else:
            import warnings

            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

            from .service import app

            self._client = TestClient(app)

    def call(self, method: str, path: str, payload: dict | None = None):
        try:
            resp = self._client.request(method, path, json=payload)
        except httpx.HTTPError as exc:
            raise ComputeError(f"{method} {path}: service unreachable ({exc})") from exc
        if resp.status_code != 200:
            try:
                detail = resp.json()
            except ValueError:
                detail = {"message": resp.text}
            if not isinstance(detail, dict):
                detail = {"message": str(detail)}
            raise ComputeError(
                f"{method} {path} failed ({resp.status_code}): "
                f"{detail.get('error', '')} {detail.get('message', detail)}"
            )
        if resp.headers.get("content-type", "").startswith("image/svg"):
            return resp.text
        return resp.json()


class Runner:
    """Shared state for one CLI invocation."""

    def __init__(self, args):
        self.args = args
        self.out_dir: str = args.out
        self.fmt: str = args.format
        self.scenario: ScenarioFile = load_scenario(args.scenario)
        self.seed: int | None = args.seed if args.seed is not None else self.scenario.seed
        self.client = ServiceClient(args.server)
        self.artifacts: list[str] = []

    # -- seeds ----------------------------------------------------------

    def require_seed(self, what: str) -> int:
        if self.seed is None:
            raise ConfigError(f"{what} is stochastic: set scenario seed or --seed")
        return self.seed

    # -- artifacts ------------------------------------------------------

    def write_csv(self, name: str, header: list[str], rows: list[list]):
        if self.fmt != "csv":
            return
        reporting.write_csv(os.path.join(self.out_dir, name), header, rows)
        self.artifacts.append(name)

    def write_text(self, name: str, text: str):
        reporting.atomic_write_text(os.path.join(self.out_dir, name), text)
        self.artifacts.append(name)

    def write_report(self, command: str, results, data_files: list[str]):
        report = s.CommandReport(
            command=command,
            seed=self.seed,
            scenario_file=os.path.basename(self.args.scenario) if self.args.scenario else None,
            data_files=[os.path.basename(p) for p in data_files],
            artifacts=sorted(self.artifacts),
            results=results,
        )
        payload = report.model_dump(mode="json")
        reporting.atomic_write_text(
            os.path.join(self.out_dir, "report.json"), reporting.dumps_report(payload)
        )

    # -- data loading ---------------------------------------------------

    def price_data_files(self) -> list[str]:
        return self.args.data or [sample_data_path("sample_prices.csv")]

    def load_price_models(self) -> dict[str, s.PriceSeriesModel]:
        from . import marketdata

        out: dict[str, s.PriceSeriesModel] = {}
        for path in self.price_data_files():
            for symbol, series in marketdata.load_prices_csv(path).items():
                if symbol in out:
                    raise DataFormatError(f"symbol {symbol} appears in multiple files")
                out[symbol] = s.PriceSeriesModel.from_core(series)
        return out

    def pick_symbol(self, prices: dict, requested: str | None) -> str:
        if requested is not None:
            if requested not in prices:
                raise DataFormatError(f"symbol {requested!r} not in data files")
            return requested
        return sorted(prices)[0]


# ---------------------------------------------------------------- helpers


def returns_of(runner: Runner, prices: s.PriceSeriesModel) -> dict:
    return runner.client.call(
        "POST", "/marketdata/returns", {"prices": prices.model_dump(mode="json")}
    )


# --------------------------------------------------------------- commands


def cmd_risk(runner: Runner) -> None:
    sec = runner.scenario.marketdata
    prices = runner.load_price_models()
    symbols = [runner.pick_symbol(prices, sec.symbol)] if sec.symbol else sorted(prices)
    reports = []
    for symbol in symbols:
        resp = runner.client.call(
            "POST",
            "/marketdata/risk",
            {
                "prices": prices[symbol].model_dump(mode="json"),
                "var_confidence": sec.var_confidence,
                "mvar_confidence": sec.mvar_confidence,
            },
        )
        reports.append(s.RiskResponse.model_validate(resp))
        runner.write_csv(
            f"drawdown_{symbol}.csv",
            ["date", "drawdown"],
            [[p["date"], p["value"]] for p in resp["drawdown_path"]],
        )
        rets = returns_of(runner, prices[symbol])
        for window in sec.rolling_windows:
            if window >= 2 and window <= len(rets["points"]):
                roll = runner.client.call(
                    "POST",
                    "/marketdata/rolling-stat",
                    {"returns": rets, "window": window, "stat": "volatility"},
                )
                runner.write_csv(
                    f"rolling_vol_{symbol}_{window}.csv",
                    ["date", "annualized_vol"],
                    [[p["date"], p["value"]] for p in roll["points"]],
                )
    corr_points = None
    if sec.correlation is not None:
        base = runner.pick_symbol(prices, sec.symbol)
        other = runner.pick_symbol(prices, sec.correlation.symbol_b)
        resp = runner.client.call(
            "POST",
            "/marketdata/rolling-correlation",
            {
                "a": returns_of(runner, prices[base]),
                "b": returns_of(runner, prices[other]),
                "window": sec.correlation.window,
            },
        )
        corr_points = [s.DatedOptionalValue.model_validate(p) for p in resp["points"]]
        runner.write_csv(
            f"rolling_corr_{base}_{other}.csv",
            ["date", "correlation"],
            [[p["date"], p["value"]] for p in resp["points"]],
        )
    blend_mvar = None
    if sec.blend is not None:
        base = runner.pick_symbol(prices, sec.symbol)
        other = runner.pick_symbol(prices, sec.blend.symbol_b)
        blended = runner.client.call(
            "POST",
            "/marketdata/blend",
            {
                "a": returns_of(runner, prices[base]),
                "b": returns_of(runner, prices[other]),
                "weight": sec.blend.weight,
            },
        )
        blend_mvar = s.MvarResponse.model_validate(
            runner.client.call(
                "POST",
                "/marketdata/mvar",
                {"returns": blended, "confidence": sec.blend.confidence},
            )
        )
    runner.write_report(
        "risk",
        s.RiskCommandResult(
            reports=reports,
            rolling_windows=sec.rolling_windows,
            rolling_correlation=corr_points,
            blend_mvar=blend_mvar,
        ),
        runner.price_data_files(),
    )


def cmd_garch(runner: Runner) -> None:
    sec = runner.scenario.garch
    prices = runner.load_price_models()
    symbol = runner.pick_symbol(prices, sec.symbol or runner.scenario.marketdata.symbol)
    rets = returns_of(runner, prices[symbol])
    values = [p["value"] for p in rets["points"]]
    selection = None
    p, q = sec.p, sec.q
    if sec.select_order:
        selection = s.GarchSelectResponse.model_validate(
            runner.client.call(
                "POST",
                "/garch/select",
                {"values": values, "max_p": sec.max_p, "max_q": sec.max_q, "mean": sec.mean},
            )
        )
        p, q = selection.selected_p, selection.selected_q
    fit = s.GarchFitResponse.model_validate(
        runner.client.call(
            "POST",
            "/garch/fit",
            {
                "values": values,
                "p": p,
                "q": q,
                "mean": sec.mean,
                "include_variance_path": sec.include_variance_path,
            },
        )
    )
    if fit.cond_variance:
        dates = [pt["date"] for pt in rets["points"]]
        runner.write_csv(
            f"cond_vol_{symbol}.csv",
            ["date", "daily_vol"],
            [[d, (v**0.5) / 100.0] for d, v in zip(dates, fit.cond_variance)],
        )
    runner.write_report(
        "garch",
        s.GarchCommandResult(symbol=symbol, fit=fit, selection=selection),
        runner.price_data_files(),
    )


def cmd_security(runner: Runner) -> None:
    sec = runner.scenario.security
    nakamoto = budish = attack = budget = None
    if sec.nakamoto is not None:
        nakamoto = s.NakamotoTableResponse.model_validate(
            runner.client.call(
                "POST", "/security/nakamoto-table", sec.nakamoto.model_dump(mode="json")
            )
        )
        runner.write_csv(
            "nakamoto_success.csv",
            ["q", "z", "probability"],
            [[r.q, r.z, r.probability] for r in nakamoto.rows],
        )
        runner.write_csv(
            "nakamoto_ladder.csv",
            ["q", "z_required"],
            [[r.q, r.z] for r in nakamoto.ladder],
        )
    if sec.budish is not None:
        seed = runner.require_seed("budish alpha simulation")
        budish = s.BudishResponse.model_validate(
            runner.client.call(
                "POST",
                "/security/budish-alpha",
                {**sec.budish.model_dump(), "seed": seed},
            )
        )
    if sec.attack_cost is not None:
        attack = s.AttackCostResponse.model_validate(
            runner.client.call(
                "POST", "/security/attack-cost", sec.attack_cost.model_dump(mode="json")
            )
        )
    if sec.budget is not None:
        budget = s.BudgetResponse.model_validate(
            runner.client.call(
                "POST",
                "/security/budget",
                {
                    "heights": sec.budget.heights(),
                    "price": sec.budget.price,
                    "fee_per_block": sec.budget.fee_per_block,
                    "elasticity": sec.budget.elasticity,
                    "marginal_cost": sec.budget.marginal_cost,
                },
            )
        )
        runner.write_csv(
            "security_budget.csv",
            ["height", "subsidy", "fee_per_block", "price", "budget", "security_index"],
            [
                [p.height, p.subsidy, p.fee_per_block, p.price, p.budget, p.security_index]
                for p in budget.points
            ],
        )
    runner.write_report(
        "security",
        s.SecurityCommandResult(
            nakamoto=nakamoto, budish=budish, attack_cost=attack, budget=budget
        ),
        runner.args.data or [],
    )


def _star_opens(n: int) -> list[list[int]]:
    return [list(range(1, n))] + [[] for _ in range(n - 1)]


def cmd_netgame(runner: Runner) -> None:
    sec = runner.scenario.netgame
    social = s.SocialOptimumResponse.model_validate(
        runner.client.call(
            "POST",
            "/netgame/social-optimum",
            {
                "n": sec.n,
                "b_grid": sec.b_grid,
                "c_grid": sec.c_grid,
                "candidates": sec.candidates,
            },
        )
    )
    runner.write_csv(
        "social_optimum_map.csv",
        ["b", "c", "winner"],
        [[cell.b, cell.c, cell.winner] for cell in social.cells],
    )
    rows = []
    for b in sec.b_grid:
        rows.append([next(c.winner for c in social.cells if c.b == b and c.c == cc) for cc in sec.c_grid])
    svg = runner.client.call(
        "POST",
        "/charts/heatmap",
        {
            "z_labels": rows,
            "x_values": sec.c_grid,
            "y_values": sec.b_grid,
            "title": f"social optimum, n={sec.n} (x: c, y: b)",
        },
    )
    runner.write_text("social_optimum_map.svg", svg)
    star_nash = None
    if sec.check_star_nash:
        star_nash = s.NashResponse.model_validate(
            runner.client.call(
                "POST",
                "/netgame/nash",
                {"opens": _star_opens(sec.n), "b": sec.star_nash_b, "c": sec.star_nash_c},
            )
        )
    ba = None
    if sec.ba is not None:
        seed = runner.require_seed("preferential attachment")
        ba = s.BAGraphResponse.model_validate(
            runner.client.call(
                "POST",
                "/netgame/preferential-attachment",
                {"n": sec.ba.n, "m": sec.ba.m, "seed": seed},
            )
        )
        if ba.edges:
            runner.write_text(
                "ba_edges.txt", "\n".join(f"{u} {v}" for u, v in ba.edges) + "\n"
            )
        ba = ba.model_copy(update={"edges": None})  # keep report.json compact
    null_model = None
    if sec.null_model is not None:
        seed = runner.require_seed("null model comparison")
        ba_spec = sec.null_model.ba or sec.ba
        payload: dict = {
            "metric": sec.null_model.metric,
            "swaps_factor": sec.null_model.swaps_factor,
            "samples": sec.null_model.samples,
            "seed": seed,
        }
        if runner.args.data:
            payload["edges"] = _load_edge_pairs(runner.args.data[0])
        elif ba_spec is not None:
            payload["ba"] = {"n": ba_spec.n, "m": ba_spec.m, "seed": seed}
        else:
            raise ConfigError("null_model needs a --data edge list or a ba spec")
        null_model = s.NullModelResponse.model_validate(
            runner.client.call("POST", "/netgame/null-model", payload)
        )
    runner.write_report(
        "netgame",
        s.NetgameCommandResult(
            social_optimum=social, star_nash=star_nash, ba_graph=ba, null_model=null_model
        ),
        runner.args.data or [],
    )


def _load_edge_pairs(path: str) -> list[list[int]]:
    from .netgame import parse_edgelist

    try:
        with open(path, encoding="utf-8") as fh:
            g = parse_edgelist(fh.read())
    except OSError as exc:
        raise DataFormatError(f"cannot read {path}: {exc}") from exc
    return [[u, v] for u, v in g.edges()]


def _load_channel_graph_model(path: str) -> dict:
    from .routing import parse_channel_edgelist

    try:
        with open(path, encoding="utf-8") as fh:
            g = parse_channel_edgelist(fh.read())
    except OSError as exc:
        raise DataFormatError(f"cannot read {path}: {exc}") from exc
    channels = [
        {"u": u, "v": v, "capacity": ch.capacity, "balance_uv": ch.balance_lh}
        for (u, v), ch in sorted(g.channels.items())
    ]
    return {"channels": channels, "offline_nodes": []}


def cmd_route(runner: Runner) -> None:
    sec = runner.scenario.routing
    if sec is None:
        raise ConfigError("route command needs a routing section in the scenario")
    seed = runner.require_seed("routing probe experiment")
    payload = {
        "n_sources": sec.n_sources,
        "amounts": sec.amounts,
        "payments_per_amount": sec.payments_per_amount,
        "offline_prob": sec.offline_prob,
        "max_retries": sec.max_retries,
        "seed": seed,
    }
    if runner.args.data:
        payload["graph"] = _load_channel_graph_model(runner.args.data[0])
    elif sec.generator is not None:
        gen = sec.generator.model_dump()
        gen["seed"] = seed
        payload["generator"] = gen
    else:
        raise ConfigError("route needs --data channel list or a generator spec")
    probe = s.ProbeResponse.model_validate(
        runner.client.call("POST", "/routing/probe", payload)
    )
    runner.write_csv(
        "route_success.csv",
        ["amount", "success_rate", "tcf_share", "unp_share", "no_route_share", "nodes_reached"],
        [
            [a.amount, a.success_rate, a.tcf_share, a.unp_share, a.no_route_share, a.nodes_reached]
            for a in probe.per_amount
        ],
    )
    runner.write_report(
        "route", s.RouteCommandResult(per_amount=probe.per_amount), runner.args.data or []
    )


def cmd_macro(runner: Runner) -> None:
    sec = runner.scenario.macro
    result = s.MacroCommandResult()
    if sec.fisher is not None:
        fisher = s.FisherResponse.model_validate(
            runner.client.call("POST", "/macro/fisher", sec.fisher.model_dump())
        )
        result = result.model_copy(update={"fisher": fisher})
        runner.write_csv(
            "fisher_path.csv",
            ["year", "price_level", "velocity", "output", "money"],
            [[p.year, p.price_level, p.velocity, p.output, p.money] for p in fisher.points],
        )
    if sec.congestion is not None:
        cong = s.CongestionResponse.model_validate(
            runner.client.call("POST", "/macro/congestion", sec.congestion.model_dump())
        )
        result = result.model_copy(
            update={"congestion": cong, "congestion_demands": sec.congestion.demands}
        )
        runner.write_csv(
            "congestion_fees.csv",
            ["demand", "fee"],
            [[d, f] for d, f in zip(sec.congestion.demands, cong.fees)],
        )
    if sec.mortgage is not None:
        mort = s.YearSeriesResponse.model_validate(
            runner.client.call("POST", "/macro/mortgage", sec.mortgage.model_dump())
        )
        result = result.model_copy(update={"mortgage": mort})
        runner.write_csv(
            "mortgage_burden.csv",
            ["year", "real_payment_multiplier"],
            [[p.year, p.value] for p in mort.points],
        )
    if sec.debt is not None:
        debt = s.DebtResponse.model_validate(
            runner.client.call("POST", "/macro/debt", sec.debt.model_dump())
        )
        result = result.model_copy(update={"debt": debt})
        runner.write_csv(
            "debt_ratio.csv",
            ["year", "debt_to_gdp_pct"],
            [[p.year, p.value] for p in debt.points],
        )
    if sec.did is not None:
        did = s.DidResponse.model_validate(
            runner.client.call("POST", "/macro/did", sec.did.model_dump())
        )
        result = result.model_copy(update={"did": did})
    if sec.velocity is not None:
        payload: dict = {"bin_width": sec.velocity.bin_width}
        if sec.velocity.holding_times is not None:
            payload["holding_times"] = sec.velocity.holding_times
        elif sec.velocity.sample is not None:
            seed = runner.require_seed("velocity sampling")
            payload["sample"] = {**sec.velocity.sample.model_dump(), "seed": seed}
        else:
            raise ConfigError("velocity needs holding_times or a sample spec")
        vel = s.VelocityResponse.model_validate(
            runner.client.call("POST", "/macro/velocity", payload)
        )
        result = result.model_copy(update={"velocity": vel})
    runner.write_report("macro", result, runner.args.data or [])


def cmd_forensics(runner: Runner) -> None:
    from . import forensics as fmod

    sec = runner.scenario.forensics
    paths = runner.args.data or [sample_data_path("sample_trades.csv")]
    tape = fmod.load_trades_csv(paths[0])
    resp = s.VerdictResponse.model_validate(
        runner.client.call(
            "POST",
            "/forensics/verdict",
            {
                "tape": {
                    "timestamps": list(tape.timestamps),
                    "prices": list(tape.prices),
                    "sizes": list(tape.sizes),
                },
                "config": sec.config.model_dump(),
            },
        )
    )
    runner.write_report(
        "forensics",
        s.ForensicsCommandResult(report=resp, n_trades=len(tape)),
        paths,
    )


def cmd_tables(runner: Runner) -> None:
    sec = runner.scenario.tables
    listing = runner.client.call("GET", "/tables")
    names = sec.names or [t["name"] for t in listing["tables"]]
    tables = []
    for name in names:
        t = s.TableResponse.model_validate(runner.client.call("GET", f"/tables/{name}"))
        tables.append(t)
        runner.write_csv(
            f"table_{name}.csv", t.columns, [list(row) for row in t.rows]
        )
    verification = s.TableVerification.model_validate(
        runner.client.call("GET", "/tables/verify")
    )
    throughput = None
    if sec.throughput is not None:
        throughput = s.ThroughputResponse.model_validate(
            runner.client.call("POST", "/throughput/report", sec.throughput.model_dump())
        )
        runner.write_csv(
            "throughput.csv",
            ["name", "tps", "ratio_to_smallest"],
            [[r.name, r.tps, r.ratio_to_smallest] for r in throughput.rows],
        )
    runner.write_report(
        "tables",
        s.TablesCommandResult(tables=tables, verification=verification, throughput=throughput),
        [],
    )


def _load_series_csv(path: str) -> list[dict]:
    """Chart input CSV: first column is x, remaining columns are series."""
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csvmod.reader(fh)
            rows = [row for row in reader if row]
    except OSError as exc:
        raise DataFormatError(f"cannot read {path}: {exc}") from exc
    if len(rows) < 2 or len(rows[0]) < 2:
        raise DataFormatError(f"{path}: need a header and at least one series column")
    header = rows[0]
    try:
        series = [
            {
                "name": name,
                "x": [float(r[0]) for r in rows[1:]],
                "y": [float(r[ci]) if r[ci] != "" else None for r in rows[1:]],
            }
            for ci, name in enumerate(header[1:], start=1)
        ]
    except (ValueError, IndexError) as exc:
        raise DataFormatError(f"{path}: non-numeric chart data: {exc}") from exc
    return series


def cmd_chart(runner: Runner) -> None:
    if not runner.args.data:
        raise DataFormatError("chart needs a --data series CSV")
    sec = runner.scenario.chart
    series = _load_series_csv(runner.args.data[0])
    svg = runner.client.call(
        "POST",
        "/charts/render",
        {"series": series, **sec.model_dump()},
    )
    runner.write_text("chart.svg", svg)
    runner.write_report(
        "chart",
        s.ChartCommandResult(svg_file="chart.svg", svg_bytes=len(svg.encode())),
        runner.args.data,
    )


HANDLERS = {
    "risk": cmd_risk,
    "garch": cmd_garch,
    "security": cmd_security,
    "netgame": cmd_netgame,
    "route": cmd_route,
    "macro": cmd_macro,
    "forensics": cmd_forensics,
    "tables": cmd_tables,
    "chart": cmd_chart,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="csl",
        description="Desk-scale models for stress-testing bitcoin-as-money claims.",
    )
    parser.add_argument("--version", action="version", version=f"csl {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", help="scenario JSON file")
    common.add_argument(
        "--data", action="append", help="input data file (repeatable)", default=None
    )
    common.add_argument("--out", default="csl-out", help="output directory")
    common.add_argument("--seed", type=int, default=None, help="override scenario seed")
    common.add_argument(
        "--format",
        choices=["json", "csv"],
        default="csv",
        help="csv also writes per-series CSV dumps (default), json writes report.json only",
    )
    common.add_argument("--server", default=None, help="remote service URL (default: in-process)")
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=f"run the {name} workflow")
    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        import uvicorn

        from .service import app

        uvicorn.run(app, host=args.host, port=args.port)
        return EXIT_OK
    try:
        runner = Runner(args)
    except ConfigError as exc:
        print(f"csl: scenario error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        HANDLERS[args.command](runner)
    except ConfigError as exc:
        print(f"csl: scenario error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DataFormatError as exc:
        print(f"csl: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except CslError as exc:
        print(f"csl: computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    print(f"csl: {args.command} ok -> {os.path.join(runner.out_dir, 'report.json')}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
