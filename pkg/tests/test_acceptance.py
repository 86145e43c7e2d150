"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line and enforcing its runtime budget. Run with `pytest -s
tests/test_acceptance.py` to see the lines as they complete."""
import itertools
import json
import math
import os
import time

import numpy as np
import pytest

from csl import cli, garch, macro, netgame, routing, security
from csl.forensics import (
    benford_test,
    forensic_verdict,
    hill_tail_index,
    suspicious_volume_fraction,
)
from csl.reftables import NAKAMOTO_ATTACK_PROB, NAKAMOTO_CONFIRMATION_LADDER
from conftest import make_returns

REPO = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
SCENARIOS = os.path.join(REPO, "scenarios")


class criterion:
    """Times a criterion body and prints its verdict line."""

    def __init__(self, number: int, label: str, budget_s: float):
        self.number = number
        self.label = label
        self.budget = budget_s

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.t0
        verdict = "PASS" if exc_type is None and elapsed < self.budget else "FAIL"
        print(f"[criterion {self.number}] {verdict} {self.label} ({elapsed:.1f}s / {self.budget:.0f}s)")
        if exc_type is None:
            assert elapsed < self.budget, f"criterion {self.number} over budget: {elapsed:.1f}s"
        return False


def test_criterion_1_nakamoto_table_exact():
    with criterion(1, "double-spend table exact to 7 decimals + confirmation ladder", 1.0):
        for q, z, want in NAKAMOTO_ATTACK_PROB.rows:
            got = security.attacker_success_probability(security.DoubleSpendParams(q, z))
            assert abs(round(got, 7) - want) < 1e-9, (q, z, got, want)
        for q, z_want in NAKAMOTO_CONFIRMATION_LADDER.rows:
            assert security.min_confirmations(q, 0.001) == z_want


def test_criterion_2_attack_cost_exact_arithmetic():
    with criterion(2, "51%-attack cost arithmetic matches the published build-out", 1.0):
        model = security.AttackCostModel(
            network_hashrate_ehs=600.0,
            unit_hashrate_ths=200.0,
            unit_price_usd=3000.0,
            unit_power_kw=3.5,
            datacenter_capex_usd=1.34e9,
            datacenter_opex_per_week_usd=80.3e6,
            electricity_price_per_kwh=0.05,
            duration_hours=168.0,
            attack_share=0.51,
        )
        rep = security.attack_cost(model)
        assert rep.units_required == 1_530_000
        assert rep.hardware_cost == pytest.approx(4_590_000_000.0)
        assert rep.power_kw == pytest.approx(5.355e6)  # 5.355 GW
        assert rep.energy_cost == pytest.approx(44_982_000.0)
        assert abs(rep.total_cost - 6.06e9) / 6.06e9 < 0.005


def test_criterion_3_garch_recovery_and_selection():
    with criterion(3, "GARCH(1,1) parameter recovery, published persistence, order selection", 60.0):
        r = garch.simulate_series(0.2, 0.1, 0.8, 20_000, seed=12345)
        fit = garch.fit(r, garch.GarchSpec(1, 1))
        assert fit.omega == pytest.approx(0.2, abs=0.03)
        assert fit.alpha[0] == pytest.approx(0.1, abs=0.03)
        assert fit.beta[0] == pytest.approx(0.8, abs=0.03)

        persistence, half_life = garch.persistence_half_life([0.0614], [0.9257])
        assert persistence == pytest.approx(0.9871, abs=1e-4)
        assert half_life == pytest.approx(53.4, abs=0.5)

        spec, _ = garch.select_order(garch.simulate_series(0.2, 0.1, 0.8, 6000, seed=2024), 3, 3)
        assert (spec.p, spec.q) == (1, 1)


def test_criterion_4_budish_alpha_reconstruction():
    with criterion(4, "majority-attack net cost reproduces the published table cells", 120.0):
        cases = [
            (2.0, 6, 8.39, 0.10),
            (2.0, 100, 102.0, 0.05),
            (1.05, 6, 2.33, 0.15),
        ]
        for a, e, target, tol in cases:
            alpha_hat, stderr = security.simulate_attack_alpha(a, e, 100_000, seed=42)
            assert abs(alpha_hat - target) <= tol * target, (a, e, alpha_hat, target)


def _oracle_distances(g):
    n = g.n
    dist = [[math.inf] * n for _ in range(n)]
    for u in range(n):
        dist[u][u] = 0
        for v in g.adj[u]:
            dist[u][v] = 1
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if dist[i][k] + dist[k][j] < dist[i][j]:
                    dist[i][j] = dist[i][k] + dist[k][j]
    return dist


def _oracle_cost(profile, u, b, c):
    g = profile.graph()
    if g.n > 1 and not g.is_connected():
        return math.inf
    dist = _oracle_distances(g)
    counts = 0.0

    def all_paths(s, t, d):
        if d == 0:
            return [[s]] if s == t else []
        out = []
        for w in g.adj[s]:
            if dist[w][t] == d - 1:
                out.extend([[s] + p for p in all_paths(w, t, d - 1)])
        return out

    for s_node in range(g.n):
        for t_node in range(s_node + 1, g.n):
            d = dist[s_node][t_node]
            if math.isinf(d) or d < 2:
                continue
            paths = all_paths(s_node, t_node, d)
            share = sum(1 for p in paths if u in p[1:-1]) / len(paths)
            counts += share
    return len(profile.opens[u]) - b * counts + c * sum(dist[u])


def _oracle_is_nash(profile, b, c):
    peers = {u: [v for v in range(profile.n) if v != u] for u in range(profile.n)}
    for u in range(profile.n):
        cur = _oracle_cost(profile, u, b, c)
        for k in range(len(peers[u]) + 1):
            for combo in itertools.combinations(peers[u], k):
                if frozenset(combo) == profile.opens[u]:
                    continue
                alt = list(profile.opens)
                alt[u] = frozenset(combo)
                if _oracle_cost(netgame.StrategyProfile(profile.n, tuple(alt)), u, b, c) < cur:
                    return False
    return True


def test_criterion_5_creation_game_equilibrium():
    with criterion(5, "star equilibrium in a star-optimal cell; n=4 brute-force agreement", 300.0):
        grid = [0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0]
        cells = netgame.social_optimum_map(5, grid, grid)
        star = netgame.topology_profile("star", 5)
        confirmed = False
        for cell in cells:
            if cell["winner"] != "star":
                continue
            flag, _ = netgame.is_nash(star, netgame.GameParams(cell["b"], cell["c"]))
            if flag:
                confirmed = True
                break
        assert confirmed, "no star-optimal cell with a star equilibrium"

        params = netgame.GameParams(0.75, 0.5)
        peers = [1, 2, 3]
        subsets = [frozenset(c) for k in range(4) for c in itertools.combinations(range(4), k)]
        checked = 0
        for opens in itertools.product(
            *[[s for s in subsets if u not in s] for u in range(4)]
        ):
            profile = netgame.StrategyProfile(4, tuple(opens))
            got, _ = netgame.is_nash(profile, params)
            want = _oracle_is_nash(profile, 0.75, 0.5)
            assert got == want, opens
            checked += 1
        assert checked == 4096


def test_criterion_6_routing_properties():
    with criterion(6, "amount sweep monotone, TCF modal at mid, conservation after 1e5 payments", 60.0):
        g = routing.small_world_channel_graph(50, 2, 0.15, 100.0, 1.0, 0.3, 0.3, seed=0)
        mean_cap = float(np.mean([c.capacity for c in g.channels.values()]))
        amounts = [0.01 * mean_cap, 0.1 * mean_cap, 0.5 * mean_cap]
        stats = routing.probe_experiment(g, 8, amounts, 400, 0.05, 5, seed=7)
        rates = [s.success_rate for s in stats]
        assert rates[0] >= rates[1] >= rates[2]
        assert rates[0] > rates[2]
        assert rates[0] - rates[2] >= 0.20
        mid = stats[1]
        assert mid.tcf_share > mid.unp_share and mid.tcf_share > mid.no_route_share

        sim = g.copy()
        rng = np.random.default_rng(1)
        nodes = sim.nodes
        successes = 0
        for _ in range(100_000):
            src, dst = rng.choice(len(nodes), 2, replace=False)
            out = routing.attempt_payment(
                sim, nodes[src], nodes[dst], float(rng.uniform(0.1, mean_cap)), 3
            )
            successes += out.success
        assert successes > 0
        for (u, v), ch in sim.channels.items():
            assert 0.0 <= ch.balance_lh <= ch.capacity
            assert sim.balance(u, v) + sim.balance(v, u) == pytest.approx(ch.capacity, rel=1e-12)


def test_criterion_7_macro_closed_forms():
    with criterion(7, "fisher identity, mortgage multiplier, debt slope, DiD anchor", 10.0):
        rows = macro.fisher_price_path(macro.FisherScenario(21e6, 8.0, 0.03, 0.005, 100))
        for row in rows:
            lhs = row["money"] * row["velocity"]
            rhs = row["price_level"] * row["output"]
            assert abs(lhs - rhs) / rhs < 1e-12

        burden = macro.real_payment_burden(macro.MortgageScenario(0.03, 30))
        assert burden[30][1] == pytest.approx(2.4936, abs=1e-3)

        path = macro.debt_ratio_path(macro.DeflationDebtScenario("recessionary", 10, 60.0))
        slopes = {round(b - a, 10) for (_, a), (_, b) in zip(path, path[1:])}
        assert slopes == {3.279}

        assert macro.diff_in_diff(0.0, 5.0, 0.0, 0.855) == pytest.approx(4.145, abs=1e-12)


def test_criterion_8_forensics():
    with criterion(8, "benford pass/fail, Hill on Pareto, suspicious volume fraction", 30.0):
        rng = np.random.default_rng(1)
        n = 100_000
        ts = tuple(float(i) for i in range(n))
        ones = (1.0,) * n

        log_uniform = 10 ** rng.uniform(0, 3, n)
        from csl.forensics import TradeTape

        assert benford_test(TradeTape(ts, ones, tuple(map(float, log_uniform)))).passed

        uniform = rng.uniform(1, 9.99, n)
        assert not benford_test(TradeTape(ts, ones, tuple(map(float, uniform)))).passed

        pareto = (1 - rng.random(n)) ** (-1 / 2.0)
        res = hill_tail_index(TradeTape(ts, ones, tuple(map(float, pareto))), k=1000)
        assert res.tail_exponent == pytest.approx(2.0, rel=0.10)

        svf = suspicious_volume_fraction(110_554_502.0, 1_030_878.0)
        assert svf == pytest.approx(0.9907, abs=1e-4)


def test_criterion_9_stochastic_reports_byte_identical(tmp_path):
    with criterion(9, "same seed, byte-identical report.json for every stochastic command", 240.0):
        runs = {
            "route": ["route", "--scenario", os.path.join(SCENARIOS, "route.json")],
            "security": ["security", "--scenario", os.path.join(SCENARIOS, "security.json")],
            "macro": ["macro", "--scenario", os.path.join(SCENARIOS, "macro.json")],
        }
        netgame_scenario = tmp_path / "netgame_det.json"
        netgame_scenario.write_text(
            json.dumps(
                {
                    "version": "1",
                    "seed": 5,
                    "netgame": {
                        "n": 5,
                        "b_grid": [0.0, 0.5],
                        "c_grid": [0.0, 0.5],
                        "ba": {"n": 400, "m": 2},
                        "null_model": {
                            "metric": "degree",
                            "swaps_factor": 1.0,
                            "samples": 20,
                            "ba": {"n": 120, "m": 2},
                        },
                    },
                }
            )
        )
        runs["netgame"] = ["netgame", "--scenario", str(netgame_scenario)]
        for name, argv in runs.items():
            out1 = str(tmp_path / f"{name}-1")
            out2 = str(tmp_path / f"{name}-2")
            assert cli.main(argv + ["--out", out1, "--format", "json"]) == 0
            assert cli.main(argv + ["--out", out2, "--format", "json"]) == 0
            b1 = open(os.path.join(out1, "report.json"), "rb").read()
            b2 = open(os.path.join(out2, "report.json"), "rb").read()
            assert b1 == b2, f"{name} report.json differs between identical runs"
