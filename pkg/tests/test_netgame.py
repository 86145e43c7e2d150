import itertools
import math

import numpy as np
import pytest

from csl import netgame
from csl.errors import CapacityError, DataFormatError, DegenerateGraphError, DomainError


# ---------------------------------------------------------------- oracles


def oracle_distances(g: netgame.Graph):
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


def oracle_betweenness(g: netgame.Graph):
    """Enumerate every shortest path per pair; split credit across ties."""
    n = g.n
    dist = oracle_distances(g)
    counts = [0.0] * n

    def all_paths(s, t, d):
        if d == 0:
            return [[s]] if s == t else []
        out = []
        for w in g.adj[s]:
            if dist[w][t] == d - 1:
                out.extend([[s] + p for p in all_paths(w, t, d - 1)])
        return out

    for s in range(n):
        for t in range(s + 1, n):
            if math.isinf(dist[s][t]):
                continue
            paths = all_paths(s, t, dist[s][t])
            for p in paths:
                for interior in p[1:-1]:
                    counts[interior] += 1.0 / len(paths)
    return counts


def oracle_player_cost(profile, u, b, c):
    g = profile.graph()
    if g.n > 1 and not g.is_connected():
        return math.inf
    dist = oracle_distances(g)
    return (
        len(profile.opens[u])
        - b * oracle_betweenness(g)[u]
        + c * sum(dist[u])
    )


# ----------------------------------------------------------------- graphs


def test_graph_basics_and_edgelist_roundtrip():
    g = netgame.Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert g.is_connected()
    assert g.degree_sequence() == (1, 2, 2, 1)
    text = netgame.dump_edgelist(g)
    g2 = netgame.parse_edgelist(text)
    assert g2.edges() == g.edges()
    with pytest.raises(DomainError):
        g.add_edge(1, 1)
    with pytest.raises(DataFormatError):
        netgame.parse_edgelist("0 1 2\n")
    with pytest.raises(DataFormatError):
        netgame.parse_edgelist("")


def test_betweenness_against_bruteforce_small_graphs():
    rng = np.random.default_rng(17)
    for n in (4, 5, 6, 7, 8):
        for _ in range(6):
            g = netgame.Graph(n)
            for u in range(n):
                for v in range(u + 1, n):
                    if rng.random() < 0.45:
                        g.add_edge(u, v)
            got = netgame.betweenness_pair_counts(g)
            want = oracle_betweenness(g)
            assert got == pytest.approx(want, abs=1e-9)


def test_betweenness_sum_identity():
    # Sum over nodes of pair counts == sum over connected pairs of (d-1).
    rng = np.random.default_rng(3)
    for _ in range(10):
        g = netgame.Graph(7)
        for u in range(7):
            for v in range(u + 1, 7):
                if rng.random() < 0.5:
                    g.add_edge(u, v)
        dist = oracle_distances(g)
        expected = sum(
            dist[s][t] - 1
            for s in range(7)
            for t in range(s + 1, 7)
            if not math.isinf(dist[s][t]) and dist[s][t] >= 1
        )
        assert sum(netgame.betweenness_pair_counts(g)) == pytest.approx(expected)


# ------------------------------------------------------------------- game


def test_player_cost_star_n4():
    star = netgame.topology_profile("star", 4)
    params = netgame.GameParams(1.0, 1.0)
    assert netgame.player_cost(star, 0, params) == pytest.approx(3.0)  # 3 - 3 + 3
    assert netgame.player_cost(star, 1, params) == pytest.approx(5.0)  # 0 - 0 + 5


def test_player_cost_zero_weights_counts_channels():
    rng = np.random.default_rng(1)
    for _ in range(10):
        opens = [set() for _ in range(5)]
        for u in range(5):
            for v in range(5):
                if u != v and rng.random() < 0.5:
                    opens[u].add(v)
        profile = netgame.StrategyProfile.from_lists(opens)
        if not profile.graph().is_connected():
            continue
        for u in range(5):
            cost = netgame.player_cost(profile, u, netgame.GameParams(0.0, 0.0))
            assert cost == len(opens[u])


def test_player_cost_disconnected_and_singleton():
    empty = netgame.StrategyProfile.from_lists([[], []])
    assert netgame.player_cost(empty, 0, netgame.GameParams(0, 0)) == math.inf
    single = netgame.StrategyProfile.from_lists([[]])
    assert netgame.player_cost(single, 0, netgame.GameParams(0, 0)) == 0.0


def test_is_nash_two_node_channel():
    profile = netgame.StrategyProfile.from_lists([[1], []])
    flag, dev = netgame.is_nash(profile, netgame.GameParams(0.0, 1.0))
    assert flag and dev is None


def test_is_nash_star5_in_star_optimal_cell():
    star = netgame.topology_profile("star", 5)
    flag, dev = netgame.is_nash(star, netgame.GameParams(0.5, 0.5))
    assert flag, dev


def test_is_nash_complete_graph_drops_redundant_edges():
    complete = netgame.topology_profile("complete", 4)
    flag, dev = netgame.is_nash(complete, netgame.GameParams(0.0, 0.5))
    assert not flag
    assert dev is not None and dev["new_cost"] < dev["old_cost"]


def test_is_nash_matches_bruteforce_on_sampled_profiles():
    rng = np.random.default_rng(8)
    params = netgame.GameParams(0.75, 0.5)
    peers = {u: [v for v in range(4) if v != u] for u in range(4)}
    for _ in range(60):
        opens = [
            frozenset(v for v in peers[u] if rng.random() < 0.4) for u in range(4)
        ]
        profile = netgame.StrategyProfile(4, tuple(opens))
        got, _ = netgame.is_nash(profile, params)
        want = True
        for u in range(4):
            cur = oracle_player_cost(profile, u, 0.75, 0.5)
            for k in range(len(peers[u]) + 1):
                for combo in itertools.combinations(peers[u], k):
                    alt = list(profile.opens)
                    alt[u] = frozenset(combo)
                    cost = oracle_player_cost(netgame.StrategyProfile(4, tuple(alt)), u, 0.75, 0.5)
                    if cost < cur:
                        want = False
        assert got == want


def test_is_nash_capacity():
    profile = netgame.topology_profile("star", 11)
    with pytest.raises(CapacityError):
        netgame.is_nash(profile, netgame.GameParams(0, 0))


def test_social_optimum_edge_cases():
    cells = netgame.social_optimum_map(5, [0.0], [0.0])
    assert cells[0]["winner"] == "star"  # tie with path broken by order
    cells = netgame.social_optimum_map(5, [0.0], [10.0])
    assert cells[0]["winner"] == "complete"


def test_social_optimum_star_region_exists_n6():
    grid = [0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0]
    cells = netgame.social_optimum_map(6, grid, grid)
    star_cells = [c for c in cells if c["winner"] == "star" and (c["b"] > 0 or c["c"] > 0)]
    assert star_cells
    again = netgame.social_optimum_map(6, grid, grid)
    assert cells == again


def test_preferential_attachment_construction():
    g = netgame.preferential_attachment(4, 3, seed=0)
    assert len(g.edges()) == 6  # complete seed graph only
    n, m = 200, 2
    g = netgame.preferential_attachment(n, m, seed=1)
    assert len(g.edges()) == m * (m + 1) // 2 + (n - m - 1) * m
    assert g.is_connected()
    with pytest.raises(DomainError):
        netgame.preferential_attachment(3, 3, seed=0)


def test_preferential_attachment_heavy_tail():
    g = netgame.preferential_attachment(2000, 2, seed=42)
    degrees = g.degree_sequence()
    assert max(degrees) > 10 * float(np.median(degrees))


def test_gini_values():
    assert netgame.gini([5, 5, 5, 5]) == 0.0
    assert netgame.gini([0, 0, 0, 0, 1]) == pytest.approx(4 / 5)
    assert netgame.gini([1, 2, 3, 4]) == pytest.approx(0.25)
    assert netgame.gini([0.0, 0.0]) == 0.0
    with pytest.raises(DomainError):
        netgame.gini([-1, 2])


def test_gini_scale_invariance_and_bounds():
    rng = np.random.default_rng(12)
    for _ in range(25):
        x = rng.exponential(2.0, rng.integers(2, 40))
        g = netgame.gini(x)
        assert 0.0 <= g <= (len(x) - 1) / len(x) + 1e-12
        assert netgame.gini(x * 13.7) == pytest.approx(g, rel=1e-12)
        # direct double-sum oracle
        n = len(x)
        oracle = np.abs(x[:, None] - x[None, :]).sum() / (2 * n * n * x.mean())
        assert g == pytest.approx(oracle, rel=1e-12)


def test_null_model_regular_ring_degree():
    g = netgame.Graph(8, [(i, (i + 1) % 8) for i in range(8)])
    res = netgame.null_model_comparison(g, "degree", 2.0, 20, seed=0)
    assert res["observed_gini"] == 0.0
    assert res["expected_gini"] == 0.0
    assert res["zscore"] == 0.0


def test_null_model_star_has_no_alternative():
    g = netgame.Graph(6, [(0, i) for i in range(1, 6)])
    res = netgame.null_model_comparison(g, "betweenness", 2.0, 20, seed=0)
    assert res["expected_gini"] == pytest.approx(res["observed_gini"])
    assert res["zscore"] == 0.0
    assert res["mean_swaps"] == 0.0


def test_null_model_ba_graph_reproducible():
    g = netgame.preferential_attachment(300, 2, seed=7)
    res1 = netgame.null_model_comparison(g, "betweenness", 2.0, 20, seed=11)
    res2 = netgame.null_model_comparison(g, "betweenness", 2.0, 20, seed=11)
    assert res1 == res2
    assert res1["zscore"] is not None and math.isfinite(res1["zscore"])
    assert res1["mean_swaps"] > 0


def test_null_model_rejects_degenerate():
    with pytest.raises(DegenerateGraphError):
        netgame.null_model_comparison(netgame.Graph(2, [(0, 1)]), "degree", 1.0, 20, 0)
    with pytest.raises(DegenerateGraphError):
        netgame.null_model_comparison(netgame.Graph(4, [(0, 1), (2, 3)]), "degree", 1.0, 20, 0)


def test_centrality_kinds():
    g = netgame.Graph(4, [(0, 1), (0, 2), (0, 3)])
    assert netgame.centrality(g, "degree") == [3.0, 1.0, 1.0, 1.0]
    bc = netgame.centrality(g, "betweenness")
    assert bc[0] == pytest.approx(3.0)
    close = netgame.centrality(g, "closeness")
    assert close[0] == pytest.approx(1.0)  # (n-1)/total distance = 3/3
    eig = netgame.centrality(g, "eigenvector")
    assert eig[0] > eig[1] > 0
    with pytest.raises(DomainError):
        netgame.centrality(g, "pagerank")
