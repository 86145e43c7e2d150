"""Payment-channel network creation game and centralization statistics.

The per-node cost is  |s_u| - b*betweenness_u + c*closeness_u  where
betweenness counts unordered shortest-path pairs through a node (fractional
split across ties) and closeness is the total graph distance from the node
(smaller is better, hence the + sign). Disconnected outcomes carry infinite
cost. Alongside the game: a preferential-attachment generator, Gini
concentration, and a degree-preserving null model.
"""
from __future__ import annotations

from dataclasses import dataclass
from collections import deque

import math

import numpy as np

from .errors import (
    CapacityError,
    DataFormatError,
    DegenerateGraphError,
    DomainError,
)

NASH_MAX_NODES = 10
MAP_MAX_NODES = 12
TOPOLOGY_ORDER = ("star", "path", "cycle", "complete")


class Graph:
    """Simple undirected graph on nodes 0..n-1."""

    def __init__(self, n: int, edges=()):
        if n < 1:
            raise DomainError("graph needs at least one node")
        self.n = n
        self.adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            self.add_edge(u, v)

    def add_edge(self, u: int, v: int):
        if u == v:
            raise DomainError(f"self-loop at node {u}")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise DomainError(f"edge ({u},{v}) out of range")
        self.adj[u].add(v)
        self.adj[v].add(u)

    def remove_edge(self, u: int, v: int):
        self.adj[u].discard(v)
        self.adj[v].discard(u)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adj)

    def copy(self) -> "Graph":
        g = Graph(self.n)
        g.adj = [set(a) for a in self.adj]
        return g

    def is_connected(self) -> bool:
        if self.n == 1:
            return True
        seen = {0}
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for v in self.adj[u]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return len(seen) == self.n

    def bfs_distances(self, src: int) -> list[float]:
        dist = [math.inf] * self.n
        dist[src] = 0
        queue = deque([src])
        while queue:
            u = queue.popleft()
            for v in self.adj[u]:
                if dist[v] == math.inf:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        return dist


def parse_edgelist(text: str, n: int | None = None) -> Graph:
    """Edge-list text, one '<u> <v>' pair per line, 0-indexed nodes."""
    edges = []
    max_node = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise DataFormatError(f"edge list line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise DataFormatError(f"edge list line {lineno}: {raw!r}") from exc
        edges.append((u, v))
        max_node = max(max_node, u, v)
    if max_node < 0:
        raise DataFormatError("edge list is empty")
    return Graph(n if n is not None else max_node + 1, edges)


def dump_edgelist(g: Graph) -> str:
    return "\n".join(f"{u} {v}" for u, v in g.edges()) + "\n"


def betweenness_pair_counts(g: Graph) -> list[float]:
    """Unordered shortest-path pair counts through each node (Brandes).

    Ties are split fractionally across equal-length shortest paths;
    endpoints do not count toward their own paths.
    """
    bc = [0.0] * g.n
    for s in range(g.n):
        stack: list[int] = []
        preds: list[list[int]] = [[] for _ in range(g.n)]
        sigma = [0.0] * g.n
        sigma[s] = 1.0
        dist = [-1] * g.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in g.adj[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = [0.0] * g.n
        while stack:
            w = stack.pop()
            for v in preds[w]:
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != s:
                bc[w] += delta[w]
    return [b / 2.0 for b in bc]


def distance_sums(g: Graph) -> list[float]:
    """Total distance from each node to all others; inf when disconnected."""
    return [sum(g.bfs_distances(u)) for u in range(g.n)]


def centrality(g: Graph, kind: str) -> list[float]:
    """Per-node centrality vector for concentration statistics.

    kinds: degree, betweenness (pair counts), closeness ((n-1)/total
    distance), eigenvector (power iteration).
    """
    if kind == "degree":
        return [float(d) for d in g.degree_sequence()]
    if kind == "betweenness":
        return betweenness_pair_counts(g)
    if kind == "closeness":
        out = []
        for u in range(g.n):
            total = sum(g.bfs_distances(u))
            out.append((g.n - 1) / total if 0 < total < math.inf else 0.0)
        return out
    if kind == "eigenvector":
        x = np.ones(g.n)
        for _ in range(1000):
            nxt = np.zeros(g.n)
            for u in range(g.n):
                for v in g.adj[u]:
                    nxt[u] += x[v]
            norm = np.linalg.norm(nxt)
            if norm == 0:
                return [0.0] * g.n
            nxt /= norm
            if np.abs(nxt - x).max() < 1e-12:
                x = nxt
                break
            x = nxt
        return [float(v) for v in x]
    raise DomainError(f"unknown centrality kind {kind!r}")


@dataclass(frozen=True)
class GameParams:
    """Weights on routing revenue (b) and payment distance (c)."""

    b: float
    c: float

    def __post_init__(self):
        if not (math.isfinite(self.b) and math.isfinite(self.c)):
            raise DomainError("weights must be finite")
        if self.b < 0 or self.c < 0:
            raise DomainError("weights must be nonnegative")


@dataclass(frozen=True)
class StrategyProfile:
    """Per-node sets of channels opened by that node."""

    n: int
    opens: tuple[frozenset[int], ...]

    def __post_init__(self):
        if len(self.opens) != self.n:
            raise DomainError("opens must have one entry per node")
        for u, targets in enumerate(self.opens):
            for v in targets:
                if v == u:
                    raise DomainError(f"node {u} opens a self-channel")
                if not 0 <= v < self.n:
                    raise DomainError(f"node {u} opens channel to missing node {v}")

    @classmethod
    def from_lists(cls, opens) -> "StrategyProfile":
        return cls(len(opens), tuple(frozenset(s) for s in opens))

    def graph(self) -> Graph:
        g = Graph(self.n)
        for u, targets in enumerate(self.opens):
            for v in targets:
                g.add_edge(u, v)
        return g


def player_cost(profile: StrategyProfile, u: int, params: GameParams) -> float:
    """|s_u| - b*betweenness_u + c*closeness_u; +inf if the graph is disconnected.

    A duplicate open (both directions of one channel) still costs each
    opener one unit.
    """
    if not 0 <= u < profile.n:
        raise DomainError(f"no node {u}")
    g = profile.graph()
    if not g.is_connected():
        return math.inf
    own = len(profile.opens[u])
    bc = betweenness_pair_counts(g)[u]
    closeness = sum(g.bfs_distances(u))
    return own - params.b * bc + params.c * closeness


def total_cost(profile: StrategyProfile, params: GameParams) -> float:
    g = profile.graph()
    if not g.is_connected():
        return math.inf
    bc = betweenness_pair_counts(g)
    total = 0.0
    for u in range(profile.n):
        total += (
            len(profile.opens[u])
            - params.b * bc[u]
            + params.c * sum(g.bfs_distances(u))
        )
    return total


def _subsets(peers: tuple[int, ...]):
    for mask in range(1 << len(peers)):
        yield frozenset(peers[i] for i in range(len(peers)) if mask >> i & 1)


def is_nash(
    profile: StrategyProfile, params: GameParams
) -> tuple[bool, dict | None]:
    """Exhaustive unilateral-deviation check over all open-set replacements.

    Returns (flag, first profitable deviation or None). Capacity-bounded at
    n <= 10 (the search is 2^(n-1) subsets per node).
    """
    if profile.n > NASH_MAX_NODES:
        raise CapacityError(f"exhaustive deviation search capped at n={NASH_MAX_NODES}")
    for u in range(profile.n):
        current = player_cost(profile, u, params)
        peers = tuple(v for v in range(profile.n) if v != u)
        for candidate in _subsets(peers):
            if candidate == profile.opens[u]:
                continue
            opens = list(profile.opens)
            opens[u] = candidate
            deviated = StrategyProfile(profile.n, tuple(opens))
            cost = player_cost(deviated, u, params)
            if cost < current:
                return False, {
                    "node": u,
                    "new_opens": sorted(candidate),
                    "old_cost": current,
                    "new_cost": cost,
                }
    return True, None


def topology_profile(name: str, n: int) -> StrategyProfile:
    """Canonical strategy profiles for the candidate topologies."""
    if n < 3:
        raise DomainError("candidate topologies need n >= 3")
    opens: list[set[int]] = [set() for _ in range(n)]
    if name == "star":
        opens[0] = set(range(1, n))
    elif name == "path":
        for i in range(n - 1):
            opens[i].add(i + 1)
    elif name == "cycle":
        for i in range(n):
            opens[i].add((i + 1) % n)
    elif name == "complete":
        for i in range(n):
            opens[i] = set(range(i + 1, n))
    else:
        raise DomainError(f"unknown topology {name!r}")
    return StrategyProfile.from_lists(opens)


def social_optimum_map(
    n: int,
    b_grid,
    c_grid,
    candidates: tuple[str, ...] = TOPOLOGY_ORDER,
) -> list[dict]:
    """Winning candidate topology (minimal total cost) per (b,c) cell.

    Ties go to the earlier candidate in star > path > cycle > complete
    order so golden outputs are stable.
    """
    if n > MAP_MAX_NODES:
        raise CapacityError(f"social optimum map capped at n={MAP_MAX_NODES}")
    for cand in candidates:
        if cand not in TOPOLOGY_ORDER:
            raise DomainError(f"unknown candidate {cand!r}")
    ordered = [t for t in TOPOLOGY_ORDER if t in candidates]
    profiles = {name: topology_profile(name, n) for name in ordered}
    cells = []
    for b in b_grid:
        for c in c_grid:
            params = GameParams(float(b), float(c))
            costs = {name: total_cost(profiles[name], params) for name in ordered}
            winner = ordered[0]
            for name in ordered[1:]:
                if costs[name] < costs[winner]:
                    winner = name
            cells.append({"b": float(b), "c": float(c), "winner": winner, "costs": costs})
    return cells


def preferential_attachment(n: int, m: int, seed: int) -> Graph:
    """Degree-proportional growth from a complete seed graph on m+1 nodes.

    Each new node attaches m edges to distinct existing nodes sampled
    without replacement with probability proportional to current degree.
    """
    if not n > m >= 1:
        raise DomainError("need n > m >= 1")
    rng = np.random.default_rng(seed)
    g = Graph(n)
    for u in range(m + 1):
        for v in range(u + 1, m + 1):
            g.add_edge(u, v)
    degrees = np.zeros(n)
    degrees[: m + 1] = m
    for new in range(m + 1, n):
        weights = degrees[:new].copy()
        targets = []
        for _ in range(m):
            p = weights / weights.sum()
            pick = int(rng.choice(new, p=p))
            targets.append(pick)
            weights[pick] = 0.0
        for t in targets:
            g.add_edge(new, t)
            degrees[t] += 1
        degrees[new] = m
    return g


def gini(values) -> float:
    """Mean absolute difference /(2*mean): 0 = uniform, (n-1)/n = one-hot."""
    x = np.asarray(list(values), dtype=float)
    if x.size == 0:
        raise DomainError("empty value vector")
    if np.any(x < 0):
        raise DomainError("gini requires nonnegative values")
    total = x.sum()
    if total == 0:
        return 0.0
    xs = np.sort(x)
    n = x.size
    # Sorted identity for sum_i sum_j |x_i - x_j|.
    weighted = np.sum((2 * np.arange(1, n + 1) - n - 1) * xs)
    return float(weighted / (n * total))


def double_edge_swap(
    g: Graph, rng: np.random.Generator, target_swaps: int, max_attempts: int
) -> int:
    """In-place degree-preserving swaps; rejects disconnecting swaps."""
    done = 0
    attempts = 0
    edges = g.edges()
    while done < target_swaps and attempts < max_attempts:
        attempts += 1
        i, j = rng.integers(0, len(edges), size=2)
        if i == j:
            continue
        u, v = edges[i]
        x, y = edges[j]
        if rng.random() < 0.5:
            x, y = y, x
        # proposed replacements: (u,x), (v,y)
        if len({u, v, x, y}) < 4:
            continue
        if g.has_edge(u, x) or g.has_edge(v, y):
            continue
        g.remove_edge(u, v)
        g.remove_edge(x, y)
        g.add_edge(u, x)
        g.add_edge(v, y)
        if not g.is_connected():
            g.remove_edge(u, x)
            g.remove_edge(v, y)
            g.add_edge(u, v)
            g.add_edge(x, y)
            continue
        edges[i] = (min(u, x), max(u, x))
        edges[j] = (min(v, y), max(v, y))
        done += 1
    return done


def null_model_comparison(
    g: Graph,
    metric: str = "betweenness",
    swaps_factor: float = 2.0,
    samples: int = 20,
    seed: int = 0,
) -> dict:
    """Observed centrality Gini vs a degree-preserving random null model.

    Each sample applies swaps_factor*|E| successful double-edge swaps
    (connectivity-preserving, bounded retries) to a fresh copy, driven by an
    independent substream (seed, sample index). Returns observed/expected
    Gini, the sample standard deviation and the z-score (0 when the null
    distribution is degenerate at the observed value).
    """
    if samples < 20:
        raise DomainError("need at least 20 null-model samples")
    if not g.is_connected():
        raise DegenerateGraphError("null model needs a connected graph")
    edges = g.edges()
    if g.n < 4 or len(edges) < 2:
        raise DegenerateGraphError("graph too small for degree-preserving swaps")
    observed = gini(centrality(g, metric))
    target = max(1, round(swaps_factor * len(edges)))
    degrees = g.degree_sequence()
    ginis = []
    swap_counts = []
    for i in range(samples):
        rng = np.random.default_rng([seed, i])
        sample = g.copy()
        swaps = double_edge_swap(sample, rng, target, max_attempts=20 * target)
        if sample.degree_sequence() != degrees:
            raise AssertionError("degree sequence changed during randomization")
        swap_counts.append(swaps)
        ginis.append(gini(centrality(sample, metric)))
    expected = float(np.mean(ginis))
    sd = float(np.std(ginis, ddof=1))
    if sd == 0.0:
        z = 0.0 if abs(observed - expected) < 1e-12 else math.copysign(math.inf, observed - expected)
    else:
        z = (observed - expected) / sd
    return {
        "metric": metric,
        "observed_gini": observed,
        "expected_gini": expected,
        "std_gini": sd,
        "zscore": z,
        "samples": samples,
        "mean_swaps": float(np.mean(swap_counts)),
    }
