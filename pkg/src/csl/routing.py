"""Liquidity-aware payment routing simulator.

Routing sees channel capacities but never the per-direction balances (the
real network's information asymmetry), which is exactly what produces
temporary_channel_failure as the dominant error. Payments walk a hop-count
shortest path, prune the failing element on error and re-route up to a
retry cap; a successful payment shifts the amount along every hop
atomically.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import DataFormatError, DomainError

ERROR_KINDS = ("none", "temporary_channel_failure", "unknown_next_peer", "no_route")


@dataclass
class Channel:
    """Undirected channel; balance is stored for the low->high direction.

    The opposite direction is capacity - balance_lh by construction, so
    conservation is exact.
    """

    capacity: float
    balance_lh: float

    def __post_init__(self):
        if self.capacity <= 0:
            raise DomainError("capacity must be positive")
        if not -1e-9 <= self.balance_lh <= self.capacity + 1e-9:
            raise DomainError("balance outside [0, capacity]")
        self.balance_lh = min(max(self.balance_lh, 0.0), self.capacity)


class ChannelGraph:
    """Nodes with liveness flags plus balance-tracking channels."""

    def __init__(self):
        self.online: dict[int, bool] = {}
        self.channels: dict[tuple[int, int], Channel] = {}
        self.adj: dict[int, set[int]] = {}

    @property
    def nodes(self) -> list[int]:
        return sorted(self.online)

    def add_node(self, u: int, online: bool = True):
        self.online.setdefault(u, online)
        self.online[u] = online
        self.adj.setdefault(u, set())

    def add_channel(self, u: int, v: int, capacity: float, balance_uv: float | None = None):
        if u == v:
            raise DomainError("self-channel")
        key = (min(u, v), max(u, v))
        if key in self.channels:
            raise DomainError(f"duplicate channel {key}")
        if balance_uv is None:
            balance_uv = capacity / 2.0
        balance_lh = balance_uv if u < v else capacity - balance_uv
        for node in (u, v):
            if node not in self.online:
                self.add_node(node)
        self.channels[key] = Channel(capacity, balance_lh)
        self.adj[u].add(v)
        self.adj[v].add(u)

    def capacity(self, u: int, v: int) -> float:
        return self.channels[(min(u, v), max(u, v))].capacity

    def balance(self, u: int, v: int) -> float:
        """Directed balance available to push from u toward v."""
        ch = self.channels[(min(u, v), max(u, v))]
        return ch.balance_lh if u < v else ch.capacity - ch.balance_lh

    def shift(self, u: int, v: int, amount: float):
        """Move `amount` of directed balance from u->v."""
        ch = self.channels[(min(u, v), max(u, v))]
        if u < v:
            ch.balance_lh -= amount
        else:
            ch.balance_lh += amount
        if not -1e-9 <= ch.balance_lh <= ch.capacity + 1e-9:
            raise DomainError("shift exceeded channel balance")

    def copy(self) -> "ChannelGraph":
        g = ChannelGraph()
        g.online = dict(self.online)
        g.channels = {k: Channel(c.capacity, c.balance_lh) for k, c in self.channels.items()}
        g.adj = {u: set(a) for u, a in self.adj.items()}
        return g


def parse_channel_edgelist(text: str) -> ChannelGraph:
    """Lines of '<u> <v> <capacity> [balance_uv]'; balance defaults to half."""
    g = ChannelGraph()
    seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (3, 4):
            raise DataFormatError(f"channel list line {lineno}: {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
            capacity = float(parts[2])
            balance = float(parts[3]) if len(parts) == 4 else None
        except ValueError as exc:
            raise DataFormatError(f"channel list line {lineno}: {raw!r}") from exc
        g.add_channel(u, v, capacity, balance)
        seen = True
    if not seen:
        raise DataFormatError("channel list is empty")
    return g


@dataclass(frozen=True)
class PaymentOutcome:
    success: bool
    error: str
    attempts: int
    path: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.error not in ERROR_KINDS:
            raise DomainError(f"unknown error kind {self.error!r}")
        if self.success != (self.error == "none"):
            raise DomainError("success flag must match error == 'none'")


def route(
    graph: ChannelGraph,
    src: int,
    dst: int,
    amount: float,
    excluded_nodes: frozenset[int] = frozenset(),
    excluded_channels: frozenset[tuple[int, int]] = frozenset(),
) -> tuple[int, ...] | None:
    """Hop-count shortest path over channels with capacity >= amount.

    Balances are private and never consulted. Ties resolve to the
    lexicographically smallest path (BFS with ascending neighbor order).
    """
    if src == dst:
        raise DomainError("src and dst must differ")
    if src not in graph.online or dst not in graph.online:
        return None
    if src in excluded_nodes or dst in excluded_nodes:
        return None
    parent: dict[int, int] = {src: src}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for v in sorted(graph.adj[u]):
            if v in parent or v in excluded_nodes:
                continue
            key = (min(u, v), max(u, v))
            if key in excluded_channels:
                continue
            if graph.channels[key].capacity < amount:
                continue
            parent[v] = u
            if v == dst:
                path = [v]
                while path[-1] != src:
                    path.append(parent[path[-1]])
                return tuple(reversed(path))
            queue.append(v)
    return None


def attempt_payment(
    graph: ChannelGraph, src: int, dst: int, amount: float, max_retries: int = 25
) -> PaymentOutcome:
    """Route, walk, prune-and-reroute; mutates balances on success.

    Each hop fails with unknown_next_peer when the next node is offline, or
    temporary_channel_failure when the directed balance is short. The
    failing node/channel is removed from the candidate set and the payment
    re-routes, for at most max_retries retries. All hops are checked before
    any balance moves, so the shift is atomic.
    """
    if amount < 0:
        raise DomainError("amount must be nonnegative")
    excluded_nodes: set[int] = set()
    excluded_channels: set[tuple[int, int]] = set()
    attempts = 0
    last_error = "no_route"
    while attempts <= max_retries:
        path = route(
            graph,
            src,
            dst,
            amount,
            frozenset(excluded_nodes),
            frozenset(excluded_channels),
        )
        if path is None:
            return PaymentOutcome(False, last_error if attempts else "no_route", attempts)
        attempts += 1
        failure = None
        for u, v in zip(path, path[1:]):
            if not graph.online.get(v, False):
                failure = ("unknown_next_peer", ("node", v))
                break
            if graph.balance(u, v) < amount:
                failure = ("temporary_channel_failure", ("channel", (min(u, v), max(u, v))))
                break
        if failure is None:
            for u, v in zip(path, path[1:]):
                graph.shift(u, v, amount)
            return PaymentOutcome(True, "none", attempts, path)
        last_error, (kind, ident) = failure
        if kind == "node":
            excluded_nodes.add(ident)
        else:
            excluded_channels.add(ident)
    return PaymentOutcome(False, last_error, attempts)


@dataclass(frozen=True)
class AmountStats:
    """Aggregate outcome statistics for one probe amount."""

    amount: float
    payments: int
    success_rate: float
    tcf_share: float
    unp_share: float
    no_route_share: float
    nodes_reached: float
    mean_attempts: float


def probe_experiment(
    graph: ChannelGraph,
    n_sources: int,
    amounts,
    payments_per_amount: int,
    offline_prob: float,
    max_retries: int,
    seed: int,
) -> list[AmountStats]:
    """Seeded probing campaign over an amount sweep.

    Each amount level starts from a pristine copy of the input graph (so
    levels are comparable); within a level payments run sequentially and
    deplete balances. Node liveness is resampled per payment with
    offline_prob (the source itself always counts as online). Error shares
    are fractions of all payments, so they sum to 1 - success_rate.
    """
    if not amounts:
        raise DomainError("amounts must be nonempty")
    if not 0 <= offline_prob <= 1:
        raise DomainError("offline_prob must be in [0,1]")
    nodes = graph.nodes
    if n_sources < 1 or n_sources > len(nodes):
        raise DomainError("n_sources out of range")
    master = np.random.default_rng([seed, 0xC0FFEE])
    sources = [nodes[i] for i in master.choice(len(nodes), n_sources, replace=False)]
    results = []
    for ai, amount in enumerate(amounts):
        rng = np.random.default_rng([seed, ai])
        g = graph.copy()
        counts = {k: 0 for k in ERROR_KINDS}
        reached: set[int] = set()
        attempts_total = 0
        for _ in range(payments_per_amount):
            offline_draw = rng.random(len(nodes))
            for node, dr in zip(nodes, offline_draw):
                g.online[node] = bool(dr >= offline_prob)
            src = sources[int(rng.integers(0, len(sources)))]
            g.online[src] = True
            dst = src
            while dst == src:
                dst = nodes[int(rng.integers(0, len(nodes)))]
            outcome = attempt_payment(g, src, dst, float(amount), max_retries)
            counts[outcome.error] += 1
            attempts_total += outcome.attempts
            if outcome.success:
                reached.add(dst)
        n = payments_per_amount
        results.append(
            AmountStats(
                amount=float(amount),
                payments=n,
                success_rate=counts["none"] / n,
                tcf_share=counts["temporary_channel_failure"] / n,
                unp_share=counts["unknown_next_peer"] / n,
                no_route_share=counts["no_route"] / n,
                nodes_reached=len(reached) / len(nodes),
                mean_attempts=attempts_total / n,
            )
        )
    return results


def small_world_channel_graph(
    n: int,
    k: int,
    rewire_prob: float,
    mean_capacity: float,
    capacity_sigma: float,
    balance_beta_a: float,
    balance_beta_b: float,
    seed: int,
) -> ChannelGraph:
    """Watts-Strogatz-style calibration graph with skewed balance splits.

    Ring lattice with k neighbors per side, each lattice edge rewired with
    rewire_prob; capacities are lognormal around mean_capacity; the
    low->high balance share is Beta(a,b) (small a=b gives the depleted
    channels that drive the routing failure taxonomy).
    """
    if n < 4 or k < 1 or k >= n // 2:
        raise DomainError("need n >= 4 and 1 <= k < n/2")
    rng = np.random.default_rng(seed)
    edges: set[tuple[int, int]] = set()
    for u in range(n):
        for d in range(1, k + 1):
            v = (u + d) % n
            edges.add((min(u, v), max(u, v)))
    edge_list = sorted(edges)
    rewired: set[tuple[int, int]] = set()
    for (u, v) in edge_list:
        if rng.random() < rewire_prob:
            for _ in range(10):
                w = int(rng.integers(0, n))
                key = (min(u, w), max(u, w))
                if w != u and key not in edges and key not in rewired:
                    rewired.add(key)
                    break
            else:
                rewired.add((u, v))
        else:
            rewired.add((u, v))
    g = ChannelGraph()
    for node in range(n):
        g.add_node(node)
    mu = math.log(mean_capacity) - capacity_sigma**2 / 2.0
    for (u, v) in sorted(rewired):
        capacity = float(rng.lognormal(mu, capacity_sigma))
        share = float(rng.beta(balance_beta_a, balance_beta_b))
        g.add_channel(u, v, capacity, balance_uv=share * capacity)
    return g
