"""Synthetic inter-domain network generator and request sampler.

Connectivity first, density second: a uniformly random spanning tree over
the cross-domain candidate pairs is laid down (Wilson's loop-erased
random walk on the complete multipartite graph), then every remaining
cross-domain pair is added independently with probability p.  Everything
is deterministic given the seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .graph import Graph
from .pairs import RequestSet, canonical_edge
from .qnet import InterQNet, QNetPartition

__all__ = ["GenConfig", "InsufficientPairsError", "generate_inter_qnet", "sample_requests"]


class InsufficientPairsError(ValueError):
    """Fewer eligible request pairs exist than were asked for."""


@dataclass(frozen=True)
class GenConfig:
    k: int
    sizes: tuple[int, ...]
    p: float
    rng_seed: int

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError("need at least two QNets")
        if len(self.sizes) != self.k:
            raise ValueError("one size per QNet required")
        if any(s < 1 for s in self.sizes):
            raise ValueError("QNet sizes must be positive")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("edge probability must lie in [0,1]")

    @property
    def node_count(self) -> int:
        return sum(self.sizes)


def _membership(cfg: GenConfig) -> tuple[int, ...]:
    out = []
    for a, s in enumerate(cfg.sizes, start=1):
        out.extend([a] * s)
    return tuple(out)


def _uniform_spanning_tree(
    membership: Sequence[int], rng: np.random.Generator
) -> list[tuple[int, int]]:
    """Wilson's algorithm on the complete multipartite candidate graph."""
    n = len(membership)
    in_tree = [False] * n
    nxt: list[Optional[int]] = [None] * n
    root = int(rng.integers(n))
    in_tree[root] = True
    for start in range(n):
        if in_tree[start]:
            continue
        u = start
        while not in_tree[u]:
            # uniform neighbor = uniform vertex of a different QNet
            v = int(rng.integers(n))
            while membership[v] == membership[u]:
                v = int(rng.integers(n))
            nxt[u] = v
            u = v
        u = start
        while not in_tree[u]:  # loop-erased path joins the tree
            in_tree[u] = True
            u = nxt[u]  # type: ignore[assignment]
    edges = []
    for u in range(n):
        if u == root:
            continue
        parent = nxt[u]
        assert parent is not None
        edges.append((u, parent))
    return edges


def generate_inter_qnet(cfg: GenConfig) -> InterQNet:
    """Connected cross-domain graph: random spanning tree plus Bernoulli(p)
    on every remaining cross-domain pair, in canonical pair order."""
    rng = np.random.default_rng(cfg.rng_seed)
    membership = _membership(cfg)
    n = cfg.node_count
    tree = {canonical_edge(u, v) for u, v in _uniform_spanning_tree(membership, rng)}
    candidates = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if membership[u] != membership[v] and (u, v) not in tree
    ]
    draws = rng.random(len(candidates))
    edges = sorted(tree) + [e for e, x in zip(candidates, draws) if x < cfg.p]
    iq = InterQNet(Graph(n, edges), QNetPartition(cfg.k, membership))
    assert iq.connected, "spanning-tree construction must yield a connected graph"
    return iq


def sample_requests(iq: InterQNet, count: int, rng_seed: int) -> RequestSet:
    """Uniform sample, without replacement, of cross-domain non-adjacent pairs."""
    if count < 0:
        raise ValueError("count must be non-negative")
    part = iq.partition
    n = part.data_count
    pool = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if part.membership[u] != part.membership[v] and not iq.graph.has_edge(u, v)
    ]
    if count > len(pool):
        raise InsufficientPairsError(
            f"asked for {count} requests, only {len(pool)} eligible pairs exist"
        )
    rng = np.random.default_rng(rng_seed)
    chosen = rng.choice(len(pool), size=count, replace=False)
    return RequestSet.from_pairs([pool[i] for i in chosen], iq)
