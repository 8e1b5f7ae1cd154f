"""Shortest-path routing baseline over the controlled network.

Requests are served one at a time on unit-weight shortest paths, with
control vertices allowed as intermediates.  A remote (non-adjacent,
cross-domain) pair always has a route of at most three hops: source to
its control, control clique, control to destination.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .graph import Graph, bits
from .qnet import ControlledInterQNet

__all__ = ["CqrPath", "route_cqr", "cqr_batch", "paths_to_csv"]


@dataclass(frozen=True)
class CqrPath:
    request: tuple[int, int]
    hops: int
    intermediates: tuple[int, ...]
    via_control: bool

    def __post_init__(self) -> None:
        assert self.hops == len(self.intermediates) + 1


def _bfs_dist(g: Graph, src: int) -> list[int]:
    dist = [-1] * g.vertex_count
    dist[src] = 0
    frontier = [src]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for u in frontier:
            for v in bits(g.neighbor_mask(u)):
                if dist[v] < 0:
                    dist[v] = d
                    nxt.append(v)
        frontier = nxt
    return dist


def route_cqr(cg: ControlledInterQNet, req: tuple[int, int]) -> CqrPath:
    """Unit-weight shortest path for one request, deterministic tie-break.

    Among shortest paths the lexicographically smallest vertex sequence is
    chosen (walk from the source, always taking the smallest neighbor that
    still shrinks the distance to the destination).
    """
    s, d = req
    g = cg.graph
    if s == d:
        raise ValueError("source equals destination")
    dist = _bfs_dist(g, d)
    if dist[s] < 0:
        raise ValueError("request endpoints are disconnected")
    path = [s]
    cur = s
    while cur != d:
        step = None
        for v in bits(g.neighbor_mask(cur)):
            if dist[v] == dist[cur] - 1:
                step = v
                break
        assert step is not None
        path.append(step)
        cur = step
    inter = tuple(path[1:-1])
    controls = set(cg.partition.control_nodes)
    return CqrPath(
        request=(s, d),
        hops=len(path) - 1,
        intermediates=inter,
        via_control=any(v in controls for v in inter),
    )


def cqr_batch(
    cg: ControlledInterQNet,
    requests: Iterable[tuple[int, int]],
) -> tuple[list[CqrPath], Optional[float], int, dict[int, int]]:
    """Route every request independently (time-multiplexed service).

    Returns the paths, the mean hop count (None for an empty batch), the
    total intermediate count, and the per-vertex qubit demand: two per
    swap at an intermediate, one per served endpoint.
    """
    paths = [route_cqr(cg, r) for r in requests]
    chi = sum(len(p.intermediates) for p in paths)
    load: dict[int, int] = {}
    for p in paths:
        for v in p.intermediates:
            load[v] = load.get(v, 0) + 2
        for v in p.request:
            load[v] = load.get(v, 0) + 1
    h_bar = sum(p.hops for p in paths) / len(paths) if paths else None
    return paths, h_bar, chi, load


def paths_to_csv(paths: Iterable[CqrPath]) -> str:
    lines = ["request,hops,intermediates,via_control"]
    for p in paths:
        inter = ";".join(str(v) for v in p.intermediates)
        lines.append(f"{p.request[0]}-{p.request[1]},{p.hops},{inter},{int(p.via_control)}")
    return "\n".join(lines) + "\n"
