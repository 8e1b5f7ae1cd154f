"""Parallel-pair compatibility and the Dynamic Parallel Pairs scheduler.

Two existing edges can host simultaneous EPR extractions when their
endpoint sets are disjoint and no endpoint of one lies in a neighborhood
of the other (checked in both directions).  The scheduler partitions a
batch of remote requests into groups that are pairwise compatible, working
on the cross-domain complement of the controlled network.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .graph import Graph
from .qnet import ControlledInterQNet, InterQNet, complement_inter_qnet

__all__ = [
    "Edge",
    "RequestError",
    "SameQNetRequest",
    "AdjacentRequest",
    "RequestNotInComplement",
    "ParallelPairViolation",
    "RequestSet",
    "CandidateList",
    "ParallelPairTable",
    "canonical_edge",
    "compatible",
    "parallel_pair_candidates",
    "check_parallel_pairable",
    "dynamic_parallel_pairs",
    "min_partition_oracle",
    "SEED_POLICIES",
    "requests_to_text",
    "requests_from_text",
    "table_to_text",
]

Edge = tuple[int, int]


def canonical_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class RequestError(ValueError):
    """A request pair violates the intake contract."""


class SameQNetRequest(RequestError):
    pass


class AdjacentRequest(RequestError):
    pass


class RequestNotInComplement(RequestError):
    pass


class ParallelPairViolation(RuntimeError):
    """A group failed the conflict-free extraction contract."""

    def __init__(
        self,
        message: str,
        extra_edges: tuple[Edge, ...] = (),
        missing_edges: tuple[Edge, ...] = (),
    ):
        super().__init__(message)
        self.extra_edges = extra_edges
        self.missing_edges = missing_edges


@dataclass(frozen=True)
class RequestSet:
    """Batch of source-destination pairs, all inter-domain and non-adjacent
    in the original network."""

    requests: tuple[Edge, ...]
    context: Optional[InterQNet] = None

    @classmethod
    def from_pairs(cls, pairs: Iterable[Edge], iq: InterQNet) -> "RequestSet":
        part = iq.partition
        seen: list[Edge] = []
        for s, d in pairs:
            e = canonical_edge(s, d)
            if part.membership[e[0]] == part.membership[e[1]]:
                raise SameQNetRequest(f"request {e} stays inside one QNet")
            if iq.graph.has_edge(*e):
                raise AdjacentRequest(f"request {e} is already adjacent")
            if e in seen:
                continue
            seen.append(e)
        return cls(tuple(seen), iq)

    def __len__(self) -> int:
        return len(self.requests)

    def __iter__(self):
        return iter(self.requests)


@dataclass(frozen=True)
class CandidateList:
    """Per-request sets of compatible edges, over the whole edge set."""

    entries: Mapping[Edge, frozenset[Edge]]

    def __getitem__(self, e: Edge) -> frozenset[Edge]:
        return self.entries[e]


@dataclass(frozen=True)
class ParallelPairTable:
    groups: tuple[frozenset[Edge], ...]

    @property
    def rho(self) -> int:
        return len(self.groups)

    def all_requests(self) -> set[Edge]:
        out: set[Edge] = set()
        for g in self.groups:
            out |= g
        return out


# -- pairwise predicate --------------------------------------------------------


def compatible(g: Graph, e1: Edge, e2: Edge) -> bool:
    """Disjoint endpoints and mutual neighborhood exclusion for two edges."""
    a, b = e1
    c, d = e2
    if not g.has_edge(a, b):
        raise ValueError(f"{e1} is not an edge")
    if not g.has_edge(c, d):
        raise ValueError(f"{e2} is not an edge")
    m1 = (1 << a) | (1 << b)
    m2 = (1 << c) | (1 << d)
    if m1 & m2:
        return False
    n1 = g.neighbor_mask(a) | g.neighbor_mask(b)
    n2 = g.neighbor_mask(c) | g.neighbor_mask(d)
    return not (m2 & n1) and not (m1 & n2)


def _edge_masks(g: Graph, e: Edge) -> tuple[int, int]:
    a, b = e
    return (1 << a) | (1 << b), g.neighbor_mask(a) | g.neighbor_mask(b)


def parallel_pair_candidates(g: Graph, targets: Iterable[Edge]) -> CandidateList:
    """For each target edge, every other edge of ``g`` compatible with it.

    One pass over the full edge set per target.
    """
    all_edges = [canonical_edge(u, v) for u, v in g.edges()]
    masks = {e: _edge_masks(g, e) for e in all_edges}
    scan = [(e, masks[e][0]) for e in all_edges]
    entries: dict[Edge, frozenset[Edge]] = {}
    for t in targets:
        t = canonical_edge(*t)
        if t not in masks:
            raise ValueError(f"target {t} is not an edge")
        em, nm = masks[t]
        reach = em | nm
        entries[t] = frozenset(
            e for e, em2 in scan if not (reach & em2) and e != t
        )
    return CandidateList(entries)


def check_parallel_pairable(g: Graph, edges: Iterable[Edge]) -> bool:
    """True iff the given edges are pairwise compatible.

    Follows the candidate-complement formulation: collect, per edge, the
    incompatible remainder of the full edge set, and require the input to
    avoid the union of those remainders.
    """
    edge_set = {canonical_edge(u, v) for u, v in edges}
    if len(edge_set) <= 1:
        return True
    cl = parallel_pair_candidates(g, edge_set)
    all_edges = set(canonical_edge(u, v) for u, v in g.edges())
    conflict: set[Edge] = set()
    for e in edge_set:
        conflict |= all_edges - cl[e] - {e}
    return not (edge_set & conflict)


# -- seed policies -------------------------------------------------------------


def _policy_greedy_max(pool: Sequence[Edge], cand_in_r: Mapping[Edge, set[Edge]]) -> Edge:
    return max(sorted(pool), key=lambda e: len(cand_in_r[e]))


def _policy_lowest_id(pool: Sequence[Edge], cand_in_r: Mapping[Edge, set[Edge]]) -> Edge:
    return min(pool)


SEED_POLICIES: dict[str, Callable[[Sequence[Edge], Mapping[Edge, set[Edge]]], Edge]] = {
    "greedy_max": _policy_greedy_max,
    "lowest_id": _policy_lowest_id,
}


def dynamic_parallel_pairs(
    cg: ControlledInterQNet,
    r: "RequestSet | Iterable[Edge]",
    seed_policy: str = "greedy_max",
) -> ParallelPairTable:
    """Partition the request batch into parallel-pairable groups.

    The batch is interpreted on the cross-domain complement of the
    controlled network.  If the whole batch is already pairwise
    compatible it forms a single group; otherwise groups grow greedily
    from a seed, intersecting the shared candidate set after each
    addition.  Candidates are recomputed from scratch at every group
    start, keeping the quadratic cost profile of the scheduler.
    """
    pick = SEED_POLICIES[seed_policy] if isinstance(seed_policy, str) else seed_policy
    comp = complement_inter_qnet(cg.data_network())
    cgraph = comp.graph
    remaining: list[Edge] = [canonical_edge(*e) for e in r]
    for e in remaining:
        if not cgraph.has_edge(*e):
            raise RequestNotInComplement(f"request {e} is not a complement edge")
    if len(set(remaining)) != len(remaining):
        raise RequestError("duplicate requests")

    if check_parallel_pairable(cgraph, remaining):
        table = ParallelPairTable((frozenset(remaining),) if remaining else ())
        _assert_table_valid(cgraph, table, remaining)
        return table

    groups: list[frozenset[Edge]] = []
    original = list(remaining)
    while remaining:
        cl = parallel_pair_candidates(cgraph, remaining)
        rset = set(remaining)
        cand_in_r = {e: set(cl[e]) & rset for e in remaining}
        seed = pick(remaining, cand_in_r)
        group = {seed}
        remaining.remove(seed)
        shared = cand_in_r[seed] & set(remaining)
        while shared:
            nxt = pick(sorted(shared), cand_in_r)
            group.add(nxt)
            remaining.remove(nxt)
            shared = shared & set(cl[nxt])
            shared.discard(nxt)
        groups.append(frozenset(group))
    table = ParallelPairTable(tuple(groups))
    _assert_table_valid(cgraph, table, original)
    return table


def _assert_table_valid(g: Graph, table: ParallelPairTable, requests: Sequence[Edge]) -> None:
    got = sorted(e for grp in table.groups for e in grp)
    assert got == sorted(requests), "groups must partition the request set"
    assert sum(len(grp) for grp in table.groups) == len(requests)
    for grp in table.groups:
        assert check_parallel_pairable(g, grp), "group fails the pairable check"


def min_partition_oracle(g: Graph, r: Iterable[Edge]) -> int:
    """Exact minimum number of parallel-pairable groups, |r| <= 10.

    Exhaustive set-partition search with branch-and-bound on the running
    best; compatibility is precomputed pairwise.
    """
    edges = sorted({canonical_edge(u, v) for u, v in r})
    if len(edges) > 10:
        raise ValueError("exact partition oracle is limited to 10 requests")
    if not edges:
        return 0
    comp = {
        (i, j): compatible(g, edges[i], edges[j])
        for i, j in itertools.combinations(range(len(edges)), 2)
    }

    def ok(i: int, group: list[int]) -> bool:
        return all(comp[(j, i)] for j in group)

    best = len(edges)

    def assign(i: int, groups: list[list[int]]) -> None:
        nonlocal best
        if len(groups) >= best:
            return
        if i == len(edges):
            best = len(groups)
            return
        for grp in groups:
            if ok(i, grp):
                grp.append(i)
                assign(i + 1, groups)
                grp.pop()
        groups.append([i])
        assign(i + 1, groups)
        groups.pop()

    assign(0, [])
    return best


# -- wire formats --------------------------------------------------------------


def requests_to_text(rs: "RequestSet | Iterable[Edge]") -> str:
    return "".join(f"{s} {d}\n" for s, d in rs)


def requests_from_text(text: str) -> list[Edge]:
    out = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        s, d = line.split()
        out.append(canonical_edge(int(s), int(d)))
    return out


def table_to_text(table: ParallelPairTable) -> str:
    lines = []
    for j, grp in enumerate(table.groups, start=1):
        body = " ".join(f"({s},{d})" for s, d in sorted(grp))
        lines.append(f"T{j}: {body}")
    return "\n".join(lines) + "\n"
