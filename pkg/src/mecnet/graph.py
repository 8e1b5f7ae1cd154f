"""Undirected simple graphs with the graph-state rewrite rules.

Vertices are dense integer ids ``0..vertex_count-1``.  Adjacency is stored
as one Python-int bitmask per vertex, so neighborhood algebra (complement,
local complementation, compatibility tests) runs on machine words.

Vertex deletion keeps ids stable: a deleted vertex keeps its slot but is
masked out ("dead") and loses all incident edges.  All operations return
new Graph values; instances are immutable from the caller's perspective.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Literal, Optional

__all__ = [
    "Graph",
    "MeasurementRecord",
    "bits",
    "graph_to_edgelist",
    "graph_from_edgelist",
]


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class MeasurementRecord:
    """Symbolic record of a single-qubit Pauli measurement on a graph state.

    The outcome-dependent local-Clifford byproduct is never applied to the
    graph; it is only tagged here.  ``special_neighbor`` is the designated
    neighbor used by the X-measurement rule and is absent for Z.
    """

    vertex: int
    basis: Literal["X", "Z"]
    special_neighbor: Optional[int] = None
    byproduct_tag: str = ""

    def __post_init__(self) -> None:
        if self.basis == "X" and self.special_neighbor is None:
            raise ValueError("X measurement requires a special neighbor")
        if self.basis == "Z" and self.special_neighbor is not None:
            raise ValueError("Z measurement takes no special neighbor")


class Graph:
    """Immutable undirected simple graph over stable integer ids."""

    __slots__ = ("vertex_count", "_adj", "_alive")

    def __init__(self, vertex_count: int, edges: Iterable[tuple[int, int]] = ()):
        if vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        adj = [0] * vertex_count
        for u, v in edges:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError(f"edge ({u},{v}) outside 0..{vertex_count - 1}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        object.__setattr__(self, "vertex_count", vertex_count)
        object.__setattr__(self, "_adj", tuple(adj))
        object.__setattr__(self, "_alive", (1 << vertex_count) - 1)

    @classmethod
    def _from_parts(cls, vertex_count: int, adj: tuple[int, ...], alive: int) -> "Graph":
        g = cls.__new__(cls)
        object.__setattr__(g, "vertex_count", vertex_count)
        object.__setattr__(g, "_adj", adj)
        object.__setattr__(g, "_alive", alive)
        return g

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Graph is immutable")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.vertex_count == other.vertex_count
            and self._alive == other._alive
            and self._adj == other._adj
        )

    def __hash__(self) -> int:
        return hash((self.vertex_count, self._alive, self._adj))

    def __repr__(self) -> str:
        return f"Graph({self.vertex_count}, edges={self.edges()!r})"

    # -- queries ---------------------------------------------------------

    def is_alive(self, v: int) -> bool:
        self._check_vertex(v)
        return bool(self._alive >> v & 1)

    def vertices(self) -> list[int]:
        """Ids of non-deleted vertices, ascending."""
        return list(bits(self._alive))

    @property
    def alive_count(self) -> int:
        return self._alive.bit_count()

    @property
    def alive_mask(self) -> int:
        return self._alive

    def neighbor_mask(self, v: int) -> int:
        self._check_vertex(v)
        return self._adj[v]

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(bits(self.neighbor_mask(v)))

    def degree(self, v: int) -> int:
        return self.neighbor_mask(v).bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self._adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) with u < v, lexicographically sorted."""
        out = []
        for u in bits(self._alive):
            for v in bits(self._adj[u] >> (u + 1) << (u + 1)):
                out.append((u, v))
        return out

    @property
    def edge_count(self) -> int:
        return sum(a.bit_count() for a in self._adj) // 2

    def connected(self) -> bool:
        """True iff the alive vertices form one connected component."""
        alive = self._alive
        if alive == 0:
            return True
        start = (alive & -alive).bit_length() - 1
        seen = 1 << start
        frontier = seen
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= self._adj[u]
            frontier = nxt & ~seen
            seen |= nxt
        return seen & alive == alive

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self.vertex_count):
            raise ValueError(f"invalid vertex id {v}")

    def _check_alive(self, v: int) -> None:
        self._check_vertex(v)
        if not self._alive >> v & 1:
            raise ValueError(f"vertex {v} has been deleted")

    # -- rewrite rules -----------------------------------------------------

    def complement(self) -> "Graph":
        """Edge-complement among alive vertices; dead slots stay isolated."""
        alive = self._alive
        adj = list(self._adj)
        for v in bits(alive):
            adj[v] = alive & ~adj[v] & ~(1 << v)
        return Graph._from_parts(self.vertex_count, tuple(adj), alive)

    def local_complement(self, v: int) -> "Graph":
        """Complement the induced subgraph on the open neighborhood of ``v``."""
        self._check_alive(v)
        nv = self._adj[v]
        adj = list(self._adj)
        for u in bits(nv):
            adj[u] ^= nv & ~(1 << u)
        return Graph._from_parts(self.vertex_count, tuple(adj), self._alive)

    def delete_vertex(self, v: int) -> "Graph":
        """Remove ``v`` and its incident edges; the slot stays, masked dead."""
        self._check_alive(v)
        bit = 1 << v
        adj = list(self._adj)
        for u in bits(adj[v]):
            adj[u] &= ~bit
        adj[v] = 0
        return Graph._from_parts(self.vertex_count, tuple(adj), self._alive & ~bit)

    def measure_x(self, v: int, k0: int) -> tuple["Graph", MeasurementRecord]:
        """Pauli-X measurement rule at the graph level.

        Applies local complementation at the special neighbor ``k0``, then at
        ``v``, deletes ``v``, and complements at ``k0`` again.  ``k0`` must be
        adjacent to ``v``.  The local-Clifford byproduct is recorded, not
        applied.
        """
        self._check_alive(v)
        self._check_alive(k0)
        if not self.has_edge(v, k0):
            raise ValueError(f"k0={k0} is not adjacent to measured vertex {v}")
        g = self.local_complement(k0).local_complement(v).delete_vertex(v)
        g = g.local_complement(k0)
        rec = MeasurementRecord(v, "X", k0, byproduct_tag=f"U[x,{v};{k0}]")
        return g, rec

    def measure_z(self, v: int) -> tuple["Graph", MeasurementRecord]:
        """Pauli-Z measurement rule: vertex deletion."""
        g = self.delete_vertex(v)
        rec = MeasurementRecord(v, "Z", None, byproduct_tag=f"U[z,{v}]")
        return g, rec

    # -- restriction -------------------------------------------------------

    def restrict(self, count: int) -> "Graph":
        """Subgraph on the id range ``0..count-1`` as a fresh graph.

        Raises if an alive edge would cross the cut; intended for dropping
        trailing slots that are dead or isolated (e.g. measured-out control
        vertices).
        """
        if not (0 <= count <= self.vertex_count):
            raise ValueError("restriction size out of range")
        low = (1 << count) - 1
        for u in bits(self._alive & ~low):
            if self._adj[u] & low:
                raise ValueError(f"edge from dropped vertex {u} crosses the cut")
        return Graph._from_parts(count, self._adj[:count], self._alive & low)

    # -- integrity ---------------------------------------------------------

    def check(self) -> None:
        """Validate structural invariants; raises AssertionError on breakage."""
        full = (1 << self.vertex_count) - 1
        assert self._alive & ~full == 0
        for v in range(self.vertex_count):
            a = self._adj[v]
            assert a & ~full == 0, f"out-of-range bits at {v}"
            assert not a >> v & 1, f"self-loop at {v}"
            if not self._alive >> v & 1:
                assert a == 0, f"dead vertex {v} keeps edges"
            assert a & ~self._alive == 0, f"edge from {v} to dead vertex"
            for u in bits(a):
                assert self._adj[u] >> v & 1, f"asymmetric edge ({v},{u})"


# -- serialization ----------------------------------------------------------


def graph_to_edgelist(g: Graph) -> str:
    """Serialize to the edge-list text format: header ``n=<count>``, then
    one ``u v`` line per edge in sorted order.  Only fully-alive graphs are
    representable."""
    if g.alive_count != g.vertex_count:
        raise ValueError("graphs with deleted vertices cannot be serialized")
    lines = [f"n={g.vertex_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def graph_from_edgelist(text: str) -> Graph:
    """Parse the edge-list text format produced by :func:`graph_to_edgelist`."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].startswith("n="):
        raise ValueError("missing 'n=<vertex_count>' header")
    n = int(lines[0][2:])
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"malformed edge line: {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return Graph(n, edges)
