"""Inter-QNet structures and the controlled complementation procedure.

An Inter-QNet partitions data vertices into k domains ("QNets") and keeps
only cross-domain edges.  A Controlled Inter-QNet appends k' control
vertices (k' = k + k mod 2) forming a clique, with control a attached to
every vertex of QNet a; the parity-padding control, present when k is
odd, sits only in the clique.

X-measuring the controls in order turns the data graph into its
cross-domain complement; Z-measuring them restores the original network.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .graph import Graph, MeasurementRecord, bits

__all__ = [
    "QNetPartition",
    "InterQNet",
    "ControlledInterQNet",
    "build_controlled",
    "complement_inter_qnet",
    "mec_complementation",
    "restore_original",
    "extract_epr",
    "k0_first_of_qnet1",
    "instance_to_text",
    "instance_from_text",
]

K0Policy = Callable[[Graph, int, "ControlledInterQNet"], int]


@dataclass(frozen=True)
class QNetPartition:
    """Assignment of data vertices to QNets 1..k plus control-node ids.

    ``membership[v]`` is the QNet index of data vertex ``v``.  Control ids
    live outside the membership range; when k is odd the final control has
    no QNet of its own.
    """

    k: int
    membership: tuple[int, ...]
    control_nodes: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("need at least one QNet")
        if any(not 1 <= a <= self.k for a in self.membership):
            raise ValueError("membership values must lie in 1..k")
        for a in range(1, self.k + 1):
            if a not in self.membership:
                raise ValueError(f"QNet {a} is empty")
        if self.control_nodes and len(self.control_nodes) != self.k_prime:
            raise ValueError(
                f"expected {self.k_prime} control nodes, got {len(self.control_nodes)}"
            )
        if set(self.control_nodes) & set(range(self.data_count)):
            raise ValueError("control nodes must not be data vertices")

    @property
    def k_prime(self) -> int:
        return self.k + (self.k % 2)

    @property
    def data_count(self) -> int:
        return len(self.membership)

    def members(self, a: int) -> list[int]:
        return [v for v, qa in enumerate(self.membership) if qa == a]

    def sizes(self) -> list[int]:
        out = [0] * self.k
        for a in self.membership:
            out[a - 1] += 1
        return out

    def qnet_masks(self) -> list[int]:
        """Bitmask of members per QNet, index 0 unused."""
        masks = [0] * (self.k + 1)
        for v, a in enumerate(self.membership):
            masks[a] |= 1 << v
        return masks

    def without_controls(self) -> "QNetPartition":
        return QNetPartition(self.k, self.membership, ())


def _check_cross_domain(graph: Graph, part: QNetPartition) -> None:
    data = part.data_count
    for u, v in graph.edges():
        if u < data and v < data and part.membership[u] == part.membership[v]:
            raise ValueError(f"edge ({u},{v}) stays inside QNet {part.membership[u]}")


@dataclass(frozen=True)
class InterQNet:
    """Cross-domain graph over the data vertices of a QNetPartition.

    The ``connected`` flag records whether the network is interactive;
    complement networks are allowed to be disconnected.
    """

    graph: Graph
    partition: QNetPartition
    connected: bool = field(init=False)

    def __post_init__(self) -> None:
        if self.partition.control_nodes:
            raise ValueError("InterQNet carries no control nodes")
        if self.graph.vertex_count != self.partition.data_count:
            raise ValueError("graph size does not match the partition")
        if self.graph.alive_count != self.graph.vertex_count:
            raise ValueError("InterQNet graphs must have no deleted vertices")
        _check_cross_domain(self.graph, self.partition)
        object.__setattr__(self, "connected", self.graph.connected())


@dataclass(frozen=True)
class ControlledInterQNet:
    """Inter-QNet augmented with a fully connected control layer."""

    graph: Graph
    partition: QNetPartition

    def __post_init__(self) -> None:
        part = self.partition
        if not part.control_nodes:
            raise ValueError("ControlledInterQNet requires control nodes")
        g = self.graph
        if g.alive_count != g.vertex_count:
            raise ValueError("controlled graphs must have no deleted vertices")
        if g.vertex_count != part.data_count + part.k_prime:
            raise ValueError("graph size does not match partition plus controls")
        _check_cross_domain(g, part)
        controls = part.control_nodes
        cmask = 0
        for c in controls:
            cmask |= 1 << c
        qmasks = part.qnet_masks()
        for a, c in enumerate(controls, start=1):
            want = cmask & ~(1 << c)
            if a <= part.k:
                want |= qmasks[a]
            if g.neighbor_mask(c) != want:
                raise ValueError(f"control node {c} has the wrong neighborhood")

    @property
    def data_count(self) -> int:
        return self.partition.data_count

    def data_network(self) -> InterQNet:
        """The underlying Inter-QNet (controls stripped, not measured)."""
        d = self.data_count
        edges = [(u, v) for u, v in self.graph.edges() if u < d and v < d]
        return InterQNet(Graph(d, edges), self.partition.without_controls())


def build_controlled(iq: InterQNet) -> ControlledInterQNet:
    """Append k' fresh controls: a clique, plus control a joined to QNet a."""
    part = iq.partition
    d = part.data_count
    kp = part.k_prime
    controls = tuple(range(d, d + kp))
    edges = iq.graph.edges()
    for i in range(kp):
        for j in range(i + 1, kp):
            edges.append((controls[i], controls[j]))
    for a in range(1, part.k + 1):
        for v in part.members(a):
            edges.append((v, controls[a - 1]))
    g = Graph(d + kp, edges)
    return ControlledInterQNet(g, QNetPartition(part.k, part.membership, controls))


def complement_inter_qnet(iq: InterQNet) -> InterQNet:
    """Cross-domain complement: keep exactly the absent cross-QNet pairs."""
    part = iq.partition
    qmasks = part.qnet_masks()
    full = (1 << part.data_count) - 1
    edges = []
    for u in range(part.data_count):
        allowed = full & ~qmasks[part.membership[u]] & ~iq.graph.neighbor_mask(u)
        edges.extend((u, v) for v in bits(allowed >> (u + 1) << (u + 1)))
    return InterQNet(Graph(part.data_count, edges), part)


def k0_first_of_qnet1(graph: Graph, control: int, cg: "ControlledInterQNet") -> int:
    """Default special-neighbor policy: the lowest-id vertex of QNet 1."""
    return min(cg.partition.members(1))


def mec_complementation(
    cg: ControlledInterQNet,
    k0_policy: Optional[K0Policy] = None,
) -> tuple[InterQNet, list[MeasurementRecord]]:
    """X-measure every control node in order; the surviving data graph is
    the cross-domain complement of the underlying network.

    The default policy reuses the first vertex of QNet 1 as the special
    neighbor for every control; correctness is only claimed for it.  After
    the first measurement that vertex is adjacent to all remaining
    controls, so the policy never fails mid-sequence.
    """
    policy = k0_policy or k0_first_of_qnet1
    g = cg.graph
    records: list[MeasurementRecord] = []
    for c in cg.partition.control_nodes:
        k0 = policy(g, c, cg)
        if not g.has_edge(c, k0):
            raise ValueError(
                f"k0 policy returned {k0}, not a neighbor of control {c}"
            )
        g, rec = g.measure_x(c, k0)
        records.append(rec)
    data = g.restrict(cg.data_count)
    return InterQNet(data, cg.partition.without_controls()), records


def restore_original(cg: ControlledInterQNet) -> InterQNet:
    """Z-measure every control node, recovering the original network."""
    g = cg.graph
    for c in cg.partition.control_nodes:
        g, _ = g.measure_z(c)
    return InterQNet(g.restrict(cg.data_count), cg.partition.without_controls())


def extract_epr(
    iq: InterQNet,
    group: Iterable[tuple[int, int]],
    check: bool = True,
) -> tuple[Graph, list[MeasurementRecord]]:
    """Z-measure every vertex that is not an endpoint of ``group``.

    For a parallel-pairable group the result is exactly the |group|
    disjoint edges.  With ``check`` enabled the group is validated first;
    either way a non-matching residue raises ParallelPairViolation, which
    carries the offending edges.
    """
    from .pairs import ParallelPairViolation, check_parallel_pairable

    wanted = {(min(u, v), max(u, v)) for u, v in group}
    for u, v in wanted:
        if not iq.graph.has_edge(u, v):
            raise ValueError(f"({u},{v}) is not an edge of the network")
    if check and not check_parallel_pairable(iq.graph, wanted):
        raise ParallelPairViolation(
            "requested group is not parallel-pairable", extra_edges=()
        )
    endpoints = {v for e in wanted for v in e}
    g = iq.graph
    records = []
    for v in range(g.vertex_count):
        if v not in endpoints:
            g, rec = g.measure_z(v)
            records.append(rec)
    got = set(g.edges())
    if got != wanted:
        raise ParallelPairViolation(
            "post-measurement graph is not the requested matching",
            extra_edges=tuple(sorted(got - wanted)),
            missing_edges=tuple(sorted(wanted - got)),
        )
    return g, records


# -- instance files ----------------------------------------------------------


def instance_to_text(net: "InterQNet | ControlledInterQNet") -> str:
    """Serialize a network: edge list, then QNet membership and controls."""
    part = net.partition
    lines = [f"n={net.graph.vertex_count}"]
    lines += [f"{u} {v}" for u, v in net.graph.edges()]
    for a in range(1, part.k + 1):
        members = ",".join(str(v) for v in part.members(a))
        lines.append(f"qnet {a}: {members}")
    if part.control_nodes:
        lines.append("control: " + ",".join(str(c) for c in part.control_nodes))
    return "\n".join(lines) + "\n"


def instance_from_text(text: str) -> "InterQNet | ControlledInterQNet":
    n = None
    edges: list[tuple[int, int]] = []
    qnets: dict[int, list[int]] = {}
    controls: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("n="):
            n = int(line[2:])
        elif line.startswith("qnet"):
            head, _, body = line.partition(":")
            a = int(head.split()[1])
            qnets[a] = [int(tok) for tok in body.split(",") if tok.strip()]
        elif line.startswith("control"):
            _, _, body = line.partition(":")
            controls = [int(tok) for tok in body.split(",") if tok.strip()]
        else:
            u, v = line.split()
            edges.append((int(u), int(v)))
    if n is None:
        raise ValueError("missing 'n=' header")
    k = max(qnets) if qnets else 0
    if sorted(qnets) != list(range(1, k + 1)):
        raise ValueError("QNet ids must be 1..k")
    data_count = sum(len(vs) for vs in qnets.values())
    membership = [0] * data_count
    for a, vs in qnets.items():
        for v in vs:
            if not 0 <= v < data_count:
                raise ValueError(f"data vertex {v} out of range")
            membership[v] = a
    part = QNetPartition(k, tuple(membership), tuple(controls))
    g = Graph(n, edges)
    if controls:
        return ControlledInterQNet(g, part)
    return InterQNet(g, part)
