"""Check the graph-level measurement rules against the stabilizer tableau.

The graph rules are purely combinatorial; the tableau tracks the actual
stabilizer group including measurement randomness.  For every forced
outcome string the post-measurement state must match the predicted graph
state up to single-qubit Cliffords on the survivors.
"""

import itertools

from mecnet import Graph, build_controlled, mec_complementation
from mecnet.qnet import InterQNet, QNetPartition
from mecnet.stabilizer import equal_up_to_local_clifford, graph_state, measure_pauli

iq = InterQNet(
    Graph(5, [(0, 2), (0, 3), (1, 4), (2, 4)]),
    QNetPartition(3, (1, 1, 2, 2, 3)),
)
cg = build_controlled(iq)
predicted, _ = mec_complementation(cg)
print("predicted complement:", predicted.graph.edges())

controls = cg.partition.control_nodes
survivors = [q for q in range(cg.graph.vertex_count) if q not in controls]
target = graph_state(Graph(cg.graph.vertex_count, predicted.graph.edges()))

for outcomes in itertools.product((1, -1), repeat=len(controls)):
    post = graph_state(cg.graph)
    for c, o in zip(controls, outcomes):
        post, _ = measure_pauli(post, c, "X", forced_outcome=o)
    ok = equal_up_to_local_clifford(post, target, survivors)
    print("outcomes", outcomes, "->", "equivalent" if ok else "MISMATCH")
