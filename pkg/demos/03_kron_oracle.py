"""
Checking against Kron reduction
===============================

The weighted Laplacian restricted to the ports (a Schur complement) is an
independent way to compute the same answer as the rewriting system.
"""

from resistnorm import normalize
from resistnorm.oracle import CircuitGenSpec, agrees_with_normal_form, random_circuit, response_matrix

c = random_circuit(CircuitGenSpec(max_nodes=8, max_edges=14, max_ports=4, seed=5))
print("circuit:", c.signature, len(c.nodes), "nodes,", len(c.edges), "edges")

nf, trace = normalize(c)
print(len(trace.steps), "rewrite steps")
print(nf.format())

# the response matrix has one row per block of the port partition
R = response_matrix(c)
print("blocks:", R.blocks)
for row in R.matrix:
    print("  ", " ".join(f"{str(x):>14}" for x in row))

# off-diagonal entries of the Laplacian are minus the mesh conductances
print("oracle agrees:", agrees_with_normal_form(c, nf))
print("same matrix by one-at-a-time pivots:", R == response_matrix(c, stepwise=True))
