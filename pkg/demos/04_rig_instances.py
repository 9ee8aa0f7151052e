"""
Other number systems
====================

Any commutative rig with division and no negatives works as a conductance
domain. Here the same series circuit is read in four of them.
"""

from fractions import Fraction

from resistnorm import FLOAT, LATTICE, RATIONAL, TROPICAL, normalize, series
from resistnorm.oracle import CircuitGenSpec, mesh_pairs, random_circuit, reachability_closure

for rig, a, b in [(RATIONAL, 2, 3), (FLOAT, 2.0, 3.0), (LATTICE, True, True),
                  (TROPICAL, Fraction(5, 2), Fraction(-1, 4))]:
    nf, _ = normalize(series(a, b, rig=rig))
    print(f"{rig.name:>9}: series({a}, {b}) ->", nf.format())

# in the tropical (max, +) rig a series connection keeps the smaller weight
# in the boolean rig the mesh says which ports are joined through the interior
c = random_circuit(CircuitGenSpec(max_nodes=9, max_edges=12, max_ports=4, rig=LATTICE, seed=0))
nf, _ = normalize(c)
print("lattice mesh pairs:", sorted(mesh_pairs(nf)))
print("matches reachability:", mesh_pairs(nf) == reachability_closure(c))
