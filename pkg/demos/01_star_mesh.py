"""
Eliminating a star
==================

A three-armed star of conductances 6, 3 and 2 becomes a triangle.
Each new edge carries y_i * y_j / (y_1 + y_2 + y_3).
"""

from resistnorm import RandomOrder, normalize, star

# the centre of the star is an internal node; the three tips are ports
c = star([6, 3, 2])
print(c.signature, "nodes:", c.nodes, "edges:", [str(e) for e in c.edges])

# normalization removes the centre and records each rewrite step
nf, trace = normalize(c)
print(trace.format())
print(nf.format())

# the same circuit eliminated in a random order lands on the same mesh
for seed in range(3):
    assert normalize(c, RandomOrder(seed))[0] == nf
print("every elimination order agrees")
