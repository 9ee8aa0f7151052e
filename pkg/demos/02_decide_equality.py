"""
Deciding equality of circuits
=============================

Two circuits with the same signature are equal exactly when their normal
forms coincide.
"""

from fractions import Fraction

from resistnorm import compose, decide_eq, identity, parallel, resistor, series, spider, tensor

# two conductances of 2 in series act as a single conductance 1
print("series(2, 2) == resistor(1):", decide_eq(series(2, 2), resistor(1)))

# parallel conductances add
print("parallel(2, 3) == resistor(5):", decide_eq(parallel(2, 3), resistor(5)))

# a resistor whose ends are tied together is just a wire
mu, delta = spider(2, 1), spider(1, 2)
shorted = compose(compose(delta, tensor(resistor(Fraction(7, 3)), identity())), mu)
print("shorted resistor == wire:", decide_eq(shorted, identity()))

# the Frobenius law holds for the junctions themselves
lhs = compose(tensor(delta, identity()), tensor(identity(), mu))
print("Frobenius law:", decide_eq(lhs, compose(mu, delta)))

# different conductances are different circuits
print("resistor(1) == resistor(2):", decide_eq(resistor(1), resistor(2)))
