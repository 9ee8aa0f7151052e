from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from resistnorm import (
    FLOAT,
    LATTICE,
    RATIONAL,
    TROPICAL,
    Circuit,
    CircuitError,
    Measure,
    eliminate_internal,
    measure,
    merge_parallel,
    resistor,
    short_circuit,
    star,
    star_to_mesh,
)
from resistnorm.rewrite import RewriteError, apply_step
from resistnorm.oracle import response_matrix
from resistnorm.rig import Rig

from conftest import q, rig_values


def as_dict(mesh):
    return {pair: y for pair, y in mesh}


# star_to_mesh

def test_empty_and_single_arm():
    assert star_to_mesh([], RATIONAL) == []
    assert star_to_mesh([(1, q(5))]) == []


def test_two_arms_series():
    assert star_to_mesh([(1, q(2)), (2, q(2))]) == [((1, 2), q(1))]


def test_six_three_two():
    mesh = as_dict(star_to_mesh([(1, q(6)), (2, q(3)), (3, q(2))]))
    assert mesh == {(1, 2): q("18/11"), (1, 3): q("12/11"), (2, 3): q("6/11")}
    # the same numbers from the Kron reduction of the star
    R = response_matrix(star([6, 3, 2]))
    assert [-R.entry(0, 1), -R.entry(0, 2), -R.entry(1, 2)] == [Fraction(18, 11), Fraction(12, 11),
                                                                 Fraction(6, 11)]


def test_pairs_are_ordered():
    mesh = star_to_mesh([(9, q(1)), (2, q(1)), (5, q(1))])
    assert [p for p, _ in mesh] == [(2, 9), (5, 9), (2, 5)]


@settings(max_examples=60, deadline=None)
@given(st.lists(rig_values(RATIONAL, nonzero=True), min_size=0, max_size=8))
def test_mesh_size_and_formula(ys):
    arms = list(enumerate(ys))
    mesh = star_to_mesh(arms, RATIONAL)
    d = len(ys)
    assert len(mesh) == d * (d - 1) // 2
    sigma = sum(y.payload for y in ys)
    for (i, j), Y in mesh:
        assert Y.payload == ys[i].payload * ys[j].payload / sigma
        assert not Y.is_zero()


@pytest.mark.parametrize("rig", [RATIONAL, FLOAT, LATTICE, TROPICAL], ids=lambda r: r.name)
def test_mesh_conductances_nonzero_in_every_rig(rig):
    @settings(max_examples=40, deadline=None)
    @given(st.lists(rig_values(rig, nonzero=True), min_size=2, max_size=6))
    def check(ys):
        for _, Y in star_to_mesh(list(enumerate(ys)), rig):
            assert not Y.is_zero()
    check()


def test_tropical_series_is_min():
    mesh = star_to_mesh([(0, TROPICAL.value(3)), (1, TROPICAL.value(5))])
    assert mesh == [((0, 1), TROPICAL.value(3))]


class _BrokenRig(Rig):
    """Addition that can reach zero: not positive."""

    name = "broken"

    def _zero_payload(self):
        return 0

    def _one_payload(self):
        return 1

    def _coerce(self, p):
        return p

    def _add(self, p, q):
        return (p + q) % 3

    def _mul(self, p, q):
        return (p * q) % 3

    def _inv(self, p):
        return p


def test_zero_sigma_is_an_internal_error():
    rig = _BrokenRig()
    with pytest.raises(RewriteError):
        star_to_mesh([(0, rig.value(1)), (1, rig.value(2))])


# measure

def test_measure_examples():
    assert measure(resistor(4)) == Measure(2, 0)
    three = Circuit(RATIONAL, 2, 0, [0, 1], [0, 1], [(0, 1, 1), (0, 1, 2), (1, 0, 3)])
    assert measure(three) == (2, 2)
    loop = Circuit(RATIONAL, 1, 0, [0], [0], [(0, 0, 1)])
    assert measure(loop) == (1, 1)
    assert measure(star([1, 1, 1])) == (4, 0)


def test_measure_is_lexicographic():
    assert Measure(3, 9) < Measure(4, 0)
    assert Measure(3, 1) < Measure(3, 2)


# eliminate_internal

def test_pendant_node_vanishes():
    c = Circuit(RATIONAL, 1, 0, [0], [0, 1], [(0, 1, 7)])
    out, step = eliminate_internal(c, 1)
    assert out.nodes == {0} and not out.edges
    assert step.created == () and step.degree == 1


def test_isolated_node_vanishes():
    c = Circuit(RATIONAL, 1, 0, [0], [0, 1])
    out, step = eliminate_internal(c, 1)
    assert out.nodes == {0} and step.after < step.before


def test_unit_star_gives_third_triangle():
    c = star([1, 1, 1])
    out, step = eliminate_internal(c, 3)
    assert out.edge_map() == {(0, 1): q("1/3"), (0, 2): q("1/3"), (1, 2): q("1/3")}
    assert step.rule == "star_mesh" and step.degree == 3
    assert response_matrix(out) == response_matrix(c)


def test_existing_edge_merges_with_mesh_edge():
    c = Circuit(RATIONAL, 2, 0, [0, 1], [0, 1, 2], [(0, 2, 2), (1, 2, 2), (0, 1, 5)])
    out, _ = eliminate_internal(c, 2)
    assert out.edge_map() == {(0, 1): q(6)}


def test_eliminate_rejects_boundary_and_missing():
    with pytest.raises(CircuitError):
        eliminate_internal(resistor(1), 0)
    with pytest.raises(CircuitError):
        eliminate_internal(resistor(1), 42)
    c = Circuit(RATIONAL, 1, 0, [0], [0, 1], [(0, 1, 1), (1, 1, 1)])
    with pytest.raises(CircuitError):
        eliminate_internal(c, 1)


def test_parallel_arms_are_short_circuited():
    # two arms into the same neighbour: their mesh edge is a loop and disappears
    c = Circuit(RATIONAL, 2, 0, [0, 1], [0, 1, 2], [(0, 2, 1), (0, 2, 2), (1, 2, 3)])
    out, _ = eliminate_internal(c, 2)
    assert out.edge_map() == {(0, 1): q("3/2")}
    assert response_matrix(out) == response_matrix(c)


# merge_parallel / short_circuit

def test_merge_parallel_rational():
    c = Circuit(RATIONAL, 2, 0, [0, 1], [0, 1], [(0, 1, 2), (0, 1, 3)])
    out, step = merge_parallel(c, 1, 0)
    assert out.edge_map() == {(0, 1): q(5)}
    assert step.after.P < step.before.P


def test_merge_parallel_lattice():
    c = Circuit(LATTICE, 2, 0, [0, 1], [0, 1], [(0, 1, 1), (0, 1, 1)])
    assert merge_parallel(c, 0, 1)[0].edge_map() == {(0, 1): LATTICE.one}


def test_merge_parallel_association():
    c = Circuit(RATIONAL, 2, 0, [0, 1], [0, 1], [(0, 1, 2), (0, 1, 3), (0, 1, 4)])
    out, _ = merge_parallel(c, 0, 1)
    assert out.edge_map() == {(0, 1): q(9)}
    reordered = c.replace(edges=list(reversed(c.edges)))
    assert merge_parallel(reordered, 0, 1)[0].edge_map() == {(0, 1): q(9)}


def test_merge_parallel_needs_two_edges():
    with pytest.raises(CircuitError):
        merge_parallel(resistor(1), 0, 1)


def test_short_circuit_step():
    c = Circuit(RATIONAL, 1, 0, [0], [0], [(0, 0, 1), (0, 0, 2)])
    out, step = short_circuit(c, 0)
    assert not out.edges and step.after < step.before
    with pytest.raises(CircuitError):
        short_circuit(out, 0)


def test_step_text():
    _, step = eliminate_internal(star([1, 1, 1]), 3)
    assert str(step) == "star_mesh 3 -> 0-1:1/3, 0-2:1/3, 1-2:1/3 (3,0)"
    c = Circuit(RATIONAL, 2, 0, [0, 1], [0, 1], [(0, 1, 2), (0, 1, 3)])
    assert str(merge_parallel(c, 0, 1)[1]) == "parallel - -> 0-1:5 (2,0)"
    loop = Circuit(RATIONAL, 1, 0, [0], [0], [(0, 0, 2)])
    assert str(short_circuit(loop, 0)[1]) == "short_circuit 0 -> (1,0)"


def test_apply_step_replays():
    c = star([2, 3, 4, 5])
    out, step = eliminate_internal(c, 4)
    assert apply_step(c, step) == out
