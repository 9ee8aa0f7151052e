from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from resistnorm.rig import (
    FLOAT,
    LATTICE,
    RATIONAL,
    RIGS,
    TROPICAL,
    RigDivisionError,
    RigError,
    get_rig,
)

from conftest import rig_values

ALL = [RATIONAL, FLOAT, LATTICE, TROPICAL]


def test_rational_examples():
    assert RATIONAL.add(RATIONAL.value("2/3"), RATIONAL.value("1/6")) == RATIONAL.value("5/6")
    assert RATIONAL.mul(RATIONAL.value("2/3"), RATIONAL.value("3/4")) == RATIONAL.value("1/2")
    assert RATIONAL.inv(RATIONAL.value("2/3")) == RATIONAL.value("3/2")
    assert RATIONAL.eq(RATIONAL.value(Fraction(2, 4)), RATIONAL.value("1/2"))


def test_rational_is_reduced_and_exact():
    v = RATIONAL.value(Fraction(6, 8))
    assert (v.payload.numerator, v.payload.denominator) == (3, 4)
    third = RATIONAL.value(Fraction(1, 3))
    assert (third + third + third).payload == 1


def test_tropical_examples():
    assert TROPICAL.add(TROPICAL.value(3), TROPICAL.value(5)) == TROPICAL.value(5)
    assert TROPICAL.mul(TROPICAL.value(3), TROPICAL.value(5)) == TROPICAL.value(8)
    assert TROPICAL.inv(TROPICAL.value(4)) == TROPICAL.value(-4)
    assert TROPICAL.mul(TROPICAL.value(4), TROPICAL.value(-4)) == TROPICAL.one
    assert TROPICAL.mul(TROPICAL.zero, TROPICAL.value(7)) == TROPICAL.zero


def test_float_tolerance():
    assert FLOAT.eq(FLOAT.value(0.3), FLOAT.value(0.1 + 0.2))
    assert not FLOAT.eq(FLOAT.value(1.0), FLOAT.value(1.0 + 1e-6))
    assert FLOAT.eq(FLOAT.value(0.0), FLOAT.value(1e-13))


def test_lattice_is_join_meet():
    one, zero = LATTICE.one, LATTICE.zero
    assert LATTICE.eq(one, LATTICE.value(1))
    assert one + zero == one and one * zero == zero and one + one == one
    assert LATTICE.inv(one) == one


@pytest.mark.parametrize("rig", ALL, ids=lambda r: r.name)
def test_units(rig):
    for v in (rig.zero, rig.one):
        assert rig.add(v, rig.zero) == v
        assert rig.mul(v, rig.one) == v
    assert rig.inv(rig.one) == rig.one


@pytest.mark.parametrize("rig", ALL, ids=lambda r: r.name)
def test_inverse_of_zero_raises(rig):
    with pytest.raises(RigDivisionError):
        rig.inv(rig.zero)


def test_mixed_instances_rejected():
    with pytest.raises(RigError):
        RATIONAL.add(RATIONAL.one, TROPICAL.one)
    with pytest.raises(RigError):
        RATIONAL.one * FLOAT.one
    with pytest.raises(RigError):
        FLOAT.eq(FLOAT.one, LATTICE.one)
    assert RATIONAL.one != FLOAT.one


@pytest.mark.parametrize("payload", [-1, Fraction(-1, 2), 0.5, True, "1.5"])
def test_rational_rejects_bad_payloads(payload):
    with pytest.raises(RigError):
        RATIONAL.value(payload)


@pytest.mark.parametrize("payload", [-1.0, float("inf"), float("nan")])
def test_float_rejects_bad_payloads(payload):
    with pytest.raises(RigError):
        FLOAT.value(payload)


@pytest.mark.parametrize("rig,text", [
    (RATIONAL, "0"), (RATIONAL, "7"), (RATIONAL, "22/7"),
    (FLOAT, "0.1"), (FLOAT, "1e-300"), (FLOAT, "3.0"),
    (LATTICE, "1"), (LATTICE, "0"),
    (TROPICAL, "-inf"), (TROPICAL, "2.5"), (TROPICAL, "-3"), (TROPICAL, "1/3"),
])
def test_literal_round_trip(rig, text):
    v = rig.parse(text)
    assert rig.parse(rig.format(v)).payload == v.payload


def test_tropical_prints_decimals():
    assert TROPICAL.format(TROPICAL.value(Fraction(-5, 4))) == "-1.25"
    assert TROPICAL.format(TROPICAL.value(Fraction(7, 1))) == "7"
    assert TROPICAL.format(TROPICAL.value(Fraction(1, 3))) == "1/3"


@pytest.mark.parametrize("rig,text", [
    (RATIONAL, "1.5"), (RATIONAL, "-1"), (RATIONAL, "1/0"), (RATIONAL, "x"),
    (FLOAT, "abc"), (FLOAT, "inf"), (FLOAT, "-2"),
    (LATTICE, "2"), (TROPICAL, "inf"), (TROPICAL, "1/0"),
])
def test_bad_literals(rig, text):
    with pytest.raises(RigError):
        rig.parse(text)


def test_registry():
    assert set(RIGS) == {"rational", "float", "lattice", "tropical"}
    assert get_rig("tropical") is TROPICAL
    with pytest.raises(RigError):
        get_rig("complex")


def test_values_pickle_to_the_same_rig():
    import pickle
    v = pickle.loads(pickle.dumps(RATIONAL.value("3/7")))
    assert v.rig is RATIONAL and v == RATIONAL.value("3/7")


# algebraic laws, one block per rig

def _laws(rig):
    vals = rig_values(rig)
    nonzero = rig_values(rig, nonzero=True)

    @settings(max_examples=200, deadline=None)
    @given(vals, vals, vals)
    def semiring_laws(a, b, c):
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert rig.zero * a == rig.zero

    @settings(max_examples=200, deadline=None)
    @given(vals, vals)
    def positivity(a, b):
        if (a + b).is_zero():
            assert a.is_zero() and b.is_zero()

    @settings(max_examples=200, deadline=None)
    @given(nonzero)
    def division(a):
        assert a * a.inverse() == rig.one

    return semiring_laws, positivity, division


@pytest.mark.parametrize("rig", ALL, ids=lambda r: r.name)
def test_rig_laws(rig):
    for law in _laws(rig):
        law()


@given(st.fractions(min_value=0, max_value=100), st.fractions(min_value=0, max_value=100))
def test_rational_add_matches_fraction(a, b):
    assert (RATIONAL.value(a) + RATIONAL.value(b)).payload == a + b
