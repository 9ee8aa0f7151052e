"""Commutative positive division rigs used as conductance domains.

Four instances are provided:

========== =============================== ================ ==============
name       carrier                         addition         multiplication
========== =============================== ================ ==============
rational   non-negative exact fractions    ``+``            ``*``
float      non-negative finite floats      ``+``            ``*``
lattice    ``{0, 1}``                      join (or)        meet (and)
tropical   exact reals and ``-inf``        ``max``          ``+``
========== =============================== ================ ==============

Elements are wrapped in :class:`RigValue`, which remembers its rig so that
mixing instances is caught instead of silently producing garbage.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Any, Iterable

__all__ = [
    "RigError",
    "RigDivisionError",
    "RigValue",
    "Rig",
    "RationalRig",
    "FloatRig",
    "LatticeRig",
    "TropicalRig",
    "RATIONAL",
    "FLOAT",
    "LATTICE",
    "TROPICAL",
    "RIGS",
    "get_rig",
]


class RigError(ValueError):
    """Usage error: bad payload, bad literal, or operands from different rigs."""


class RigDivisionError(ZeroDivisionError):
    """Inverse of zero requested."""


class RigValue:
    """Immutable element of a particular rig instance."""

    __slots__ = ("rig", "payload")

    def __init__(self, rig: "Rig", payload: Any):
        object.__setattr__(self, "rig", rig)
        object.__setattr__(self, "payload", payload)

    def __setattr__(self, name, value):
        raise AttributeError("RigValue is immutable")

    def __reduce__(self):
        return (RigValue, (self.rig, self.payload))

    def __add__(self, other: "RigValue") -> "RigValue":
        return self.rig.add(self, other)

    def __mul__(self, other: "RigValue") -> "RigValue":
        return self.rig.mul(self, other)

    def inverse(self) -> "RigValue":
        return self.rig.inv(self)

    def is_zero(self) -> bool:
        return self.rig.is_zero(self)

    def __eq__(self, other):
        if not isinstance(other, RigValue):
            return NotImplemented
        if other.rig is not self.rig:
            return False
        return self.rig.eq(self, other)

    def __hash__(self):
        return self.rig.hash_value(self)

    def __repr__(self):
        return f"RigValue({self.rig.name}, {self.rig.format(self)})"

    def __str__(self):
        return self.rig.format(self)


class Rig:
    """Base class of a commutative positive division rig.

    Subclasses supply the payload-level operations ``_add``, ``_mul``,
    ``_inv``, ``_eq``, ``_coerce``, ``_parse`` and ``_format``.
    """

    name = "abstract"
    exact = True

    def __init__(self):
        self.zero = RigValue(self, self._zero_payload())
        self.one = RigValue(self, self._one_payload())

    def __repr__(self):
        return f"<{type(self).__name__} {self.name!r}>"

    def __reduce__(self):
        return (get_rig, (self.name,))

    # construction / checking

    def value(self, payload: Any) -> RigValue:
        """Build an element from a raw payload (or return ``payload`` if it already is one)."""
        if isinstance(payload, RigValue):
            self._check(payload)
            return payload
        return RigValue(self, self._coerce(payload))

    def _check(self, *values: RigValue) -> None:
        for v in values:
            if not isinstance(v, RigValue):
                raise RigError(f"{self.name}: expected a RigValue, got {type(v).__name__}")
            if v.rig is not self:
                raise RigError(f"mixed rig operands: {v.rig.name} value used in {self.name} rig")

    # operations

    def add(self, a: RigValue, b: RigValue) -> RigValue:
        self._check(a, b)
        return RigValue(self, self._add(a.payload, b.payload))

    def mul(self, a: RigValue, b: RigValue) -> RigValue:
        self._check(a, b)
        return RigValue(self, self._mul(a.payload, b.payload))

    def inv(self, a: RigValue) -> RigValue:
        self._check(a)
        if self._is_zero(a.payload):
            raise RigDivisionError(f"{self.name}: inverse of zero")
        return RigValue(self, self._inv(a.payload))

    def eq(self, a: RigValue, b: RigValue) -> bool:
        self._check(a, b)
        return self._eq(a.payload, b.payload)

    def is_zero(self, a: RigValue) -> bool:
        self._check(a)
        return self._is_zero(a.payload)

    def sum(self, values: Iterable[RigValue]) -> RigValue:
        total = self.zero
        for v in values:
            total = self.add(total, v)
        return total

    def hash_value(self, a: RigValue) -> int:
        return hash((self.name, a.payload))

    # text syntax

    def parse(self, text: str) -> RigValue:
        return RigValue(self, self._parse(text.strip()))

    def format(self, a: RigValue) -> str:
        self._check(a)
        return self._format(a.payload)

    # payload hooks

    def _is_zero(self, p) -> bool:
        return self._eq(p, self._zero_payload())

    def _eq(self, p, q) -> bool:
        return p == q


class RationalRig(Rig):
    """Non-negative rationals with exact, arbitrary precision arithmetic."""

    name = "rational"
    _literal = re.compile(r"\d+(/\d+)?")

    def _zero_payload(self):
        return Fraction(0)

    def _one_payload(self):
        return Fraction(1)

    def _coerce(self, p):
        if isinstance(p, bool) or not isinstance(p, (int, Fraction, str)):
            raise RigError(f"rational: unsupported payload {p!r}")
        if isinstance(p, str):
            return self._parse(p)
        p = Fraction(p)
        if p < 0:
            raise RigError(f"rational: negative value {p}")
        return p

    def _add(self, p, q):
        return p + q

    def _mul(self, p, q):
        return p * q

    def _inv(self, p):
        return 1 / p

    def _parse(self, text):
        if not self._literal.fullmatch(text):
            raise RigError(f"rational: cannot parse {text!r} (expected p or p/q)")
        try:
            return Fraction(text)
        except ZeroDivisionError:
            raise RigError(f"rational: zero denominator in {text!r}") from None

    def _format(self, p):
        return str(p)


class FloatRig(Rig):
    """Non-negative finite floats; equality is approximate."""

    name = "float"
    exact = False
    rel_tol = 1e-9
    abs_tol = 1e-12

    def _zero_payload(self):
        return 0.0

    def _one_payload(self):
        return 1.0

    def _coerce(self, p):
        if isinstance(p, bool) or not isinstance(p, (int, float, Fraction)):
            raise RigError(f"float: unsupported payload {p!r}")
        return self._finite(float(p))

    def _finite(self, x):
        if not math.isfinite(x):
            raise RigError(f"float: non-finite value {x}")
        if x < 0:
            raise RigError(f"float: negative value {x}")
        return x

    def _add(self, p, q):
        return self._finite(p + q)

    def _mul(self, p, q):
        return self._finite(p * q)

    def _inv(self, p):
        return self._finite(1.0 / p)

    def _eq(self, p, q):
        return abs(p - q) <= max(self.rel_tol * max(abs(p), abs(q)), self.abs_tol)

    def _is_zero(self, p):
        return p == 0.0

    def hash_value(self, a):
        # tolerance equality is not transitive, so no payload goes into the hash
        return hash(self.name)

    def _parse(self, text):
        try:
            x = float(text)
        except ValueError:
            raise RigError(f"float: cannot parse {text!r}") from None
        return self._finite(x)

    def _format(self, p):
        return repr(p)


class LatticeRig(Rig):
    """The two-element lattice: join is addition, meet is multiplication."""

    name = "lattice"

    def _zero_payload(self):
        return False

    def _one_payload(self):
        return True

    def _coerce(self, p):
        if p in (0, 1) and isinstance(p, (bool, int)):
            return bool(p)
        raise RigError(f"lattice: unsupported payload {p!r}")

    def _add(self, p, q):
        return p or q

    def _mul(self, p, q):
        return p and q

    def _inv(self, p):
        return True

    def _parse(self, text):
        if text == "1":
            return True
        if text == "0":
            return False
        raise RigError(f"lattice: cannot parse {text!r} (expected 1)")

    def _format(self, p):
        return "1" if p else "0"


BOTTOM = float("-inf")


class TropicalRig(Rig):
    """Max-plus rig on exact reals with ``-inf`` as zero.

    Finite payloads are kept as :class:`~fractions.Fraction` so that sums and
    differences never round; the only division is negation.
    """

    name = "tropical"
    _literal = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)(/\d+)?")

    def _zero_payload(self):
        return BOTTOM

    def _one_payload(self):
        return Fraction(0)

    def _coerce(self, p):
        if isinstance(p, bool):
            raise RigError(f"tropical: unsupported payload {p!r}")
        if isinstance(p, float):
            if p == BOTTOM:
                return BOTTOM
            if not math.isfinite(p):
                raise RigError(f"tropical: unsupported payload {p!r}")
            return Fraction(repr(p))
        if isinstance(p, (int, Fraction)):
            return Fraction(p)
        if isinstance(p, str):
            return self._parse(p)
        raise RigError(f"tropical: unsupported payload {p!r}")

    def _add(self, p, q):
        return max(p, q)

    def _mul(self, p, q):
        if p == BOTTOM or q == BOTTOM:
            return BOTTOM
        return p + q

    def _inv(self, p):
        return -p

    def _parse(self, text):
        if text == "-inf":
            return BOTTOM
        if not self._literal.fullmatch(text):
            raise RigError(f"tropical: cannot parse {text!r}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise RigError(f"tropical: cannot parse {text!r}") from None

    def _format(self, p):
        if p == BOTTOM:
            return "-inf"
        return _decimal_or_fraction(p)


def _decimal_or_fraction(p: Fraction) -> str:
    """Exact decimal when the denominator is 2^a 5^b, else ``p/q``."""
    if p.denominator == 1:
        return str(p.numerator)
    d = p.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return str(p)
    digits = max(twos, fives)
    scaled = abs(p.numerator) * (10**digits // p.denominator)
    sign = "-" if p < 0 else ""
    whole, frac = divmod(scaled, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


RATIONAL = RationalRig()
FLOAT = FloatRig()
LATTICE = LatticeRig()
TROPICAL = TropicalRig()

RIGS = {r.name: r for r in (RATIONAL, FLOAT, LATTICE, TROPICAL)}


def get_rig(name: str) -> Rig:
    try:
        return RIGS[name]
    except KeyError:
        raise RigError(f"unknown rig {name!r}; choose from {sorted(RIGS)}") from None
