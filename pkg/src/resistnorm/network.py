"""Open resistor circuits as quotiented multigraphs.

A :class:`Circuit` ``n -> m`` has ``n + m`` ordered boundary ports (domain
first), each attached to a node, and a multiset of undirected edges that
carry non-zero conductances. Junctions are nodes and bare wires are node
identifications, so spider fusion happens by construction: composing two
circuits glues port nodes together with a union-find and never builds an
explicit wire.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .rig import RATIONAL, Rig, RigError, RigValue

__all__ = [
    "CircuitError",
    "InvalidConductance",
    "CompositionError",
    "UnionFind",
    "Edge",
    "Circuit",
    "Resistor",
    "Spider",
    "Identity",
    "Swap",
    "generator",
    "resistor",
    "spider",
    "identity",
    "swap",
    "empty",
    "cup",
    "cap",
    "compose",
    "tensor",
    "canonicalize",
    "series",
    "parallel",
    "star",
    "transpose",
]


class CircuitError(ValueError):
    """Malformed circuit or misuse of a circuit operation."""


class InvalidConductance(CircuitError):
    """A resistor was given the rig's zero as conductance."""


class CompositionError(CircuitError):
    """Codomain of the first circuit does not match domain of the second."""


class UnionFind:
    """Disjoint sets over hashable, orderable keys; the root of a class is its minimum."""

    def __init__(self, items: Iterable = ()):
        self.parent = {}
        for x in items:
            self.add(x)

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        self.add(x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:  # path compression
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return ra

    def classes(self) -> dict:
        out = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out


@dataclass(frozen=True)
class Edge:
    """Undirected resistor; endpoints are stored with ``u <= v``."""

    u: int
    v: int
    conductance: RigValue

    def __post_init__(self):
        if self.v < self.u:
            u, v = self.v, self.u
            object.__setattr__(self, "u", u)
            object.__setattr__(self, "v", v)

    @property
    def pair(self) -> tuple[int, int]:
        return (self.u, self.v)

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def other(self, node: int) -> int:
        return self.v if node == self.u else self.u

    def __str__(self):
        return f"{self.u}-{self.v}:{self.conductance}"


class Circuit:
    """An open resistor network ``dom -> cod`` over a rig.

    Parameters
    ----------
    rig : Rig
        Conductance domain shared by every edge.
    dom, cod : int
        Numbers of input and output ports.
    ports : sequence of int
        Node of each port, ``dom + cod`` entries, inputs first.
    nodes : iterable of int
        Node ids. Nodes without ports are internal.
    edges : iterable of Edge or (u, v, conductance)
        Resistors; conductances may be RigValues or raw payloads.
    """

    __slots__ = ("rig", "dom", "cod", "ports", "nodes", "edges")

    def __init__(self, rig: Rig, dom: int, cod: int, ports: Sequence[int],
                 nodes: Iterable[int], edges: Iterable = ()):
        self.rig = rig
        self.dom = int(dom)
        self.cod = int(cod)
        self.ports = tuple(ports)
        self.nodes = frozenset(nodes)
        self.edges = tuple(self._edge(e) for e in edges)
        self._validate()

    def _edge(self, e) -> Edge:
        if not isinstance(e, Edge):
            u, v, y = e
            e = Edge(u, v, y)
        y = e.conductance
        if not isinstance(y, RigValue):
            e = Edge(e.u, e.v, self.rig.value(y))
        elif y.rig is not self.rig:
            raise RigError(f"edge conductance from rig {y.rig.name}, circuit is {self.rig.name}")
        if e.conductance.is_zero():
            raise InvalidConductance(f"edge {e.u}-{e.v} has zero conductance")
        return e

    def _validate(self):
        if self.dom < 0 or self.cod < 0:
            raise CircuitError("negative arity")
        if len(self.ports) != self.dom + self.cod:
            raise CircuitError(f"expected {self.dom + self.cod} ports, got {len(self.ports)}")
        for p in self.ports:
            if p not in self.nodes:
                raise CircuitError(f"port attached to unknown node {p}")
        for e in self.edges:
            if e.u not in self.nodes or e.v not in self.nodes:
                raise CircuitError(f"edge {e.u}-{e.v} uses an unknown node")

    @property
    def signature(self) -> tuple[int, int]:
        return (self.dom, self.cod)

    @property
    def boundary(self) -> frozenset:
        return frozenset(self.ports)

    @property
    def internal(self) -> frozenset:
        return self.nodes - self.boundary

    def incident(self, node: int) -> list[Edge]:
        return [e for e in self.edges if node in (e.u, e.v)]

    def degree(self, node: int) -> int:
        """Number of incident edge ends (a self-loop counts twice)."""
        return sum((e.u == node) + (e.v == node) for e in self.edges)

    def edge_map(self) -> dict:
        """``{(u, v): conductance}`` for a canonical circuit."""
        return {e.pair: e.conductance for e in self.edges}

    def is_canonical(self) -> bool:
        pairs = [e.pair for e in self.edges]
        return all(u != v for u, v in pairs) and len(set(pairs)) == len(pairs)

    def replace(self, *, nodes=None, edges=None, ports=None) -> "Circuit":
        return Circuit(self.rig, self.dom, self.cod,
                       self.ports if ports is None else ports,
                       self.nodes if nodes is None else nodes,
                       self.edges if edges is None else edges)

    def relabel(self, mapping: dict) -> "Circuit":
        """Rename nodes through ``mapping``; merging is allowed (it is a quotient)."""
        return Circuit(self.rig, self.dom, self.cod,
                       [mapping[p] for p in self.ports],
                       {mapping[n] for n in self.nodes},
                       [Edge(mapping[e.u], mapping[e.v], e.conductance) for e in self.edges])

    def compact(self) -> "Circuit":
        """Relabel nodes to ``0..k-1`` preserving their order."""
        return self.relabel({n: i for i, n in enumerate(sorted(self.nodes))})

    def __eq__(self, other):
        """Structural equality: same ids and the same edge multiset under rig equality."""
        if not isinstance(other, Circuit):
            return NotImplemented
        if (self.rig is not other.rig or self.signature != other.signature
                or self.ports != other.ports or self.nodes != other.nodes
                or len(self.edges) != len(other.edges)):
            return False
        groups = {}
        for e in self.edges:
            groups.setdefault(e.pair, []).append(e.conductance)
        for e in other.edges:
            bucket = groups.get(e.pair)
            if not bucket:
                return False
            for i, y in enumerate(bucket):
                if y == e.conductance:
                    del bucket[i]
                    break
            else:
                return False
        return True

    __hash__ = None

    def __repr__(self):
        edges = ", ".join(str(e) for e in sorted(self.edges, key=lambda e: e.pair))
        return (f"Circuit({self.rig.name}, {self.dom}->{self.cod}, ports={list(self.ports)}, "
                f"nodes={sorted(self.nodes)}, edges=[{edges}])")


# generators


@dataclass(frozen=True)
class Resistor:
    conductance: RigValue


@dataclass(frozen=True)
class Spider:
    m: int
    n: int
    rig: Rig = RATIONAL


@dataclass(frozen=True)
class Identity:
    rig: Rig = RATIONAL


@dataclass(frozen=True)
class Swap:
    rig: Rig = RATIONAL


GeneratorKind = Union[Resistor, Spider, Identity, Swap]


def generator(kind: GeneratorKind) -> Circuit:
    if isinstance(kind, Resistor):
        y = kind.conductance
        if not isinstance(y, RigValue):
            raise CircuitError("resistor needs a RigValue (use resistor(y, rig) for raw payloads)")
        if y.is_zero():
            raise InvalidConductance("resistor conductance must be non-zero")
        return Circuit(y.rig, 1, 1, (0, 1), (0, 1), [Edge(0, 1, y)])
    if isinstance(kind, Spider):
        if kind.m < 0 or kind.n < 0:
            raise CircuitError("spider arities must be non-negative")
        return Circuit(kind.rig, kind.m, kind.n, (0,) * (kind.m + kind.n), (0,))
    if isinstance(kind, Identity):
        return generator(Spider(1, 1, kind.rig))
    if isinstance(kind, Swap):
        return Circuit(kind.rig, 2, 2, (0, 1, 1, 0), (0, 1))
    raise CircuitError(f"unknown generator {kind!r}")


def resistor(y, rig: Rig | None = None) -> Circuit:
    """Single resistor ``1 -> 1``; ``y`` may be a RigValue or a payload for ``rig``."""
    if not isinstance(y, RigValue):
        y = (rig or RATIONAL).value(y)
    return generator(Resistor(y))


def spider(m: int, n: int, rig: Rig = RATIONAL) -> Circuit:
    return generator(Spider(m, n, rig))


def identity(rig: Rig = RATIONAL) -> Circuit:
    return generator(Identity(rig))


def swap(rig: Rig = RATIONAL) -> Circuit:
    return generator(Swap(rig))


def empty(rig: Rig = RATIONAL) -> Circuit:
    return Circuit(rig, 0, 0, (), ())


def cup(rig: Rig = RATIONAL) -> Circuit:
    return spider(0, 2, rig)


def cap(rig: Rig = RATIONAL) -> Circuit:
    return spider(2, 0, rig)


# canonical form


def canonicalize(c: Circuit) -> Circuit:
    """Delete self-loops and merge parallel edges by rig addition.

    Self-loop deletion is the short-circuit law: a resistor whose ends were
    identified by a wire carries no current. Parallel edges are folded in
    their existing order, then the edge list is sorted by endpoint pair.
    """
    merged = {}
    for e in c.edges:
        if e.is_loop:
            continue
        if e.pair in merged:
            merged[e.pair] = merged[e.pair] + e.conductance
        else:
            merged[e.pair] = e.conductance
    edges = [Edge(u, v, y) for (u, v), y in sorted(merged.items())]
    if tuple(edges) == c.edges:
        return c
    return c.replace(edges=edges)


def _quotient(rig: Rig, dom: int, cod: int, ports, nodes, edges, glue) -> Circuit:
    uf = UnionFind(nodes)
    for a, b in glue:
        uf.union(a, b)
    raw = Circuit(rig, dom, cod, ports, nodes, edges)
    merged = raw.relabel({n: uf.find(n) for n in nodes})
    return canonicalize(merged).compact()


def _same_rig(f: Circuit, g: Circuit) -> Rig:
    if f.rig is not g.rig:
        raise RigError(f"rig mismatch: {f.rig.name} vs {g.rig.name}")
    return f.rig


def _disjoint(f: Circuit, g: Circuit):
    """Shift ``g``'s nodes above ``f``'s; returns (f, shifted g)."""
    f = f.compact()
    g = g.compact()
    offset = len(f.nodes)
    return f, g.relabel({n: n + offset for n in g.nodes})


def compose(f: Circuit, g: Circuit) -> Circuit:
    """Sequential composition ``f ; g`` (diagrammatic order)."""
    rig = _same_rig(f, g)
    if f.cod != g.dom:
        raise CompositionError(f"cannot compose {f.dom}->{f.cod} with {g.dom}->{g.cod}")
    f, g = _disjoint(f, g)
    glue = zip(f.ports[f.dom:], g.ports[:g.dom])
    ports = f.ports[:f.dom] + g.ports[g.dom:]
    return _quotient(rig, f.dom, g.cod, ports, f.nodes | g.nodes,
                     f.edges + g.edges, glue)


def tensor(f: Circuit, g: Circuit) -> Circuit:
    """Parallel (monoidal) product: inputs of f, inputs of g, outputs of f, outputs of g."""
    rig = _same_rig(f, g)
    f, g = _disjoint(f, g)
    ports = f.ports[:f.dom] + g.ports[:g.dom] + f.ports[f.dom:] + g.ports[g.dom:]
    return _quotient(rig, f.dom + g.dom, f.cod + g.cod, ports, f.nodes | g.nodes,
                     f.edges + g.edges, ())


# convenience builders


def series(*ys, rig: Rig | None = None) -> Circuit:
    """Resistors composed end to end."""
    if not ys:
        raise CircuitError("series needs at least one conductance")
    out = resistor(ys[0], rig)
    for y in ys[1:]:
        out = compose(out, resistor(y, rig))
    return out


def parallel(*ys, rig: Rig | None = None) -> Circuit:
    """Resistors sharing both endpoints, built from a copy and a merge spider."""
    if not ys:
        raise CircuitError("parallel needs at least one conductance")
    rs = [resistor(y, rig) for y in ys]
    body = rs[0]
    for r in rs[1:]:
        body = tensor(body, r)
    k = len(ys)
    return compose(compose(spider(1, k, body.rig), body), spider(k, 1, body.rig))


def star(ys, rig: Rig | None = None, dom: int | None = None) -> Circuit:
    """One internal centre with an arm of conductance ``ys[i]`` to port ``i``.

    The first ``dom`` ports are inputs (default: all of them).
    """
    ys = [y if isinstance(y, RigValue) else (rig or RATIONAL).value(y) for y in ys]
    rig = ys[0].rig if ys else (rig or RATIONAL)
    k = len(ys)
    dom = k if dom is None else dom
    centre = k
    return Circuit(rig, dom, k - dom, range(k), range(k + 1),
                   [Edge(i, centre, y) for i, y in enumerate(ys)])


def transpose(f: Circuit) -> Circuit:
    """Bend a ``1 -> 1`` circuit around with a cup and a cap."""
    if f.signature != (1, 1):
        raise CircuitError("transpose is defined here for 1 -> 1 circuits")
    rig = f.rig
    i = identity(rig)
    top = tensor(i, cup(rig))
    middle = tensor(tensor(i, f), i)
    bottom = tensor(cap(rig), i)
    return compose(compose(top, middle), bottom)
