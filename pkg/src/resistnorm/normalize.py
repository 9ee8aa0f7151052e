"""Reduction to mesh normal form and the equality decision procedure."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .network import Circuit, CircuitError, Edge
from .rewrite import Trace, eliminate_internal, merge_parallel, short_circuit
from .rig import Rig, RigError, RigValue

__all__ = [
    "NormalForm",
    "EliminationOrder",
    "MinDegree",
    "RandomOrder",
    "FixedOrder",
    "order_policy",
    "normalize",
    "decide_eq",
    "is_normal",
]


@dataclass(frozen=True)
class NormalForm:
    """Port partition plus a loop-free, parallel-free mesh on the port blocks.

    ``partition[k]`` is the smallest port index sharing a node with port
    ``k``. ``mesh`` lists ``((i, j), conductance)`` with ``i < j`` block ids,
    sorted.
    """

    rig: Rig
    dom: int
    cod: int
    partition: tuple[int, ...]
    mesh: tuple[tuple[tuple[int, int], RigValue], ...]

    @classmethod
    def from_circuit(cls, c: Circuit) -> "NormalForm":
        if not is_normal(c):
            raise CircuitError("circuit is not in normal form")
        block = {}
        for k, node in enumerate(c.ports):
            block.setdefault(node, k)
        mesh = []
        for e in c.edges:
            i, j = sorted((block[e.u], block[e.v]))
            mesh.append(((i, j), e.conductance))
        mesh.sort(key=lambda item: item[0])
        return cls(c.rig, c.dom, c.cod, tuple(block[n] for n in c.ports), tuple(mesh))

    @property
    def signature(self) -> tuple[int, int]:
        return (self.dom, self.cod)

    @property
    def blocks(self) -> list[list[int]]:
        out = {}
        for k, b in enumerate(self.partition):
            out.setdefault(b, []).append(k)
        return [out[b] for b in sorted(out)]

    def to_circuit(self) -> Circuit:
        """The mesh as a circuit whose node ids are the block ids."""
        return Circuit(self.rig, self.dom, self.cod, self.partition, set(self.partition),
                       [Edge(i, j, y) for (i, j), y in self.mesh])

    def format(self) -> str:
        blocks = ", ".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)
        mesh = ", ".join(f"{i}-{j}:{self.rig.format(y)}" for (i, j), y in self.mesh)
        return f"partition: [{blocks}] ; mesh: {mesh}".rstrip()

    def __str__(self):
        return self.format()


class EliminationOrder:
    """Picks the next internal node to eliminate."""

    def choose(self, c: Circuit, candidates: Sequence[int]) -> int:
        raise NotImplementedError


class MinDegree(EliminationOrder):
    """Smallest current degree first, ties broken by node id."""

    def choose(self, c, candidates):
        degree = dict.fromkeys(candidates, 0)
        for e in c.edges:
            if e.u in degree:
                degree[e.u] += 1
            if e.v in degree:
                degree[e.v] += 1
        return min(candidates, key=lambda n: (degree[n], n))

    def __repr__(self):
        return "MinDegree()"


class RandomOrder(EliminationOrder):
    """Uniformly random internal node, reproducible from ``seed``."""

    def __init__(self, seed=None):
        self.seed = seed
        self.rng = random.Random(seed)

    def choose(self, c, candidates):
        return self.rng.choice(sorted(candidates))

    def __repr__(self):
        return f"RandomOrder({self.seed!r})"


class FixedOrder(EliminationOrder):
    """Eliminate the listed nodes first, in order, then defer to ``fallback``."""

    def __init__(self, nodes: Iterable[int], fallback: EliminationOrder | None = None):
        self.nodes = list(nodes)
        self.fallback = fallback or MinDegree()

    def choose(self, c, candidates):
        for n in self.nodes:
            if n in candidates:
                return n
        return self.fallback.choose(c, candidates)


def order_policy(name: str | EliminationOrder | None) -> EliminationOrder:
    """Parse ``"min-degree"`` or ``"random:<seed>"``."""
    if name is None:
        return MinDegree()
    if isinstance(name, EliminationOrder):
        return name
    if name == "min-degree":
        return MinDegree()
    if name.startswith("random:"):
        try:
            return RandomOrder(int(name.split(":", 1)[1]))
        except ValueError:
            pass
    raise ValueError(f"unknown elimination order {name!r} (use min-degree or random:<seed>)")


def normalize(c: Circuit, order: str | EliminationOrder | None = None) -> tuple[NormalForm, Trace]:
    """Rewrite ``c`` to its normal form, recording every step.

    Self-loops are removed first, then parallel edges are merged, then
    internal nodes are eliminated in the order chosen by ``order``.
    """
    policy = order_policy(order)
    trace = Trace(c, c)
    current = c

    for node in sorted({e.u for e in current.edges if e.is_loop}):
        current, step = short_circuit(current, node)
        trace.steps.append(step)

    counts = {}
    for e in current.edges:
        counts[e.pair] = counts.get(e.pair, 0) + 1
    for pair in sorted(p for p, k in counts.items() if k > 1):
        current, step = merge_parallel(current, *pair)
        trace.steps.append(step)

    internal = set(current.internal)
    while internal:
        v = policy.choose(current, sorted(internal))
        current, step = eliminate_internal(current, v)
        trace.steps.append(step)
        internal.discard(v)

    trace.final = current
    return NormalForm.from_circuit(current), trace


def decide_eq(a: Circuit, b: Circuit) -> bool:
    """Equality of circuits in the same hom-set, by comparing normal forms."""
    if a.rig is not b.rig:
        raise RigError(f"rig mismatch: {a.rig.name} vs {b.rig.name}")
    if a.signature != b.signature:
        raise CircuitError(f"signature mismatch: {a.signature} vs {b.signature}")
    return normalize(a)[0] == normalize(b)[0]


def is_normal(c: Circuit) -> bool:
    return c.is_canonical() and not c.internal
