"""Single rewrite steps, the termination measure, and traces.

Three rules act on circuits:

``short_circuit``
    delete the self-loops at a node (a resistor shunted by a wire);
``parallel``
    replace all edges between two nodes by one carrying their sum;
``star_mesh``
    remove an internal node and connect every pair of its neighbours
    ``i, j`` by ``y_i * y_j / sum(y)``.

Each step strictly decreases the measure ``(N, P)``: the node count and
the number of surplus edges (edges beyond one per pair of distinct
nodes, so every self-loop is surplus).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .network import Circuit, CircuitError, Edge, canonicalize
from .rig import Rig, RigValue

__all__ = [
    "RewriteError",
    "Measure",
    "RewriteStep",
    "Trace",
    "measure",
    "star_to_mesh",
    "eliminate_internal",
    "merge_parallel",
    "short_circuit",
    "apply_step",
]


class RewriteError(RuntimeError):
    """A rewrite hit a state that a positive rig makes impossible."""


class Measure(NamedTuple):
    N: int
    P: int

    def __str__(self):
        return f"({self.N},{self.P})"


def measure(c: Circuit) -> Measure:
    pairs = {e.pair for e in c.edges if not e.is_loop}
    return Measure(len(c.nodes), len(c.edges) - len(pairs))


@dataclass(frozen=True)
class RewriteStep:
    """One applied rule together with its effect on the measure."""

    rule: str
    node: int | None
    pair: tuple[int, int] | None
    deleted: tuple[Edge, ...]
    created: tuple[Edge, ...]
    before: Measure
    after: Measure

    @property
    def degree(self) -> int | None:
        return len(self.deleted) if self.rule == "star_mesh" else None

    @property
    def decreasing(self) -> bool:
        return self.after < self.before

    def __str__(self):
        # trace line: <rule> <node or -> -> <u-v:value, ...> (N,P)
        parts = [self.rule, "-" if self.node is None else str(self.node), "->"]
        if self.created:
            parts.append(", ".join(str(e) for e in self.created))
        parts.append(str(self.after))
        return " ".join(parts)


@dataclass
class Trace:
    initial: Circuit
    final: Circuit
    steps: list[RewriteStep] = field(default_factory=list)

    def replay(self) -> Circuit:
        c = self.initial
        for step in self.steps:
            c = apply_step(c, step)
        return c

    def violations(self) -> list[RewriteStep]:
        """Steps that fail to decrease the measure (should be empty)."""
        return [s for s in self.steps if not s.decreasing]

    def format(self) -> str:
        return "\n".join(str(s) for s in self.steps)


def star_to_mesh(arms: Sequence[tuple[int, RigValue]], rig: Rig | None = None):
    """Mesh conductances replacing a star with the given arms.

    Returns ``[((i, j), Y_ij), ...]`` with ``i <= j`` for every pair of arms,
    in arm order, where ``Y_ij = y_i * y_j * inv(sum_k y_k)``. Zero or one
    arm gives an empty mesh. Repeated neighbours yield entries ``(i, i)``,
    which later canonicalisation removes as short circuits.
    """
    if len(arms) < 2:
        return []
    ys = [y for _, y in arms]
    rig = rig or ys[0].rig
    sigma = rig.sum(ys)
    if rig.is_zero(sigma):
        raise RewriteError(f"star arms sum to zero in rig {rig.name}; rig is not positive")
    scale = rig.inv(sigma)
    out = []
    for a in range(len(arms)):
        na, ya = arms[a]
        ya_scaled = ya * scale
        for b in range(a + 1, len(arms)):
            nb, yb = arms[b]
            pair = (na, nb) if na <= nb else (nb, na)
            out.append((pair, ya_scaled * yb))
    return out


def eliminate_internal(c: Circuit, v: int) -> tuple[Circuit, RewriteStep]:
    """Apply the star-mesh rule at internal node ``v``; the result is canonical."""
    if v not in c.nodes:
        raise CircuitError(f"node {v} does not exist")
    if v in c.boundary:
        raise CircuitError(f"node {v} is a boundary node")
    arms_edges = c.incident(v)
    if any(e.is_loop for e in arms_edges):
        raise CircuitError(f"node {v} carries a self-loop; short-circuit it first")
    arms = [(e.other(v), e.conductance) for e in arms_edges]
    created = tuple(Edge(i, j, y) for (i, j), y in star_to_mesh(arms, c.rig))
    kept = [e for e in c.edges if v not in (e.u, e.v)]
    out = canonicalize(c.replace(nodes=c.nodes - {v}, edges=kept + list(created)))
    step = RewriteStep("star_mesh", v, None, tuple(arms_edges), created, measure(c), measure(out))
    return out, step


def merge_parallel(c: Circuit, u: int, v: int) -> tuple[Circuit, RewriteStep]:
    """Collapse all edges between distinct nodes ``u`` and ``v`` into one."""
    pair = (u, v) if u <= v else (v, u)
    if u == v:
        raise CircuitError("merge_parallel needs two distinct nodes; use short_circuit for loops")
    group = [e for e in c.edges if e.pair == pair]
    if len(group) < 2:
        raise CircuitError(f"fewer than two edges between {u} and {v}")
    total = c.rig.sum(e.conductance for e in group)
    merged = Edge(pair[0], pair[1], total)
    edges, placed = [], False
    for e in c.edges:
        if e.pair != pair:
            edges.append(e)
        elif not placed:
            edges.append(merged)
            placed = True
    out = c.replace(edges=edges)
    step = RewriteStep("parallel", None, pair, tuple(group), (merged,), measure(c), measure(out))
    return out, step


def short_circuit(c: Circuit, u: int) -> tuple[Circuit, RewriteStep]:
    """Delete every self-loop at ``u``."""
    loops = tuple(e for e in c.edges if e.is_loop and e.u == u)
    if not loops:
        raise CircuitError(f"node {u} has no self-loop")
    out = c.replace(edges=[e for e in c.edges if not (e.is_loop and e.u == u)])
    step = RewriteStep("short_circuit", u, (u, u), loops, (), measure(c), measure(out))
    return out, step


def apply_step(c: Circuit, step: RewriteStep) -> Circuit:
    if step.rule == "star_mesh":
        return eliminate_internal(c, step.node)[0]
    if step.rule == "parallel":
        return merge_parallel(c, *step.pair)[0]
    if step.rule == "short_circuit":
        return short_circuit(c, step.node)[0]
    raise RewriteError(f"unknown rule {step.rule!r}")
