"""Independent semantics and generators for checking the rewrite engine.

The response matrix of a rational circuit is its weighted Laplacian with
every internal node removed by an exact Schur complement (Kron reduction).
It is computed over signed fractions and shares no arithmetic with the
rewrite rules. For the lattice rig the analogous check is plain
connectivity.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .network import Circuit, Edge, UnionFind
from .normalize import MinDegree, NormalForm, RandomOrder, normalize
from .rig import LATTICE, RATIONAL, Rig, RigValue, get_rig

__all__ = [
    "UnsupportedRig",
    "OracleError",
    "ResponseMatrix",
    "laplacian",
    "schur_complement",
    "eliminate_one",
    "port_partition",
    "response_matrix",
    "mesh_laplacian",
    "agrees_with_normal_form",
    "reachability_closure",
    "mesh_pairs",
    "CircuitGenSpec",
    "default_sampler",
    "random_circuit",
    "unit_star_circuit",
    "parallel_star_circuit",
    "star_star_circuit",
    "CampaignResult",
    "check_circuit",
    "run_campaign",
]


class UnsupportedRig(ValueError):
    """The oracle only understands a specific rig."""


class OracleError(RuntimeError):
    """Singular elimination or another state positive conductances rule out."""


Matrix = list[list[Fraction]]


@dataclass(frozen=True)
class ResponseMatrix:
    """Boundary Laplacian indexed by port blocks (smallest port index of each node)."""

    blocks: tuple[int, ...]
    matrix: tuple[tuple[Fraction, ...], ...]

    def entry(self, i: int, j: int) -> Fraction:
        return self.matrix[self.blocks.index(i)][self.blocks.index(j)]

    def is_symmetric(self) -> bool:
        n = len(self.blocks)
        return all(self.matrix[i][j] == self.matrix[j][i] for i in range(n) for j in range(i))

    def has_zero_row_sums(self) -> bool:
        return all(sum(row) == 0 for row in self.matrix)

    def has_nonpositive_offdiagonal(self) -> bool:
        return all(x <= 0 for i, row in enumerate(self.matrix)
                   for j, x in enumerate(row) if i != j)


def laplacian(nodes: list, edges: list[tuple]) -> Matrix:
    """Weighted Laplacian ``sum_e y_e b_e b_e^T`` with ``b_e`` the signed incidence vector.

    ``edges`` holds ``(u, v, Fraction)``; a self-loop has a zero incidence
    vector and contributes nothing.
    """
    index = {n: k for k, n in enumerate(nodes)}
    size = len(nodes)
    L = [[Fraction(0)] * size for _ in range(size)]
    for u, v, y in edges:
        b = [0] * size
        b[index[u]] += 1
        b[index[v]] -= 1
        support = [k for k in range(size) if b[k]]
        for i in support:
            for j in support:
                L[i][j] += y * b[i] * b[j]
    return L


def _solve(A: Matrix, B: Matrix) -> Matrix:
    """Exact solution ``X`` of ``A X = B`` by Gauss-Jordan elimination."""
    n = len(A)
    width = len(B[0]) if B else 0
    M = [list(A[i]) + list(B[i]) for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if M[r][col] != 0), None)
        if pivot is None:
            raise OracleError("singular internal block in Schur complement")
        M[col], M[pivot] = M[pivot], M[col]
        p = M[col][col]
        M[col] = [x / p for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [row[n:n + width] for row in M]


def schur_complement(L: Matrix, keep: list[int], drop: list[int]) -> Matrix:
    """``L_KK - L_KD L_DD^{-1} L_DK`` for index lists ``keep`` and ``drop``."""
    LKK = [[L[i][j] for j in keep] for i in keep]
    if not drop:
        return LKK
    LDD = [[L[i][j] for j in drop] for i in drop]
    LDK = [[L[i][j] for j in keep] for i in drop]
    X = _solve(LDD, LDK)
    return [[LKK[a][b] - sum(L[keep[a]][drop[t]] * X[t][b] for t in range(len(drop)))
             for b in range(len(keep))] for a in range(len(keep))]


def eliminate_one(L: Matrix, k: int) -> Matrix:
    """Schur complement of a single pivot; row and column ``k`` disappear."""
    pivot = L[k][k]
    if pivot == 0:
        raise OracleError("zero pivot")
    rest = [i for i in range(len(L)) if i != k]
    return [[L[i][j] - L[i][k] * L[k][j] / pivot for j in rest] for i in rest]


def port_partition(c: Circuit) -> tuple[int, ...]:
    first = {}
    for k, node in enumerate(c.ports):
        first.setdefault(node, k)
    return tuple(first[n] for n in c.ports)


def _require_rational(c: Circuit) -> None:
    if c.rig is not RATIONAL:
        raise UnsupportedRig(f"oracle needs the rational rig, got {c.rig.name}")


def _live_nodes(c: Circuit) -> tuple[list, list]:
    """Boundary nodes ordered by block, and internal nodes attached to some boundary node.

    Internal components with no port are electrically floating; their
    Laplacian block is singular and they cannot affect the response.
    """
    uf = UnionFind(c.nodes)
    for e in c.edges:
        uf.union(e.u, e.v)
    first = {}
    for k, node in enumerate(c.ports):
        first.setdefault(node, k)
    grounded = {uf.find(n) for n in first}
    boundary = sorted(first, key=first.get)
    internal = sorted(n for n in c.internal if uf.find(n) in grounded)
    return boundary, internal


def response_matrix(c: Circuit, stepwise: bool = False) -> ResponseMatrix:
    """Kron-reduced Laplacian of a rational circuit.

    With ``stepwise`` the internal nodes are removed one pivot at a time
    instead of as one block; both must agree.
    """
    _require_rational(c)
    boundary, internal = _live_nodes(c)
    live = set(boundary) | set(internal)
    nodes = boundary + internal
    edges = [(e.u, e.v, e.conductance.payload) for e in c.edges if e.u in live]
    L = laplacian(nodes, edges)
    nb = len(boundary)
    if stepwise:
        for _ in internal:
            L = eliminate_one(L, len(L) - 1)
        S = L
    else:
        S = schur_complement(L, list(range(nb)), list(range(nb, len(nodes))))
    first = port_partition(c)
    blocks = tuple(sorted(set(first)))
    return ResponseMatrix(blocks, tuple(tuple(row) for row in S))


def mesh_laplacian(nf: NormalForm) -> ResponseMatrix:
    blocks = tuple(sorted(set(nf.partition)))
    L = laplacian(list(blocks), [(i, j, y.payload) for (i, j), y in nf.mesh])
    return ResponseMatrix(blocks, tuple(tuple(row) for row in L))


def agrees_with_normal_form(c: Circuit, nf: NormalForm | None = None) -> bool:
    """Whether the normal form's mesh Laplacian equals the Kron reduction of ``c``."""
    _require_rational(c)
    if nf is None:
        nf = normalize(c)[0]
    if nf.partition != port_partition(c):
        return False
    return mesh_laplacian(nf) == response_matrix(c)


def reachability_closure(c: Circuit) -> set[tuple[int, int]]:
    """Pairs ``(i, j)``, ``i < j``, of port blocks joined through internal nodes only.

    Two blocks qualify when their nodes share an edge or touch the same
    connected component of the internal subgraph. A path that passes
    through a third boundary node does not count: eliminating internal
    nodes never bypasses a boundary node.
    """
    if c.rig is not LATTICE:
        raise UnsupportedRig(f"reachability oracle needs the lattice rig, got {c.rig.name}")
    internal = c.internal
    uf = UnionFind(internal)
    for e in c.edges:
        if e.u in internal and e.v in internal:
            uf.union(e.u, e.v)
    first = {}
    for k, node in enumerate(c.ports):
        first.setdefault(node, k)
    touches = {n: set() for n in first}
    for e in c.edges:
        for a, b in ((e.u, e.v), (e.v, e.u)):
            if a in touches:
                touches[a].add(("node", b) if b in touches else ("comp", uf.find(b)))
    pairs = set()
    reps = sorted(first.items(), key=lambda item: item[1])
    for a, (ni, bi) in enumerate(reps):
        for nj, bj in reps[a + 1:]:
            if ("node", nj) in touches[ni] or any(
                    t[0] == "comp" and t in touches[nj] for t in touches[ni]):
                pairs.add((bi, bj))
    return pairs


def mesh_pairs(nf: NormalForm) -> set[tuple[int, int]]:
    return {pair for pair, _ in nf.mesh}


# random generation


Sampler = Callable[[random.Random], RigValue]


def default_sampler(rig: Rig) -> Sampler:
    """A sampler of non-zero conductances suited to ``rig``."""
    if rig.name == "rational":
        return lambda rng: rig.value(Fraction(rng.randint(1, 12), rng.randint(1, 6)))
    if rig.name == "float":
        return lambda rng: rig.value(rng.uniform(0.1, 10.0))
    if rig.name == "lattice":
        return lambda rng: rig.one
    if rig.name == "tropical":
        return lambda rng: rig.value(Fraction(rng.randint(-20, 20), 2))
    raise UnsupportedRig(f"no default sampler for rig {rig.name}")


@dataclass
class CircuitGenSpec:
    max_nodes: int = 12
    max_edges: int = 30
    max_ports: int = 6
    rig: Rig = RATIONAL
    sampler: Sampler | None = None
    seed: int = 0
    loop_rate: float = 0.05
    parallel_rate: float = 0.15
    dom: int | None = None
    cod: int | None = None

    def __post_init__(self):
        if isinstance(self.rig, str):
            self.rig = get_rig(self.rig)
        if self.max_nodes < 1 or self.max_edges < 0 or self.max_ports < 0:
            raise ValueError("generator bounds must be positive")


def random_circuit(spec: CircuitGenSpec) -> Circuit:
    """Seeded random circuit within the given bounds.

    Shapes that matter for rewriting all occur with positive probability:
    parallel edges, self-loops, pendant and isolated internal nodes, and
    several ports on one node. Setting both ``spec.dom`` and ``spec.cod``
    fixes the signature.
    """
    rng = random.Random(spec.seed)
    sample = spec.sampler or default_sampler(spec.rig)
    k = rng.randint(1, spec.max_nodes)
    if spec.dom is not None and spec.cod is not None:
        nports, dom = spec.dom + spec.cod, spec.dom
    else:
        nports = rng.randint(min(1, spec.max_ports), spec.max_ports)
        dom = rng.randint(0, nports)
    ports = [rng.randrange(k) for _ in range(nports)]
    edges = []
    for _ in range(rng.randint(0, spec.max_edges)):
        if edges and rng.random() < spec.parallel_rate:
            u, v, _y = rng.choice(edges)
        elif k == 1 or rng.random() < spec.loop_rate:
            u = v = rng.randrange(k)
        else:
            u, v = rng.sample(range(k), 2)
        edges.append((u, v, sample(rng)))
    return Circuit(spec.rig, dom, nports - dom, ports, range(k), edges)


# critical-pair configurations


def _lift(values, rig):
    """RigValues from raw payloads; the rig defaults to that of the first RigValue seen."""
    if rig is None:
        rig = next((v.rig for v in values if isinstance(v, RigValue)), RATIONAL)
    return [rig.value(v) for v in values], rig


def unit_star_circuit(ys, x, rig: Rig | None = None) -> tuple[Circuit, int, int]:
    """Star centre ``a`` with arms ``ys`` to ports and arm ``x`` to a pendant node ``b``.

    Returns ``(circuit, a, b)``.
    """
    (*ys, x), rig = _lift([*ys, x], rig)
    m = len(ys)
    a, b = m, m + 1
    edges = [Edge(i, a, y) for i, y in enumerate(ys)] + [Edge(a, b, x)]
    return Circuit(rig, m, 0, range(m), range(m + 2), edges), a, b


def parallel_star_circuit(parallel_ys, other_ys, rig: Rig | None = None) -> tuple[Circuit, int]:
    """Star whose arms ``parallel_ys`` all land on port node 0; ``other_ys`` go to nodes 1..n.

    Returns ``(circuit, centre)``.
    """
    values, rig = _lift([*parallel_ys, *other_ys], rig)
    parallel_ys, other_ys = values[:len(parallel_ys)], values[len(parallel_ys):]
    n = len(other_ys)
    centre = n + 1
    edges = [Edge(0, centre, y) for y in parallel_ys]
    edges += [Edge(j + 1, centre, y) for j, y in enumerate(other_ys)]
    return Circuit(rig, 1, n, range(n + 1), range(n + 2), edges), centre


def star_star_circuit(ys, x, us, rig: Rig | None = None) -> tuple[Circuit, int, int]:
    """Internal ``a`` (arms ``ys``) and ``b`` (arms ``us``) joined by ``x``; a circuit m -> n.

    Returns ``(circuit, a, b)``.
    """
    values, rig = _lift([*ys, x, *us], rig)
    m, n = len(ys), len(us)
    ys, x, us = values[:m], values[m], values[m + 1:]
    a, b = m + n, m + n + 1
    edges = [Edge(i, a, y) for i, y in enumerate(ys)]
    edges += [Edge(m + j, b, u) for j, u in enumerate(us)]
    edges.append(Edge(a, b, x))
    return Circuit(rig, m, n, range(m + n), range(m + n + 2), edges), a, b


# fuzz campaign


@dataclass
class CampaignResult:
    rig: str
    count: int
    passed: int = 0
    steps: int = 0
    failures: list[tuple[int, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def report(self) -> str:
        lines = [f"rig={self.rig} circuits={self.count} passed={self.passed} "
                 f"failed={len(self.failures)} steps={self.steps}"]
        lines += [f"FAIL circuit {i}: {why}" for i, why in self.failures]
        return "\n".join(lines)


def check_circuit(c: Circuit, orders: int, seed: int) -> tuple[list[str], int]:
    """Run every consistency check on one circuit; returns (problems, steps seen)."""
    problems = []
    policies = [MinDegree()] + [RandomOrder(seed * 1000 + j) for j in range(orders)]
    results = [normalize(c, p) for p in policies]
    reference = results[0][0]
    steps = 0
    for policy, (nf, trace) in zip(policies, results):
        steps += len(trace.steps)
        if nf != reference:
            problems.append(f"{policy!r} disagrees: {nf} vs {reference}")
        if trace.violations():
            problems.append(f"{policy!r}: measure did not decrease")
        if trace.replay() != trace.final:
            problems.append(f"{policy!r}: trace replay mismatch")
    if c.rig is RATIONAL and not agrees_with_normal_form(c, reference):
        problems.append("normal form disagrees with Kron reduction")
    if c.rig is LATTICE and mesh_pairs(reference) != reachability_closure(c):
        problems.append("normal form disagrees with reachability")
    return problems, steps


def run_campaign(rig: Rig | str = RATIONAL, count: int = 100, seed: int = 0,
                 max_nodes: int = 12, max_edges: int = 30, max_ports: int = 6,
                 orders: int = 10) -> CampaignResult:
    """Confluence, termination and oracle checks over ``count`` seeded circuits."""
    rig = get_rig(rig) if isinstance(rig, str) else rig
    result = CampaignResult(rig.name, count)
    for i in range(count):
        spec = CircuitGenSpec(max_nodes, max_edges, max_ports, rig, seed=seed * 1_000_003 + i)
        problems, steps = check_circuit(random_circuit(spec), orders, spec.seed)
        result.steps += steps
        if problems:
            result.failures.append((i, "; ".join(problems)))
        else:
            result.passed += 1
    return result
