"""Netlist text format and the ``resistnorm`` command line.

Netlist grammar, one statement per line, ``#`` starts a comment::

    rig rational          # rational | float | lattice | tropical
    dom 1
    cod 1
    node a
    node b
    port 0 a              # indices 0..dom+cod-1, inputs first
    port 1 b
    edge a b 3/2          # value in the rig's literal syntax, non-zero

Exit codes: 0 success (``eq``: equal), 1 check failed (``eq``: unequal),
2 usage, I/O or parse error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .network import Circuit, CircuitError, Edge
from .normalize import decide_eq, normalize, order_policy
from .oracle import UnsupportedRig, agrees_with_normal_form, response_matrix, run_campaign
from .rig import RIGS, RigError, get_rig

__all__ = ["NetlistError", "parse_netlist", "emit_netlist", "load_netlist", "run", "main"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class NetlistError(ValueError):
    """Parse diagnostic carrying a stable ``code`` and the offending line number."""

    def __init__(self, code: str, line: int | None, message: str):
        self.code = code
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message} [{code}]")


def parse_netlist(text: str) -> Circuit:
    rig = None
    arity = {}
    nodes = {}
    ports = {}
    port_lines = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, *args = line.split()
        if word == "rig":
            if len(args) != 1:
                raise NetlistError("syntax", lineno, "expected: rig <name>")
            if rig is not None:
                raise NetlistError("duplicate-header", lineno, "rig declared twice")
            if args[0] not in RIGS:
                raise NetlistError("unknown-rig", lineno, f"unknown rig {args[0]!r}")
            rig = get_rig(args[0])
        elif word in ("dom", "cod"):
            if len(args) != 1 or not args[0].isdigit():
                raise NetlistError("syntax", lineno, f"expected: {word} <count>")
            if word in arity:
                raise NetlistError("duplicate-header", lineno, f"{word} declared twice")
            arity[word] = int(args[0])
        elif word == "node":
            if len(args) != 1:
                raise NetlistError("syntax", lineno, "expected: node <id>")
            if args[0] in nodes:
                raise NetlistError("duplicate-node", lineno, f"node {args[0]!r} declared twice")
            nodes[args[0]] = len(nodes)
        elif word == "port":
            if len(args) != 2 or not args[0].isdigit():
                raise NetlistError("syntax", lineno, "expected: port <index> <node-id>")
            index, name = int(args[0]), args[1]
            if index in ports:
                raise NetlistError("duplicate-port", lineno, f"port {index} assigned twice")
            if name not in nodes:
                raise NetlistError("undeclared-node", lineno, f"node {name!r} not declared")
            ports[index] = nodes[name]
            port_lines[index] = lineno
        elif word == "edge":
            if len(args) != 3:
                raise NetlistError("syntax", lineno, "expected: edge <node-id> <node-id> <value>")
            if rig is None:
                raise NetlistError("missing-header", lineno, "rig must be declared before edges")
            for name in args[:2]:
                if name not in nodes:
                    raise NetlistError("undeclared-node", lineno, f"node {name!r} not declared")
            try:
                y = rig.parse(args[2])
            except RigError as exc:
                raise NetlistError("bad-value", lineno, str(exc)) from None
            if y.is_zero():
                raise NetlistError("zero-conductance", lineno, "conductance must be non-zero")
            edges.append(Edge(nodes[args[0]], nodes[args[1]], y))
        else:
            raise NetlistError("syntax", lineno, f"unknown statement {word!r}")

    if rig is None:
        raise NetlistError("missing-header", None, "no rig declared")
    for word in ("dom", "cod"):
        if word not in arity:
            raise NetlistError("missing-header", None, f"no {word} declared")
    total = arity["dom"] + arity["cod"]
    for index in ports:
        if index >= total:
            raise NetlistError("bad-port", port_lines[index],
                               f"port index {index} out of range 0..{total - 1}")
    missing = [k for k in range(total) if k not in ports]
    if missing:
        raise NetlistError("missing-port", None, f"ports without a node: {missing}")
    return Circuit(rig, arity["dom"], arity["cod"], [ports[k] for k in range(total)],
                   nodes.values(), edges)


def emit_netlist(c: Circuit) -> str:
    """Netlist text for ``c``; node ``k`` is written as ``n<k>``."""
    name = {n: f"n{n}" for n in c.nodes}
    lines = [f"rig {c.rig.name}", f"dom {c.dom}", f"cod {c.cod}"]
    lines += [f"node {name[n]}" for n in sorted(c.nodes)]
    lines += [f"port {k} {name[n]}" for k, n in enumerate(c.ports)]
    lines += [f"edge {name[e.u]} {name[e.v]} {c.rig.format(e.conductance)}" for e in c.edges]
    return "\n".join(lines) + "\n"


def load_netlist(path: str | Path) -> Circuit:
    return parse_netlist(Path(path).read_text())


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="resistnorm",
                                 description="Normalize resistor networks and decide their equality.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="print the mesh normal form of a netlist")
    p.add_argument("file")
    p.add_argument("--trace", action="store_true", help="also print every rewrite step")
    p.add_argument("--order", default="min-degree", help="min-degree or random:<seed>")

    p = sub.add_parser("eq", help="exit 0 if two netlists denote the same circuit, else 1")
    p.add_argument("a")
    p.add_argument("b")

    p = sub.add_parser("oracle", help="compare the normal form with the Kron-reduced Laplacian")
    p.add_argument("file")

    p = sub.add_parser("fuzz", help="seeded confluence, termination and oracle campaign")
    p.add_argument("--rig", default="rational", choices=sorted(RIGS))
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-nodes", type=int, default=12)
    p.add_argument("--max-edges", type=int, default=30)
    p.add_argument("--max-ports", type=int, default=6)
    p.add_argument("--orders", type=int, default=10)
    return ap


def _matrix_text(rm) -> str:
    width = max((len(str(x)) for row in rm.matrix for x in row), default=1)
    header = "block " + " ".join(f"{b:>{width}}" for b in rm.blocks)
    rows = [f"{b:>5} " + " ".join(f"{str(x):>{width}}" for x in row)
            for b, row in zip(rm.blocks, rm.matrix)]
    return "\n".join([header] + rows)


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK

    try:
        if args.command == "normalize":
            nf, trace = normalize(load_netlist(args.file), order_policy(args.order))
            print(nf.format(), file=stdout)
            if args.trace:
                for step in trace.steps:
                    print(step, file=stdout)
            return EXIT_OK

        if args.command == "eq":
            equal = decide_eq(load_netlist(args.a), load_netlist(args.b))
            print("equal" if equal else "not equal", file=stdout)
            return EXIT_OK if equal else EXIT_FAIL

        if args.command == "oracle":
            c = load_netlist(args.file)
            nf, _ = normalize(c)
            print(nf.format(), file=stdout)
            print(_matrix_text(response_matrix(c)), file=stdout)
            agree = agrees_with_normal_form(c, nf)
            print("agree" if agree else "DISAGREE", file=stdout)
            return EXIT_OK if agree else EXIT_FAIL

        if args.command == "fuzz":
            result = run_campaign(args.rig, args.count, args.seed, args.max_nodes,
                                  args.max_edges, args.max_ports, args.orders)
            print(result.report(), file=stdout)
            return EXIT_OK if result.ok else EXIT_FAIL
    except (OSError, NetlistError, CircuitError, RigError, UnsupportedRig, ValueError) as exc:
        print(f"resistnorm {args.command}: {exc}", file=stderr)
        return EXIT_USAGE
    return EXIT_USAGE


def main() -> None:
    sys.exit(run())
