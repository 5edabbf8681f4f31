"""Command-line interface: line-delimited JSON on stdout, summaries on stderr.

Examples::

    sympl gen --field q --n 6 --k 2 --bound 10 --seed 7 > inst.jsonl
    sympl basis inst.jsonl
    sympl graph-lemma graph.json
    sympl verify --suite theorem-bound --count 20
"""

from __future__ import annotations

import argparse
import json
import sys

from . import harness
from .errors import SymplError
from .fields import QQ, GroundField
from .graphs import SimpleGraph, disjoint_disconnected_pairs, oracle_max_disjoint_pairs
from .heights import AdelicAutomorphism, form_height, height_matrix, height_vector
from .linalg import matrix_from_json, matrix_to_json, vector_from_json
from .symplectic import (
    SymplecticSpace,
    hyperbolic_decomposition,
    isotropic_flags,
    symplectic_basis,
    verify_bounds,
)


def _field(args) -> GroundField:
    if args.field == "q":
        return QQ
    if args.p is None:
        parser_error("--field fp(t) needs --p")
    return GroundField(args.p)


def parser_error(msg: str):
    raise SystemExit(f"sympl: error: {msg}")


def _read_objects(path: str):
    stream = sys.stdin if path == "-" else open(path, encoding="utf-8")
    try:
        text = stream.read()
    finally:
        if stream is not sys.stdin:
            stream.close()
    text = text.strip()
    if not text:
        return []
    try:
        obj = json.loads(text)
        return obj if isinstance(obj, list) else [obj]
    except json.JSONDecodeError:
        return [json.loads(line) for line in text.splitlines() if line.strip()]


class _Out:
    def __init__(self, path: str | None):
        self.fh = open(path, "w", encoding="utf-8") if path else sys.stdout

    def emit(self, obj) -> None:
        self.fh.write(json.dumps(obj) + "\n")

    def close(self) -> None:
        if self.fh is not sys.stdout:
            self.fh.close()


def _automorphism(obj: dict, space: SymplecticSpace) -> AdelicAutomorphism:
    if "automorphism" in obj:
        return AdelicAutomorphism.from_json(obj["automorphism"], space.field)
    return AdelicAutomorphism.identity(space.field, space.N)


def cmd_gen(args, out: _Out) -> int:
    field = _field(args)
    for i in range(args.count):
        params = harness.GenParams(field, args.n, args.k, args.bound, args.seed + i)
        out.emit(harness.generate_instance(params).to_json())
    print(f"generated {args.count} instance(s)", file=sys.stderr)
    return 0


def _solve(obj):
    space = SymplecticSpace.from_json(obj)
    A = _automorphism(obj, space)
    return space, A, symplectic_basis(A, space)


def cmd_basis(args, out: _Out) -> int:
    failures = 0
    for obj in _read_objects(args.input):
        space, A, basis = _solve(obj)
        report = verify_bounds(A, space, basis)
        failures += not report.all_satisfied
        out.emit({"basis": basis.to_json(), "report": report.to_json()})
    print(f"{failures} instance(s) with a failed bound", file=sys.stderr)
    return int(failures > 0)


def cmd_decompose(args, out: _Out) -> int:
    for obj in _read_objects(args.input):
        space, A, basis = _solve(obj)
        planes = hyperbolic_decomposition(basis)
        heights = [height_matrix(A, H.matrix, "columns") for H in planes]
        out.emit({
            "planes": [matrix_to_json(H.matrix) for H in planes],
            "heights": [h.to_json() for h in heights],
        })
    return 0


def cmd_flags(args, out: _Out) -> int:
    for obj in _read_objects(args.input):
        space, A, basis = _solve(obj)
        out.emit(isotropic_flags(basis, A).to_json())
    return 0


def cmd_graph_lemma(args, out: _Out) -> int:
    for obj in _read_objects(args.input):
        G = SimpleGraph.from_json(obj)
        k = G.n // 2
        if G.n % 2:
            parser_error("graphs must have an even number of vertices")
        pairs = disjoint_disconnected_pairs(G, k)
        out.emit({"k": k, "M": (k + 1) // 2, "pairs": pairs.to_json(), "oracle": oracle_max_disjoint_pairs(G)})
    return 0


def cmd_heights(args, out: _Out) -> int:
    """Input objects carry ``field`` and one of ``vector``, ``matrix`` or ``form``."""
    for obj in _read_objects(args.input):
        field = GroundField.from_json(obj.get("field", {"name": "q"}))
        if "vector" in obj:
            x = vector_from_json(obj["vector"], field)
            A = AdelicAutomorphism.from_json(obj["automorphism"], field) if "automorphism" in obj else AdelicAutomorphism.identity(field, len(x))
            h = height_vector(A, x)
        elif "matrix" in obj:
            X = matrix_from_json(obj["matrix"], field)
            orientation = obj.get("orientation")
            N = {"rows": len(X[0]), "columns": len(X)}.get(orientation, max(len(X), len(X[0])))
            A = AdelicAutomorphism.from_json(obj["automorphism"], field) if "automorphism" in obj else AdelicAutomorphism.identity(field, N)
            h = height_matrix(A, X, orientation)
        elif "form" in obj:
            h = form_height(matrix_from_json(obj["form"], field))
        else:
            parser_error("heights input needs one of 'vector', 'matrix', 'form'")
        out.emit({"height": h.to_json(), "approx": float(h)})
    return 0


def cmd_verify(args, out: _Out) -> int:
    names = harness.SUITES if args.suite == "all" else [args.suite]
    status = 0
    for name in names:
        report = harness.run_suite(name, args.count, args.seed)
        out.emit(report.to_json() if args.full else report.summary())
        s = report.summary()
        print(f"{name}: {s['passed']}/{s['count']} passed in {s['elapsedSeconds']}s", file=sys.stderr)
        status |= not report.ok
    return int(status)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sympl", description="Heights, Siegel bases and symplectic bases of small height.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, *, instance_input=True):
        p.add_argument("--output", help="write JSON lines here instead of stdout")
        if instance_input:
            p.add_argument("input", nargs="?", default="-", help="JSON or JSON-lines file ('-' for stdin)")

    g = sub.add_parser("gen", help="generate random regular instances")
    g.add_argument("--field", choices=["q", "fp(t)"], default="q")
    g.add_argument("--p", type=int)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--bound", type=int, default=10)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--count", type=int, default=1)
    common(g, instance_input=False)

    for name, help_ in (
        ("basis", "symplectic basis and bound report"),
        ("decompose", "hyperbolic planes"),
        ("flags", "isotropic flags"),
        ("graph-lemma", "disjoint disconnected pairs and the oracle count"),
        ("heights", "exact height of a vector, matrix or form"),
    ):
        common(sub.add_parser(name, help=help_))

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", default="all", choices=["all", *harness.SUITES])
    v.add_argument("--count", type=int, help="instances per suite (default: acceptance size)")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--full", action="store_true", help="emit per-instance records")
    common(v, instance_input=False)
    return ap


COMMANDS = {
    "gen": cmd_gen,
    "basis": cmd_basis,
    "decompose": cmd_decompose,
    "flags": cmd_flags,
    "graph-lemma": cmd_graph_lemma,
    "heights": cmd_heights,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = _Out(args.output)
    try:
        return COMMANDS[args.command](args, out)
    except SymplError as exc:
        print(f"sympl: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    finally:
        out.close()


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
