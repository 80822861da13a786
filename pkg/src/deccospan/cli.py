"""Command-line front end.

Exit status: 0 on success, 1 when a check or law fails, 2 on parse or type errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import BACKENDS
from . import cospan as cs
from .circuits import csv_export, dot_export
from .decoration import (
    DecoratedCospan,
    DecoratedMap,
    dcompose,
    diagnose_decorated_map,
    dtensor,
    relabel,
)
from .dynam import euler_integrate
from .errors import BackendMismatch, CospanError, FootMismatch, ParseError
from .finset import FinFunction, FinSet, copair, fsum, identity

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_NETWORK_KEYS = ("backend", "left_foot", "right_foot", "apex", "in_leg", "out_leg", "decoration")


# -- documents ------------------------------------------------------------------

def _int(payload: dict, key: str, where: str) -> int:
    value = payload.get(key)
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise ParseError(f"{where}: '{key}' must be a non-negative integer")
    return value


def _table(payload: dict, key: str, where: str) -> tuple[int, ...]:
    value = payload.get(key)
    if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        raise ParseError(f"{where}: '{key}' must be a list of integers")
    return tuple(value)


def network_from_json(payload: Any, where: str = "network") -> DecoratedCospan:
    if not isinstance(payload, dict):
        raise ParseError(f"{where}: a network must be a JSON object")
    missing = [k for k in _NETWORK_KEYS if k not in payload]
    if missing:
        raise ParseError(f"{where}: missing keys {missing}")
    backend = BACKENDS.get(payload["backend"])
    if backend is None:
        raise ParseError(f"{where}: unknown backend {payload['backend']!r}; expected one of {sorted(BACKENDS)}")
    X = FinSet(_int(payload, "left_foot", where))
    Y = FinSet(_int(payload, "right_foot", where))
    N = FinSet(_int(payload, "apex", where))
    try:
        c = cs.Cospan(X, Y, N, FinFunction(X, N, _table(payload, "in_leg", where)),
                      FinFunction(Y, N, _table(payload, "out_leg", where)))
        return DecoratedCospan(c, backend.from_json(payload["decoration"], N), backend)
    except ParseError as exc:
        raise ParseError(f"{where}: {exc}") from exc
    except CospanError as exc:
        raise ParseError(f"{where}: {exc}") from exc


def network_to_json(d: DecoratedCospan) -> dict[str, Any]:
    c = d.cospan
    return {
        "backend": d.backend.name,
        "left_foot": c.left_foot.size,
        "right_foot": c.right_foot.size,
        "apex": c.apex.size,
        "in_leg": list(c.in_leg.table),
        "out_leg": list(c.out_leg.table),
        "decoration": d.backend.to_json(d.decoration),
    }


def _format(value: Any, depth: int) -> str:
    pad, close = "  " * (depth + 1), "  " * depth
    if isinstance(value, dict) and value:
        items = [f"{pad}{json.dumps(k, ensure_ascii=False)}: {_format(v, depth + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + f"\n{close}}}"
    if isinstance(value, list) and any(isinstance(v, (list, dict)) for v in value):
        return "[\n" + ",\n".join(pad + _format(v, depth + 1) for v in value) + f"\n{close}]"
    return json.dumps(value, ensure_ascii=False)


def dumps(doc: Any) -> str:
    """Canonical text: two-space indented JSON with flat lists on one line."""
    return _format(doc, 0) + "\n"


def _read_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def load_network(path: str | Path) -> DecoratedCospan:
    return network_from_json(_read_json(path), str(path))


# -- pipelines ------------------------------------------------------------------

@dataclass(frozen=True)
class Pipeline:
    networks: dict[str, DecoratedCospan]
    expression: Any


def pipeline_from_json(payload: Any, base: Path = Path("."), where: str = "pipeline") -> Pipeline:
    if not isinstance(payload, dict) or "networks" not in payload or "expression" not in payload:
        raise ParseError(f"{where}: a pipeline needs 'networks' and 'expression'")
    if not isinstance(payload["networks"], dict):
        raise ParseError(f"{where}: 'networks' must map names to networks")
    nets = {}
    for name, value in payload["networks"].items():
        if isinstance(value, str):
            nets[name] = load_network(base / value)
        else:
            nets[name] = network_from_json(value, f"{where}: networks.{name}")
    return Pipeline(nets, payload["expression"])


def _expr_parts(expr: Any, path: str) -> tuple[str, list[Any]]:
    if not isinstance(expr, list) or len(expr) < 2 or expr[0] not in ("compose", "tensor"):
        raise ParseError(f"{path}: expected a network name or [\"compose\"|\"tensor\", arg, ...]")
    return expr[0], expr[1:]


def typecheck(p: Pipeline, expr: Any = None, path: str = "expression") -> tuple[FinSet, FinSet, str]:
    """Feet and backend of an expression, checked over the whole tree before any gluing."""
    expr = p.expression if expr is None else expr
    if isinstance(expr, str):
        if expr not in p.networks:
            raise ParseError(f"{path}: unknown network {expr!r}")
        d = p.networks[expr]
        return d.left_foot, d.right_foot, d.backend.name
    op, args = _expr_parts(expr, path)
    types = [typecheck(p, a, f"{path}[{k + 1}]") for k, a in enumerate(args)]
    backend = types[0][2]
    for k, t in enumerate(types):
        if t[2] != backend:
            raise BackendMismatch(f"{path}[{k + 1}]: backend {t[2]!r} differs from {backend!r}")
    if op == "tensor":
        return (FinSet(sum(t[0].size for t in types)), FinSet(sum(t[1].size for t in types)), backend)
    for k in range(1, len(types)):
        if types[k - 1][1] != types[k][0]:
            raise FootMismatch(f"{path}: right foot {types[k - 1][1].size} of argument {k} does not "
                               f"match left foot {types[k][0].size} of argument {k + 1}")
    return types[0][0], types[-1][1], backend


def evaluate_pipeline(p: Pipeline, expr: Any = None,
                      path: str = "expression") -> tuple[DecoratedCospan, FinFunction]:
    """Evaluate; also return the provenance map from the leaves' joint apex onto the result apex."""
    expr = p.expression if expr is None else expr
    if isinstance(expr, str):
        d = p.networks[expr]
        return d, identity(d.apex)
    op, args = _expr_parts(expr, path)
    acc, prov = evaluate_pipeline(p, args[0], f"{path}[1]")
    for k, a in enumerate(args[1:], start=2):
        nxt, nprov = evaluate_pipeline(p, a, f"{path}[{k}]")
        if op == "tensor":
            acc, prov = dtensor(acc, nxt), fsum(prov, nprov)
        else:
            _, po = cs.glue(acc.cospan, nxt.cospan)
            acc = dcompose(acc, nxt)
            prov = copair(prov.then(po.left_leg), nprov.then(po.right_leg))
    return acc, prov


def normalize(d: DecoratedCospan, provenance: FinFunction) -> DecoratedCospan:
    """Renumber the apex by least leaf element landing on each node."""
    first: dict[int, int] = {}
    for leaf_elt, node in enumerate(provenance.table):
        first.setdefault(node, leaf_elt)
    order = sorted(range(d.apex.size), key=lambda node: first[node])
    rank = [0] * d.apex.size
    for new, node in enumerate(order):
        rank[node] = new
    return relabel(d, FinFunction(d.apex, d.apex, tuple(rank)))


def run_pipeline(p: Pipeline, normalized: bool = False) -> DecoratedCospan:
    typecheck(p)
    result, prov = evaluate_pipeline(p)
    return normalize(result, prov) if normalized else result


# -- subcommands -----------------------------------------------------------------

def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _pipeline_from_files(files: Sequence[str], op: str) -> Pipeline:
    if len(files) == 1 and op == "compose":
        payload = _read_json(files[0])
        if isinstance(payload, dict) and "expression" in payload:
            return pipeline_from_json(payload, Path(files[0]).parent, files[0])
    nets = {f"n{k}": load_network(f) for k, f in enumerate(files)}
    names = list(nets)
    return Pipeline(nets, names[0] if len(names) == 1 else [op, *names])


def cmd_compose(args: argparse.Namespace) -> int:
    result = run_pipeline(_pipeline_from_files(args.files, "compose"), args.normalize)
    _emit(dumps(network_to_json(result)), args.output)
    return EXIT_OK


def cmd_tensor(args: argparse.Namespace) -> int:
    result = run_pipeline(_pipeline_from_files(args.files, "tensor"), args.normalize)
    _emit(dumps(network_to_json(result)), args.output)
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    src, tgt = load_network(args.source), load_network(args.target)
    if src.backend.name != tgt.backend.name:
        raise BackendMismatch(f"source is {src.backend.name!r}, target is {tgt.backend.name!r}")
    payload = _read_json(args.map)
    if not isinstance(payload, dict):
        raise ParseError(f"{args.map}: expected an object with 'apex_map'")
    try:
        h = FinFunction(src.apex, tgt.apex, _table(payload, "apex_map", args.map))
    except CospanError as exc:
        raise ParseError(f"{args.map}: {exc}") from exc
    problems = diagnose_decorated_map(DecoratedMap(h), src, tgt)
    if problems:
        for p in problems:
            print(f"check failed: {p}", file=sys.stderr)
        return EXIT_FAIL
    print("ok: valid 2-morphism")
    return EXIT_OK


def cmd_laws(args: argparse.Namespace) -> int:
    from .laws import CaseGenerator, reports_json, run_all

    backends = list(BACKENDS.values()) if args.backend == "all" else [BACKENDS[args.backend]]
    gen = CaseGenerator(seed=args.seed, max_set_size=args.max_size, case_count=args.cases)
    reports = run_all(gen, backends)
    text = "\n".join(r.text() for r in reports) + "\n"
    if args.format == "json":
        _emit(reports_json(reports) + "\n", args.output)
        sys.stderr.write(text)
    else:
        _emit(text, args.output)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_export(args: argparse.Namespace) -> int:
    d = load_network(args.network)
    if d.backend.name == "circuit":
        text = dot_export(d) if args.format == "dot" else csv_export(d)
    elif args.format == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["node", "component"])
        for k, p in enumerate(d.decoration.components):
            writer.writerow([k, str(p)])
        text = out.getvalue()
    else:
        raise BackendMismatch("DOT export needs a circuit network")
    _emit(text, args.output)
    return EXIT_OK


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {text!r}") from exc


def cmd_simulate(args: argparse.Namespace) -> int:
    d = load_network(args.network)
    if d.backend.name != "vectfield":
        raise BackendMismatch("simulate needs a vectfield network")
    n = d.apex.size
    start = [_fraction(t) for t in args.start.split(",")] if args.start else [Fraction(0)] * n
    step = _fraction(args.step)
    if step <= 0:
        raise ParseError("--step must be positive")
    traj = euler_integrate(d.decoration, start, step, args.steps)
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["step", "t", *(f"x{k}" for k in range(n))])
    fmt = (lambda q: repr(float(q))) if args.float else str
    for k, x in enumerate(traj):
        writer.writerow([k, fmt(k * step), *(fmt(c) for c in x)])
    _emit(out.getvalue(), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="deccospan", description=__doc__.splitlines()[0] if __doc__ else None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compose", help="evaluate a pipeline, or compose network files left to right")
    p.add_argument("files", nargs="+")
    p.add_argument("--normalize", action="store_true", help="renumber the apex by leaf provenance")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("tensor", help="tensor network files left to right")
    p.add_argument("files", nargs="+")
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("check", help="decide whether an apex map is a 2-morphism")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("map", help='JSON file {"apex_map": [...]}')
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("laws", help="run the law suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-size", type=int, default=4)
    p.add_argument("--cases", type=int, default=1000)
    p.add_argument("--backend", choices=["all", *BACKENDS], default="all")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_laws)

    p = sub.add_parser("export", help="export a network as DOT or CSV")
    p.add_argument("network")
    p.add_argument("--format", choices=["dot", "csv"], default="dot")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("simulate", help="Euler-integrate a vector-field network")
    p.add_argument("network")
    p.add_argument("--start", help="comma-separated rationals, default all zero")
    p.add_argument("--step", default="1/10")
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--float", action="store_true", help="print floats instead of exact fractions")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CospanError, ValueError) as exc:
        code = getattr(exc, "code", "E_VALUE")
        print(f"error[{code}]: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
