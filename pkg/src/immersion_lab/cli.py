"""Command-line interface: ``immersion-lab <command> ...``.

Graphs are read in the text format (``v id`` / ``e id u v``) from a file or
standard input.  Exit codes: 0 success, 1 violation or absence, 2 input
error, 3 capacity exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import generators as gen
from .decomposition import (
    TreeDecomposition,
    bridge_block_tree,
    decompose_nearly_4ec,
    validate_decomposition,
)
from .errors import Budget, CapacityError, InputError
from .immersion import (
    HalfIntegralImmersion,
    Immersion,
    Thorns,
    find_immersion,
    find_thorns,
    verify_half_integral,
    verify_immersion,
    verify_subdivision,
    verify_thorns,
)
from .multigraph import EdgeCut, Multigraph, duplicate_edges, immersion_expansion, line_graph, parse, serialize
from .solver import ep_experiment, family_instances, half_integral_packing, max_packing, min_cover, rows_to_csv, FAMILIES
from .tangle import (
    Separation,
    check_edge_tangle_axioms,
    check_tangle_axioms,
    cut_to_json,
    edge_tangle_from_json,
    edge_tangle_to_json,
    find_edge_tangles,
    separation_to_json,
    tangle_from_json,
)
from .verdict import Verdict

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2, 3

PATTERNS = {
    "k2": lambda: gen.complete(2),
    "k3": lambda: gen.complete(3),
    "k4": lambda: gen.complete(4),
    "theta2": lambda: gen.theta_graph(2),
    "theta4": lambda: gen.theta_graph(4),
    **{f"c{n}": (lambda n=n: gen.cycle(n)) for n in range(3, 9)},
}


def _read_text(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _read_graph(path: str | None) -> Multigraph:
    return parse(_read_text(path))


def _read_json(path: str) -> Any:
    try:
        return json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {path}: {exc.msg}") from None


def _pattern(name: str) -> Multigraph:
    key = name.lower()
    if key in PATTERNS:
        return PATTERNS[key]()
    return _read_graph(name)


def _jsonable(x: Any) -> Any:
    if isinstance(x, EdgeCut):
        return cut_to_json(x)
    if isinstance(x, Separation):
        return separation_to_json(x)
    if isinstance(x, (frozenset, set)):
        return sorted(_jsonable(v) for v in x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    return x


def _emit(obj: Any) -> None:
    sys.stdout.write(json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n")


def _emit_verdict(v: Verdict) -> int:
    _emit({"ok": v.ok, "reason": v.reason, "witness": v.witness})
    return EXIT_OK if v.ok else EXIT_FAIL


# --------------------------------------------------------------- commands


def cmd_gen(args) -> int:
    if args.family == "wall":
        g = gen.wall(args.m, args.n)
    elif args.family == "grid":
        g = gen.grid(args.m, args.n)
    elif args.family == "theta":
        g = gen.theta_graph(args.r)
    elif args.family == "doubled-cycle":
        g = gen.doubled_cycle(args.n)
    else:  # paper-wall
        g = gen.paper_wall_2r_r(args.r)
    sys.stdout.write(serialize(g))
    return EXIT_OK


def cmd_linegraph(args) -> int:
    sys.stdout.write(serialize(line_graph(_read_graph(args.graph))[0]))
    return EXIT_OK


def cmd_expand(args) -> int:
    sys.stdout.write(serialize(immersion_expansion(_read_graph(args.graph))[0]))
    return EXIT_OK


def cmd_double(args) -> int:
    sys.stdout.write(serialize(duplicate_edges(_read_graph(args.graph), args.k)[0]))
    return EXIT_OK


def cmd_find_immersion(args) -> int:
    g = _read_graph(args.graph)
    imm = find_immersion(g, _pattern(args.H), budget=Budget())
    if imm is None:
        _emit({"found": False})
        return EXIT_FAIL
    _emit(imm.to_json())
    return EXIT_OK


def cmd_find_thorns(args) -> int:
    g = _read_graph(args.graph)
    th = find_thorns(g, _pattern(args.H), budget=Budget())
    if th is None:
        _emit({"found": False})
        return EXIT_FAIL
    _emit(th.to_json())
    return EXIT_OK


def cmd_edge_tangles(args) -> int:
    g = _read_graph(args.graph)
    found = find_edge_tangles(g, args.order, limit=1, budget=Budget())
    if not found:
        _emit({"found": False})
        return EXIT_FAIL
    _emit(edge_tangle_to_json(found[0]))
    return EXIT_OK


def cmd_verify(args) -> int:
    cert = _read_json(args.certificate)
    kind = args.kind
    if kind in ("immersion", "half-integral", "subdivision"):
        host = _read_graph(args.graph) if args.graph is not None else None
        if kind == "half-integral":
            imm = HalfIntegralImmersion.from_json(cert, host)
            return _emit_verdict(verify_half_integral(imm))
        imm = Immersion.from_json(cert, host)
        return _emit_verdict(verify_immersion(imm) if kind == "immersion" else verify_subdivision(imm))
    g = _read_graph(args.graph)
    if kind == "thorns":
        return _emit_verdict(verify_thorns(Thorns.from_json(cert, g)))
    if kind == "tangle":
        return _emit_verdict(check_tangle_axioms(tangle_from_json(cert, g), budget=Budget()))
    if kind == "edge-tangle":
        return _emit_verdict(check_edge_tangle_axioms(edge_tangle_from_json(cert, g), budget=Budget()))
    dec = TreeDecomposition.from_json(cert)
    return _emit_verdict(validate_decomposition(g, dec))


def cmd_pack(args) -> int:
    g = _read_graph(args.graph)
    res = max_packing(g, _pattern(args.H), args.kmax, Budget())
    _emit(res.to_json())
    return EXIT_OK


def cmd_pack_half(args) -> int:
    g = _read_graph(args.graph)
    res = half_integral_packing(g, _pattern(args.H), args.kmax, Budget())
    _emit(res.to_json())
    return EXIT_OK


def cmd_cover(args) -> int:
    g = _read_graph(args.graph)
    res = min_cover(g, _pattern(args.H), Budget())
    _emit(res.to_json())
    return EXIT_OK


def cmd_decompose(args) -> int:
    g = _read_graph(args.graph)
    dec = bridge_block_tree(g) if args.kind == "2ec" else decompose_nearly_4ec(g)
    _emit(dec.to_json())
    return EXIT_OK


def parse_sizes(text: str) -> list[int]:
    out = []
    try:
        for chunk in text.split(","):
            if ".." in chunk:
                lo, hi = chunk.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(chunk))
    except ValueError:
        raise InputError(f"bad size list {text!r}; use e.g. 3..6 or 3,5,7") from None
    return out


def cmd_experiment(args) -> int:
    h = _pattern(args.H)
    rows = ep_experiment(family_instances(args.family, parse_sizes(args.sizes)), h, args.H, args.kmax)
    sys.stdout.write(rows_to_csv(rows, timing=not args.no_timing))
    return EXIT_OK


# ----------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="immersion-lab", description=__doc__.splitlines()[0])
    p.add_argument("--jobs", type=int, default=1, help="accepted for scripting; output does not depend on it")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="emit a named graph family")
    g.add_argument("family", choices=["wall", "grid", "theta", "doubled-cycle", "paper-wall"])
    g.add_argument("-m", type=int, default=1)
    g.add_argument("-n", type=int, default=1)
    g.add_argument("-r", type=int, default=1)
    g.set_defaults(func=cmd_gen)

    def graph_cmd(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("graph", nargs="?", default=None, help="graph file (default: stdin)")
        sp.set_defaults(func=func)
        return sp

    graph_cmd("linegraph", cmd_linegraph, "line graph L(G)")
    graph_cmd("expand", cmd_expand, "immersion expansion of G")
    graph_cmd("double", cmd_double, "duplicate every edge").add_argument("-k", type=int, default=2)

    for name, func, help_text in (
        ("find-immersion", cmd_find_immersion, "search for an H-immersion"),
        ("find-thorns", cmd_find_thorns, "search for H-thorns"),
        ("pack", cmd_pack, "max number of edge-disjoint H-immersions"),
        ("pack-half", cmd_pack_half, "max half-integral packing of H-immersions"),
        ("cover", cmd_cover, "min edge set meeting every H-immersion"),
    ):
        sp = graph_cmd(name, func, help_text)
        sp.add_argument("-H", required=True, help="pattern alias (k2,k3,k4,theta2,theta4,c3..c8) or graph file")
        if name.startswith("pack"):
            sp.add_argument("--kmax", type=int, default=64)

    et = graph_cmd("edge-tangles", cmd_edge_tangles, "materialize an edge-tangle of the given order")
    et.add_argument("--order", type=int, required=True)

    v = sub.add_parser("verify", help="check a certificate")
    v.add_argument("kind", choices=["immersion", "half-integral", "subdivision", "thorns", "tangle", "edge-tangle", "decomposition"])
    v.add_argument("certificate")
    v.add_argument("graph", nargs="?", default=None, help="host graph file (default: stdin where required)")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("decompose", help="bridge tree or nearly-4-edge-connected decomposition")
    d.add_argument("kind", choices=["2ec", "near4ec"])
    d.add_argument("graph", nargs="?", default=None)
    d.set_defaults(func=cmd_decompose)

    x = sub.add_parser("experiment", help="packing/covering table as CSV")
    x.add_argument("--family", required=True, choices=sorted(FAMILIES))
    x.add_argument("--sizes", required=True, help="e.g. 3..6 or 3,5,7")
    x.add_argument("-H", required=True)
    x.add_argument("--kmax", type=int, default=64)
    x.add_argument("--no-timing", action="store_true", help="leave runtime_ms empty for byte-stable output")
    x.set_defaults(func=cmd_experiment)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapacityError as exc:
        print(f"capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY


if __name__ == "__main__":
    sys.exit(main())
