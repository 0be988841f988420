"""Command-line front end.

Subcommands: solve, exact, delta, gen, verify, bench.  Machine output is
JSON (half-integers as *_doubled integers, never floats) or CSV for
bench.  Exit codes: 0 success / verified, 1 invalid input or failed
verification, 2 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .graph_core import (
    CapExceededError,
    DELTA_VERTEX_CAP,
    Graph,
    GraphFormatError,
    GraphValidationError,
    apsp,
    four_point_delta,
    generate,
    grid_graph,
    load_graph,
    path_graph,
    random_tree,
    serialize_graph,
    subdivide,
)
from .geodesics import family_eccentricity, is_isometric
from .oracle import OracleCaps, exact_optimum
from .rooted_cover import verify_packing
from .solver import SolveOptions, solve

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_CAP = 2


def _default_threads() -> int:
    env = os.environ.get("KGC_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def _read_graph(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as handle:
        return load_graph(handle)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(payload, out: str | None) -> None:
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", out)


def cmd_solve(args) -> int:
    g = _read_graph(args.graph)
    opts = SolveOptions(
        tau_hat_doubled=args.tau_hat_doubled,
        gamma_doubled=args.gamma_doubled,
        prune=not args.no_prune,
        threads=args.threads,
        delta_max_vertices=args.delta_cap,
        best_effort=args.best_effort,
    )
    result = solve(g, args.k, opts)
    _emit_json(result.as_dict(), args.output)
    return EXIT_OK


def cmd_exact(args) -> int:
    g = _read_graph(args.graph)
    caps = OracleCaps(max_paths=args.max_paths, max_combinations=args.max_combinations)
    result = exact_optimum(g, apsp(g), args.k, caps)
    _emit_json(result.as_dict(), args.output)
    return EXIT_OK


def cmd_delta(args) -> int:
    g = _read_graph(args.graph)
    delta = four_point_delta(apsp(g), max_vertices=args.cap)
    _emit_json({"delta_doubled": delta.doubled}, args.output)
    return EXIT_OK


def cmd_gen(args) -> int:
    params = {
        "n": args.n,
        "m": args.m,
        "w": args.w,
        "h": args.h,
        "leaves": args.leaves,
        "seed": args.seed,
    }
    params = {k: v for k, v in params.items() if v is not None}
    kind = {"tree": "random_tree", "random": "random_connected"}.get(args.type, args.type)
    g = generate(kind, **params)
    if args.subdivide is not None:
        g = subdivide(g, args.subdivide)
    _emit(serialize_graph(g), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _read_graph(args.graph)
    D = apsp(g)
    with open(args.cover, "r", encoding="utf-8") as handle:
        data = json.load(handle)

    paths = data.get("paths")
    if paths is None:
        paths = data.get("cover")
    report: dict = {}
    ok = True

    if paths is not None:
        paths = [tuple(int(v) for v in p) for p in paths]
        isometric = all(is_isometric(D, p) for p in paths)
        ecc = family_eccentricity(g, paths) if paths else None
        cover_ok = isometric and ecc is not None and ecc <= args.radius
        report["cover"] = {
            "paths": len(paths),
            "isometric": isometric,
            "eccentricity": ecc,
            "radius": args.radius,
            "ok": cover_ok,
        }
        ok = ok and cover_ok
    else:
        report["cover"] = None

    rooted = data.get("rooted")
    if rooted is None and "packing_witness" in data:
        rooted = data
    if rooted is not None and rooted.get("packing_witness"):
        witness = rooted["packing_witness"]
        packing_ok = verify_packing(
            g,
            D,
            int(rooted["root"]),
            int(witness["R"]),
            [int(v) for v in witness["vertices"]],
        )
        report["packing"] = {
            "root": int(rooted["root"]),
            "R": int(witness["R"]),
            "size": len(witness["vertices"]),
            "ok": packing_ok,
        }
        ok = ok and packing_ok

    if report.get("cover") is None and "packing" not in report:
        raise ValueError("nothing to verify: no 'paths', 'cover', or packing witness")
    report["ok"] = ok
    _emit_json(report, args.output)
    return EXIT_OK if ok else EXIT_INVALID


def _bench_graph(family: str, size: int, seed: int) -> Graph:
    if family == "path":
        return path_graph(size)
    if family == "tree":
        return random_tree(size, seed)
    if family == "grid":
        return grid_graph(size, size)
    raise ValueError(f"unknown bench family {family!r}")


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    rows = ["n,m,k,R_u,radius,tau_hat_doubled,wall_ms"]
    for size in sizes:
        g = _bench_graph(args.family, size, args.seed)
        opts = SolveOptions(
            tau_hat_doubled=args.tau_hat_doubled,
            threads=args.threads,
            delta_max_vertices=args.delta_cap,
        )
        start = time.perf_counter()
        result = solve(g, args.k, opts)
        wall_ms = int((time.perf_counter() - start) * 1000)
        rows.append(
            f"{g.n},{g.m},{args.k},{result.rooted.radius},{result.radius},"
            f"{result.bounds.tau_hat.doubled},{wall_ms}"
        )
    _emit("\n".join(rows) + "\n", args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kgc",
        description="Additive-approximation k-geodesic-center toolkit for "
        "connected unweighted graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_graph(p):
        p.add_argument("-g", "--graph", required=True, help="edge-list file")

    def add_output(p):
        p.add_argument("-o", "--output", default=None, help="output file (default stdout)")

    p = sub.add_parser("solve", help="approximate k-geodesic center")
    add_graph(p)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--gamma-doubled", type=int, default=None,
                   help="fixed pairing shallowness (doubled); default adaptive")
    p.add_argument("--tau-hat-doubled", type=int, default=None,
                   help="supplied thinness bound (doubled); default computed")
    p.add_argument("--threads", type=int, default=_default_threads())
    p.add_argument("--no-prune", action="store_true",
                   help="disable incumbent pruning across roots")
    p.add_argument("--best-effort", action="store_true",
                   help="also try the k best rooted paths, keep the smaller radius")
    p.add_argument("--delta-cap", type=int, default=DELTA_VERTEX_CAP)
    add_output(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("exact", help="exact optimum by exhaustive search")
    add_graph(p)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--max-paths", type=int, default=OracleCaps.max_paths)
    p.add_argument("--max-combinations", type=int, default=OracleCaps.max_combinations)
    add_output(p)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("delta", help="four-point hyperbolicity (doubled)")
    add_graph(p)
    p.add_argument("--cap", type=int, default=DELTA_VERTEX_CAP)
    add_output(p)
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("gen", help="write a generated graph as an edge list")
    p.add_argument("--type", required=True,
                   choices=["path", "cycle", "star", "grid", "random_tree",
                            "random_connected", "tree", "random"])
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--w", type=int, default=None)
    p.add_argument("--h", type=int, default=None)
    p.add_argument("--leaves", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--subdivide", type=int, default=None,
                   help="replace every edge by a path of this many hops")
    add_output(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="re-check a cover/packing JSON artifact")
    add_graph(p)
    p.add_argument("--cover", required=True, help="JSON artifact to verify")
    p.add_argument("--radius", type=int, required=True)
    add_output(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time solve across generated graphs (CSV)")
    p.add_argument("--family", choices=["path", "tree", "grid"], default="path")
    p.add_argument("--sizes", required=True, help="comma-separated sizes")
    p.add_argument("-k", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=_default_threads())
    p.add_argument("--tau-hat-doubled", type=int, default=None)
    p.add_argument("--delta-cap", type=int, default=DELTA_VERTEX_CAP)
    add_output(p)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_INVALID
    try:
        return args.func(args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (GraphFormatError, GraphValidationError, ValueError, OSError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
