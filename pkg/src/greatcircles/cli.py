"""Command-line interface: generate | color | claims | export."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import chains, claims, coloring, geometry, render
from ._util import atomic_write
from .arrangement import adjacency_from_edges, antipodal_involution, build_graph, parse_dimacs, to_dimacs
from .errors import GreatCircleError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2
EXIT_TIMEOUT = 3


class _Parser(argparse.ArgumentParser):
    # usage problems exit 1 (argparse defaults to 2, which is reserved here)
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _parse_range(text: str) -> list[int]:
    if ".." in text:
        a, b = text.split("..", 1)
        lo, hi = int(a), int(b)
        if hi < lo:
            raise ValueError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    return [int(text)]


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="greatcircles", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp, with_input=True):
        if with_input:
            sp.add_argument("--fixture", choices=geometry.FIXTURE_NAMES)
            sp.add_argument("--k", type=int)
            sp.add_argument("--seed", type=int)
        sp.add_argument("--eps", type=float, default=geometry.EPS_SEP,
                        help="angular tolerance override (applied to all checks)")
        sp.add_argument("--timeout", type=float, default=60.0)
        sp.add_argument("--out", type=Path)

    g = sub.add_parser("generate", help="write an arrangement file and print its summary")
    add_common(g)

    c = sub.add_parser("color", help="3-color an arrangement (or a DIMACS graph)")
    add_common(c)
    c.add_argument("--in", dest="infile", type=Path)
    c.add_argument("--method", choices=("chain", "exact"), default="chain")

    cl = sub.add_parser("claims", help="run claim checks over a fixture/seed grid")
    cl.add_argument("--claim", action="append", choices=claims.CLAIM_IDS + ("all",))
    cl.add_argument("--k", type=str, help="k or k range, e.g. 5 or 3..6")
    cl.add_argument("--seeds", type=str, help="seed or seed range, e.g. 0..9")
    cl.add_argument("--fixture", action="append", choices=geometry.FIXTURE_NAMES)
    cl.add_argument("--eps", type=float, default=geometry.EPS_SEP)
    cl.add_argument("--timeout", type=float, default=60.0)
    cl.add_argument("--chain-max-nodes", type=int, default=chains.DEFAULT_NODE_BUDGET)
    cl.add_argument("--jobs", type=int, default=1)
    cl.add_argument("--archive-dir", type=Path, default=Path("counterexamples"))
    cl.add_argument("--out", type=Path)

    e = sub.add_parser("export", help="export an arrangement in a chosen format")
    add_common(e)
    e.add_argument("--in", dest="infile", type=Path)
    e.add_argument("--format", dest="fmt", required=True,
                   choices=("arrangement-text", "dimacs", "coloring", "svg", "report"))
    e.add_argument("--coloring", type=Path, help="coloring file (for svg)")
    e.add_argument("--horizon", action="store_true",
                   help="project from a pole of circle 0 (circle 0 becomes the horizon)")
    return p


def _echo_config(args: argparse.Namespace) -> None:
    cfg = {k: (str(v) if isinstance(v, Path) else v) for k, v in sorted(vars(args).items())}
    print("config " + json.dumps(cfg, sort_keys=True))


def _resolve_circles(args) -> list[geometry.GreatCircle]:
    have_file = getattr(args, "infile", None) is not None
    if args.fixture is not None:
        return geometry.fixture_arrangement(args.fixture)
    if args.k is not None and args.seed is not None:
        return geometry.generate_random(args.k, args.seed, eps_dup=args.eps, eps_sep=args.eps)
    if have_file:
        return geometry.parse_arrangement(args.infile.read_text(), eps_dup=args.eps)
    raise GreatCircleError("no input: give --fixture, --k with --seed, or --in FILE")


def _emit(args, text: str) -> None:
    if args.out is not None:
        atomic_write(args.out, text)
    else:
        sys.stdout.write(text)


def cmd_generate(args) -> int:
    _echo_config(args)
    circles = _resolve_circles(args)
    g = build_graph(circles, eps_dup=args.eps, eps_on=args.eps, eps_sep=args.eps)
    tris = chains.enumerate_triangles(g)
    if args.out is None:
        args.out = Path((args.fixture or f"k{args.k}-seed{args.seed}") + ".txt")
    atomic_write(args.out, geometry.write_arrangement(circles))
    print(f"k={g.k} V={g.n_vertices} E={g.n_edges} F={g.n_faces} triangles={len(tris)}")
    return EXIT_OK


def _is_dimacs(path: Path) -> bool:
    for ln in path.read_text().splitlines():
        t = ln.split()
        if not t or t[0] == "c" or ln.lstrip().startswith("#"):
            continue
        return t[0] == "p"
    return False


def cmd_color(args) -> int:
    _echo_config(args)
    if args.infile is not None and _is_dimacs(args.infile):
        if args.method != "exact":
            print("error: DIMACS input carries no geometry; use --method exact", file=sys.stderr)
            return EXIT_USAGE
        n, pairs = parse_dimacs(args.infile.read_text())
        adj = adjacency_from_edges(n, pairs)
        result = coloring.color_exact(adj, timeout=args.timeout)
        return _finish_color(args, adj, result.status, result.coloring, coloring.STAGE_EXACT)

    circles = _resolve_circles(args)
    g = build_graph(circles, eps_dup=args.eps, eps_on=args.eps, eps_sep=args.eps)
    if args.method == "exact":
        result = coloring.color_exact(g, timeout=args.timeout)
        return _finish_color(args, g, result.status, result.coloring, coloring.STAGE_EXACT)

    tris = chains.enumerate_triangles(g)
    sigma = antipodal_involution(g)
    pair = None
    if g.k >= 4:
        search = chains.find_chain_pair(g, tris, sigma)
        if search.status == "found":
            pair = search.pair
            sys.stdout.write(chains.format_chain_report(pair))
        else:
            print(f"note: chain search {search.status}; falling back to the exact solver")
    else:
        print("note: chain method needs k >= 4; falling back to the exact solver")
    hres = coloring.color_chain_heuristic(g, pair, timeout=args.timeout)
    return _finish_color(args, g, hres.status, hres.coloring, hres.trace.stage)


def _finish_color(args, graph_like, status: str, result: coloring.Coloring | None, stage: str) -> int:
    if status == coloring.TIMEOUT:
        print("solver timeout", file=sys.stderr)
        return EXIT_TIMEOUT
    if status == coloring.INFEASIBLE:
        print("no proper 3-coloring exists (counterexample candidate)", file=sys.stderr)
        return EXIT_INFEASIBLE
    assert result is not None
    bad = coloring.verify_proper(graph_like, result)
    if bad:
        print(f"internal error: improper coloring (edges {bad})", file=sys.stderr)
        return EXIT_USAGE
    text = coloring.format_coloring(result, stage)
    if args.out is not None:
        atomic_write(args.out, text)
    else:
        sys.stdout.write(text)
    print(f"stage={stage} proper=true")
    return EXIT_OK


def cmd_claims(args) -> int:
    _echo_config(args)
    claim_ids = args.claim or ["all"]
    if "all" in claim_ids:
        claim_ids = list(claims.CLAIM_IDS)
    instances: list[claims.Instance] = []
    for name in args.fixture or []:
        instances.append(claims.fixture_instance(name))
    if args.k is not None:
        if args.seeds is None:
            print("error: --k needs --seeds for the random grid", file=sys.stderr)
            return EXIT_USAGE
        for k in _parse_range(args.k):
            for seed in _parse_range(args.seeds):
                instances.append(claims.random_instance(k, seed, eps=args.eps))
    if not instances:
        print("error: no instances; give --fixture and/or --k with --seeds", file=sys.stderr)
        return EXIT_USAGE
    reports = claims.sweep(claim_ids, instances, timeout=args.timeout,
                           chain_max_nodes=args.chain_max_nodes,
                           archive_dir=args.archive_dir, jobs=args.jobs)
    text = claims.format_report(reports)
    if args.out is not None:
        atomic_write(args.out, text)
    sys.stdout.write(text)
    return min(claims.fail_count(reports), 125)


def cmd_export(args) -> int:
    _echo_config(args)
    circles = _resolve_circles(args)
    g = build_graph(circles, eps_dup=args.eps, eps_on=args.eps, eps_sep=args.eps)

    if args.fmt == "arrangement-text":
        _emit(args, geometry.write_arrangement(circles))
        return EXIT_OK
    if args.fmt == "dimacs":
        _emit(args, to_dimacs(g))
        return EXIT_OK
    if args.fmt == "coloring":
        if args.coloring is not None:
            col, stage = coloring.parse_coloring(args.coloring.read_text())
            _emit(args, coloring.format_coloring(col, stage or coloring.STAGE_EXACT))
            return EXIT_OK
        result = coloring.color_exact(g, timeout=args.timeout)
        if result.status != coloring.FOUND:
            print(f"solver did not produce a coloring: {result.status}", file=sys.stderr)
            return EXIT_INFEASIBLE if result.status == coloring.INFEASIBLE else EXIT_TIMEOUT
        _emit(args, coloring.format_coloring(result.coloring, coloring.STAGE_EXACT))
        return EXIT_OK
    if args.fmt == "report":
        inst = claims.file_instance(str(args.infile or args.fixture or "instance"), circles, eps=args.eps)
        single = [c for c in claims.CLAIM_IDS if c != "fixed_k_isomorphic"]
        reports = claims.sweep(single, [inst], timeout=args.timeout)
        _emit(args, claims.format_report(reports))
        return EXIT_OK

    # svg
    col = None
    if args.coloring is not None:
        col, _stage = coloring.parse_coloring(args.coloring.read_text())
    else:
        print("warning: no coloring given; rendering uncolored vertices", file=sys.stderr)
    pair = None
    if g.k >= 4:
        search = chains.find_chain_pair(g, chains.enumerate_triangles(g), antipodal_involution(g))
        if search.status == "found":
            pair = search.pair
    _emit(args, render.render_svg(g, coloring=col, chain_pair=pair, horizon=args.horizon))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {
        "generate": cmd_generate,
        "color": cmd_color,
        "claims": cmd_claims,
        "export": cmd_export,
    }[args.command]
    try:
        return handler(args)
    except GreatCircleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
