"""Command-line entry point.

Exit status: 0 success, 2 usage, 3 computational error, 4 a conjecture
violation or a failed reproduction check.
"""

from __future__ import annotations

import argparse
import logging
import random
import sys

from . import data
from .errors import ConjectureViolation, MVError, ParseError

EXIT_OK, EXIT_USAGE, EXIT_ERROR, EXIT_VIOLATION = 0, 2, 3, 4


def read_picture(arg: str):
    """A picture from a file (user path or bundled name) or inline text."""
    from .kostant import parse_picture

    try:
        text = data.read_joined(arg)
    except FileNotFoundError:
        if "n=" not in arg:
            raise
        text = arg
    return parse_picture(text)


def plain(p):
    return getattr(p, "picture", p)


def read_poly(arg: str, n: int):
    from .exactalg import parse_poly

    try:
        text = data.read_joined(arg)
    except FileNotFoundError:
        text = arg
    return parse_poly(text, n)


def parse_loop(text: str):
    from .kostant import Loop

    nums = [int(x) for x in text.strip("() ").split(",")]
    if len(nums) != 2:
        raise ParseError(f"bad loop {text!r}; expected (l,r)")
    return Loop(*nums)


# picture


def cmd_picture(args) -> int:
    from .kostant import (
        ExtendedPicture,
        compare,
        compare_plain,
        coweights,
        d_stats,
        downset,
        extended,
        format_picture,
        fuse,
    )

    p = read_picture(args.file)
    if args.action == "show":
        print(format_picture(p))
        if isinstance(p, ExtendedPicture):
            lam, mu = coweights(p)
            print("lambda: " + " ".join(map(str, lam)))
            print("mu: " + " ".join(map(str, mu)))
            for (i, j), v in d_stats(p).entries():
                print(f"d[{i},{j}]\t{v}")
        print("weight: " + " ".join(map(str, plain(p).weight())))
    elif args.action == "compare":
        q = read_picture(args.other)
        if isinstance(p, ExtendedPicture) and isinstance(q, ExtendedPicture):
            print(compare(p, q))
        else:
            print(compare_plain(plain(p), plain(q)))
    elif args.action == "fuse":
        if len(args.loops) != 2:
            raise ParseError("fuse needs exactly two loops")
        ep = p if isinstance(p, ExtendedPicture) else extended(p)
        out = fuse(ep, parse_loop(args.loops[0]), parse_loop(args.loops[1]))
        print(format_picture(out if isinstance(p, ExtendedPicture) else out.picture))
    elif args.action == "downset":
        ep = p if isinstance(p, ExtendedPicture) else extended(p)
        for q in sorted(downset(ep, max_loops=args.max_loops), key=format_picture):
            print(format_picture(q))
    return EXIT_OK


# detform


def cmd_detform(args) -> int:
    from .detform import build_graph, build_matrix, format_mask, mv_det, zero_pattern
    from .exactalg import format_poly

    p = plain(read_picture(args.picture))
    order = [int(x) for x in args.order.split(",")] if args.order else None
    wanted = args.show_graph or args.show_matrix or args.show_mask
    if args.show_graph:
        g = build_graph(p)
        print("arrows: " + " ".join(f"L{a + 1}->L{b + 1}" for a, b in sorted(g.arrows)))
        print("edges: " + " ".join(f"L{a + 1}-L{b + 1}" for a, b in sorted(g.edges)))
        print(f"acyclic: {str(g.acyclic).lower()}")
    if args.show_matrix:
        m = build_matrix(p, order)
        for i in range(m.dim):
            print("\t".join(format_poly(m[i, j]) for j in range(m.dim)))
    if args.show_mask:
        print(format_mask(zero_pattern(p, order)))
    if args.show_poly or not wanted:
        print(format_poly(mv_det(p, order)))
    if args.figure:
        from .plotting import plot_line_diagram

        plot_line_diagram(p, args.figure)
    return EXIT_OK


# cluster


def cmd_cluster(args) -> int:
    from .cluster import enumerate_seeds, initial_seed
    from .exactalg import format_poly

    if args.action == "initial":
        s = initial_seed(args.n)
        for k, v in enumerate(s.variables):
            tag = "mutable" if k < len(s.mutable) else "frozen"
            print(f"{k}\t{tag}\t{format_poly(v)}")
        for row in s.B:
            print(" ".join(f"{b:2d}" for b in row))
        return EXIT_OK
    res = enumerate_seeds(
        args.n,
        max_seeds=args.max_seeds,
        max_depth=args.max_depth,
        max_variables=args.max_variables,
        cache=args.resume,
    )
    status = "complete" if res.complete else f"incomplete (stopped at depth {res.depth})"
    print(f"{len(res.variables)} cluster variables, {status}")
    print(f"{len(res.seeds)} seeds")
    if res.key_conflicts:
        print(f"{res.key_conflicts} cluster key conflicts")
    if args.list:
        for v in sorted(res.variables, key=lambda v: (v.degree(), v.sort_key())):
            print(format_poly(v))
    if args.figure:
        from .plotting import plot_growth

        plot_growth(res.history, args.figure, title=f"n = {args.n}")
    return EXIT_OK


# mvbasis


def load_table(args, n: int):
    from .mvbasis import BasisTable, ingest

    table = BasisTable(n, auto=True)
    for path in args.table or ():
        ingest(table, data.read(path))
    return table


def cmd_mvbasis(args) -> int:
    from .kostant import format_picture
    from .mvbasis import convolve, expand, leading_picture

    if args.action == "convolve":
        p, q = plain(read_picture(args.p)), plain(read_picture(args.q))
        coeffs = convolve(load_table(args, p.n), p, q)
    elif args.action == "expand":
        f = read_poly(args.poly, args.n)
        coeffs = expand(load_table(args, args.n), f)
    else:
        print(format_picture(leading_picture(read_poly(args.poly, args.n))))
        return EXIT_OK
    for r, c in sorted(coeffs.items(), key=lambda rc: format_picture(rc[0])):
        print(f"{format_picture(r)}\t{c}")
    return EXIT_OK


# lattice


def cmd_lattice(args) -> int:
    from .kostant import format_picture
    from .lattice import classify, moment_map, parse_lattice

    y = parse_lattice(data.read(args.file))
    print(format_picture(classify(y, verify_padding=args.verify_padding)))
    if args.moment:
        print("moment: " + " ".join(str(x) for x in moment_map(y)))
    return EXIT_OK


# chi


def cmd_chi(args) -> int:
    from .chi import verify
    from .kostant import extended

    p = read_picture(args.picture)
    if not hasattr(p, "base"):
        p = extended(p)
    P = read_poly(args.poly, p.n)
    report = verify(p, P, args.samples, random.Random(args.seed), trials=args.trials)
    sys.stdout.write(report.render())
    return EXIT_OK if report.verdict == "pass" else EXIT_VIOLATION


# reproduce


def cmd_reproduce(args) -> int:
    from . import reproduce

    keys = list(reproduce.CHECKS) if args.id == "all" else [args.id]
    failed = 0
    for key in keys:
        kwargs = {"cache": args.cache} if key in ("2", "5") else {}
        res = reproduce.run(key, **kwargs)
        print(res.line(), flush=True)
        failed += not res.passed
    return EXIT_OK if not failed else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mvcycles", description="MV-cycles, MV-polynomials and the cluster algebra on C[N].")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    pic = sub.add_parser("picture", help="Kostant pictures and the fusion order")
    psub = pic.add_subparsers(dest="action", required=True)
    x = psub.add_parser("show")
    x.add_argument("file")
    x = psub.add_parser("compare")
    x.add_argument("file")
    x.add_argument("other")
    x = psub.add_parser("fuse")
    x.add_argument("file")
    x.add_argument("loops", nargs="+", help="two loops such as (1,3) (2,4)")
    x = psub.add_parser("downset")
    x.add_argument("file")
    x.add_argument("--max-loops", type=int, default=10)
    pic.set_defaults(func=cmd_picture)

    det = sub.add_parser("detform", help="masked loop-matrix determinants")
    det.add_argument("--picture", required=True)
    det.add_argument("--show-graph", action="store_true")
    det.add_argument("--show-matrix", action="store_true")
    det.add_argument("--show-mask", action="store_true")
    det.add_argument("--show-poly", action="store_true")
    det.add_argument("--order", help="comma-separated loop order, 0-based")
    det.add_argument("--figure", metavar="PATH", help="write the line diagram to PATH")
    det.set_defaults(func=cmd_detform)

    cl = sub.add_parser("cluster", help="seed mutation on C[N]")
    csub = cl.add_subparsers(dest="action", required=True)
    x = csub.add_parser("enumerate")
    x.add_argument("-n", type=int, required=True)
    x.add_argument("--max-seeds", type=int)
    x.add_argument("--max-depth", type=int)
    x.add_argument("--max-variables", type=int)
    x.add_argument("--resume", metavar="CACHE", help="append-only cache file, resumed if present")
    x.add_argument("--list", action="store_true", help="print every cluster variable")
    x.add_argument("--figure", metavar="PATH", help="write the growth plot to PATH")
    x = csub.add_parser("initial")
    x.add_argument("-n", type=int, required=True)
    cl.set_defaults(func=cmd_cluster)

    mv = sub.add_parser("mvbasis", help="MV-basis expansion and convolution")
    msub = mv.add_subparsers(dest="action", required=True)
    x = msub.add_parser("convolve")
    x.add_argument("--table", action="append", help="basis file, lines '<picture> := <polynomial>'")
    x.add_argument("-p", required=True)
    x.add_argument("-q", required=True)
    x = msub.add_parser("expand")
    x.add_argument("--table", action="append")
    x.add_argument("--poly", required=True)
    x.add_argument("-n", type=int, required=True)
    x = msub.add_parser("leading")
    x.add_argument("--poly", required=True)
    x.add_argument("-n", type=int, required=True)
    mv.set_defaults(func=cmd_mvbasis)

    lat = sub.add_parser("lattice", help="lattices in the affine Grassmannian")
    lsub = lat.add_subparsers(dest="action", required=True)
    x = lsub.add_parser("classify")
    x.add_argument("file")
    x.add_argument("--moment", action="store_true", help="also print the moment map image")
    x.add_argument("--verify-padding", action="store_true")
    lat.set_defaults(func=cmd_lattice)

    chi = sub.add_parser("chi", help="chi1 / chi2 comparison")
    xsub = chi.add_subparsers(dest="action", required=True)
    x = xsub.add_parser("verify")
    x.add_argument("--picture", required=True)
    x.add_argument("--poly", required=True)
    x.add_argument("--samples", type=int, default=10)
    x.add_argument("--seed", type=int, default=0)
    x.add_argument("--trials", type=int, default=3, help="extra representatives per sample")
    chi.set_defaults(func=cmd_chi)

    rep = sub.add_parser("reproduce", help="run an acceptance check")
    rep.add_argument("id", choices=["all"] + [str(k) for k in range(1, 11)])
    rep.add_argument("--cache", help="cluster cache for the A5 checks")
    rep.set_defaults(func=cmd_reproduce)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except ConjectureViolation as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_VIOLATION
    except MVError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ERROR
    except (FileNotFoundError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
