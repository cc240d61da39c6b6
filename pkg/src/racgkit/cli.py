"""Command line front end.

Exit codes: 0 success, 1 a verification check failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .automorphisms import GraphAuto, InvalidAutomorphism, PartialConj, Transvection, parse_automorphism
from .cubes import build_ball, build_vplus, max_cube_dim
from .extensions import (
    ExtContext,
    TransvectionContext,
    build_P1,
    build_P2,
    build_P3,
    lambda_graph,
)
from .graphs import GraphFormatError, dump_graph, graph_to_dot, load_graph
from .actions import fixed_cells_min_dim, left_mult_map
from .verify import verify_graphauto, verify_pconj, verify_transvection
from .words import UnknownLetter, element_order, format_word, normalize, parse_word

SUITES = {"graphauto": GraphAuto, "pconj": PartialConj, "transvection": Transvection}


class InputError(Exception):
    pass


def _load(path: str):
    try:
        return load_graph(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except GraphFormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def _aut(graph, text: str | None, kind=None):
    if text is None:
        raise InputError("--aut is required for this command")
    try:
        phi = parse_automorphism(graph, text)
    except InvalidAutomorphism as exc:
        raise InputError(f"invalid automorphism: {exc}") from None
    if kind is not None and not isinstance(phi, kind):
        raise InputError(f"this command needs a {kind.__name__} automorphism, got {text.split()[0]!r}")
    return phi


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_normalize(args) -> int:
    g = _load(args.graph)
    try:
        print(format_word(normalize(g, parse_word(args.word))))
    except UnknownLetter as exc:
        raise InputError(str(exc)) from None
    return 0


def _kernel_text(ctx: TransvectionContext) -> str:
    ks = ctx.ks
    lines = [f"# kernel of h_{ks.a}; central={str(ks.central).lower()}"]
    lines += [f"# theta {s} {ks.theta[s]}" for s in ks.sprime if ks.theta[s] != s and s in ks.hat]
    return "\n".join(lines) + "\n" + dump_graph(ks.prime_graph)


def cmd_extend(args) -> int:
    g = _load(args.graph)
    what = args.what
    if what == "p1":
        text = build_P1(ExtContext(_aut(g, args.aut))).to_text()
    elif what == "lambda":
        phi = _aut(g, args.aut, PartialConj)
        lam = lambda_graph(g, phi.acting, phi.domain)
        text = graph_to_dot(lam, "Lambda") if args.format == "dot" else dump_graph(lam)
    else:
        ctx = TransvectionContext(_aut(g, args.aut, Transvection))
        if what == "p2":
            text = build_P2(ctx.ks).to_text()
        elif what == "p3":
            text = build_P3(ctx).to_text()
        else:
            text = graph_to_dot(ctx.ks.prime_graph, "Y") if args.format == "dot" else _kernel_text(ctx)
    _emit(text, args.output)
    return 0


def cmd_ball(args) -> int:
    g = _load(args.graph)
    if args.space == "X":
        ball = build_ball(g, args.radius)
    else:
        ctx = TransvectionContext(_aut(g, args.aut, Transvection))
        ball = build_ball(ctx.ks.prime_graph, args.radius)
        if args.space == "Yplus":
            if not ctx.ks.central:
                raise InputError(f"Y+ is only built when {ctx.a} is central")
            ball = build_vplus(ball)
    if args.format == "dot":
        text = ball.to_dot()
    elif args.format == "json":
        text = ball.to_json()
    else:
        text = f"vertices {len(ball.vertices)}\nedges {len(ball.edges)}\n"
        if hasattr(ball, "cubes_by_dim"):
            for dim, cubes in ball.cubes_by_dim().items():
                text += f"cubes[{dim}] {len(cubes)}\n"
            text += f"max_cube_dim {max_cube_dim(ball).dim}\n"
    _emit(text, args.output)
    return 0


def cmd_verify(args) -> int:
    g = _load(args.graph)
    kind = None if args.suite == "all" else SUITES[args.suite]
    phi = _aut(g, args.aut, kind)
    if isinstance(phi, GraphAuto):
        report = verify_graphauto(phi, args.radius)
    elif isinstance(phi, PartialConj):
        lam = _load(args.inject_lambda) if args.inject_lambda else None
        report = verify_pconj(phi, args.radius, lam)
    else:
        report = verify_transvection(phi, args.radius)
    _emit(report.to_json() if args.format == "json" else report.to_text(), args.output)
    return report.exit_code


def cmd_order(args) -> int:
    g = _load(args.graph)
    try:
        word = parse_word(args.word)
        if args.aut is None:
            if args.z:
                raise InputError("--z needs --aut")
            order = element_order(g, word, args.bound)
        else:
            ctx = ExtContext(_aut(g, args.aut))
            order = ctx.element_order(ctx.element(word, args.z), args.bound)
    except UnknownLetter as exc:
        raise InputError(str(exc)) from None
    print(order if order is not None else f"> {args.bound}")
    return 0


def cmd_fixed_cells(args) -> int:
    g = _load(args.graph)
    try:
        word = parse_word(args.word)
        ball = build_ball(g, args.radius)
        dim = fixed_cells_min_dim(left_mult_map(ball, word))
    except UnknownLetter as exc:
        raise InputError(str(exc)) from None
    print("none" if dim is None else dim)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="racgkit",
        description="Right-angled Coxeter groups, their cyclic extensions and cube-complex actions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, aut=False):
        p.add_argument("-g", "--graph", required=True, help="defining graph file")
        if aut:
            p.add_argument("--aut", help='automorphism, e.g. "transvection acting=a domain=d"')
        p.add_argument("-o", "--output", help="write to this file instead of stdout")

    p = sub.add_parser("normalize", help="shortlex normal form of a word")
    common(p)
    p.add_argument("word", help='space-separated letters; "1" is the empty word')
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("extend", help="presentations, Lambda graph or kernel system of an extension")
    common(p, aut=True)
    p.add_argument("what", choices=["p1", "p2", "p3", "lambda", "kernel"])
    p.add_argument("-f", "--format", choices=["text", "dot"], default="text")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("ball", help="export a ball of X, Y or Y+")
    common(p, aut=True)
    p.add_argument("-r", "--radius", type=int, default=4)
    p.add_argument("--space", choices=["X", "Y", "Yplus"], default="X",
                   help="Y and Yplus need a transvection --aut")
    p.add_argument("-f", "--format", choices=["text", "json", "dot"], default="text")
    p.set_defaults(func=cmd_ball)

    p = sub.add_parser("verify", help="run a verification battery")
    common(p, aut=True)
    p.add_argument("suite", choices=["graphauto", "pconj", "transvection", "all"],
                   help="'all' runs the battery matching --aut")
    p.add_argument("-r", "--radius", type=int, default=4,
                   help="ball radius (raised automatically to the longest relator)")
    p.add_argument("-f", "--format", choices=["text", "json"], default="text")
    p.add_argument("--inject-lambda", metavar="GRAPH", help="use this graph as Lambda (mutation testing)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("order", help="order of an element of W, or of w z^k in the extension")
    common(p, aut=True)
    p.add_argument("word")
    p.add_argument("--z", type=int, default=0, help="exponent of z (needs --aut)")
    p.add_argument("--bound", type=int, default=20)
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("fixed-cells", help="smallest cube preserved by left multiplication by a word")
    common(p)
    p.add_argument("word")
    p.add_argument("-r", "--radius", type=int, default=4)
    p.set_defaults(func=cmd_fixed_cells)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "radius", 0) < 0:
        parser.error("radius must be nonnegative")
    try:
        return args.func(args)
    except (InputError, InvalidAutomorphism) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
