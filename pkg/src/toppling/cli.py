"""Command-line front door: parse graphs, dispatch computations, emit tables,
matrices, and DOT figures.

Exit codes: 0 success, 1 validation/parse failure, 2 internal verification
failure (a computed resolution or identity check caught itself lying).
"""

from __future__ import annotations

import argparse
import json
import sys

from .divisors import (
    acyclic_orientations_unique_source,
    linear_system,
    linearly_equivalent,
    pic_class,
    q_reduce,
)
from .fields import get_field
from .flags import (
    FlagError,
    enumerate_minimal_flags,
    flag_orientation,
    validate_flag,
)
from .graphs import (
    BACKWARD,
    FORWARD,
    GraphError,
    PointedGraph,
    bfs_term_order,
    build_graph,
)
from .oracle import (
    NotGroebner,
    brute_force_class_count,
    hochster_betti,
    minimalize,
    schreyer_resolution,
)
from .resolution import (
    CompositionNonzero,
    IdentityViolation,
    UnitEntry,
    betti_table,
    buchberger_check,
    build_resolution,
    format_resolution,
    groebner_basis,
    hilbert_check,
    verify_resolution,
)
from .poly import format_poly


class ParseError(ValueError):
    pass


# ---------------------------------------------------------------------------
# input parsing

def parse_graph_file(path) -> PointedGraph:
    with open(path) as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return parse_graph_json(text)
    return parse_graph_text(text)


def parse_graph_json(text) -> PointedGraph:
    data = json.loads(text)
    try:
        n = data["n"]
        q = data["q"]
        edges = [(u - 1, v - 1) for u, v, *rest in [tuple(e) for e in data["edges"]]
                 for _ in range(rest[0] if rest else 1)]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad graph JSON: {exc}") from exc
    return build_graph(n, edges, q - 1)


def parse_graph_text(text) -> PointedGraph:
    n = None
    q = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        try:
            if fields[0] == "v" and len(fields) == 2:
                n = int(fields[1])
            elif fields[0] == "q" and len(fields) == 2:
                q = int(fields[1]) - 1
            elif fields[0] == "e" and len(fields) in (3, 4):
                u, v = int(fields[1]) - 1, int(fields[2]) - 1
                mult = int(fields[3]) if len(fields) == 4 else 1
                edges.extend([(u, v)] * mult)
            else:
                raise ValueError("unrecognized directive")
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
    if n is None:
        raise ParseError("missing `v n` line")
    if q is None:
        raise ParseError("missing `q vertex` line")
    return build_graph(n, edges, q)


def parse_flag_literal(g: PointedGraph, q, text):
    """`{1}<{1,2}<{1,2,3,4}` -> validated ConnectedFlag (1-based input)."""
    chain = []
    for piece in text.split("<"):
        piece = piece.strip()
        if not (piece.startswith("{") and piece.endswith("}")):
            raise ParseError(f"bad set literal {piece!r}")
        body = piece[1:-1].strip()
        try:
            members = [int(x) - 1 for x in body.split(",")] if body else []
        except ValueError as exc:
            raise ParseError(f"bad set literal {piece!r}") from exc
        chain.append(frozenset(members))
    return validate_flag(g, q, chain)


def parse_divisor(g: PointedGraph, text):
    # space-separated integers in vertex order; commas tolerated
    try:
        vals = tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError as exc:
        raise ParseError(f"bad divisor {text!r}") from exc
    if len(vals) != g.n:
        raise ParseError(f"divisor has {len(vals)} entries, graph has {g.n}")
    return vals


def format_divisor(d):
    return " ".join(str(x) for x in d)


# ---------------------------------------------------------------------------
# emission helpers

def emit_betti(bt, grading):
    lines = []
    if grading == "Z":
        for (i, j), c in sorted(bt.z_graded.items()):
            lines.append(f"{i}\t{j}\t{c}")
    else:
        for (i, j), c in sorted(bt.pic_graded.items(),
                                key=lambda kv: (kv[0][0], kv[0][1].rep)):
            lines.append(f"{i}\t{format_divisor(j.rep)}\t{c}")
    return "\n".join(lines) + "\n"


def emit_dot(g: PointedGraph, orientation):
    lines = ["digraph G {"]
    state = orientation.as_dict()
    for (u, v), s in sorted(state.items()):
        c = g.mult[u][v]
        for _ in range(c):
            if s == FORWARD:
                lines.append(f"  {u + 1} -> {v + 1}")
            elif s == BACKWARD:
                lines.append(f"  {v + 1} -> {u + 1}")
            else:
                lines.append(f"  {u + 1} -> {v + 1} [dir=none]")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# verbs

def _cmd_betti(g, args):
    bt = betti_table(g)
    # the two variants must agree; compute both when asked for a cross-check
    return emit_betti(bt, args.grading)


def _cmd_resolution(g, args):
    field = get_field(args.field)
    res = build_resolution(g, variant=args.variant, field=field)
    return format_resolution(res)


def _cmd_groebner(g, args):
    # generators are +-1 binomials; print them with integer signs no matter
    # which field the heavy computations use
    field = get_field("rational")
    order = bfs_term_order(g)
    lines = [format_poly(b.poly(field), order, g.n) for b in groebner_basis(g)]
    return "\n".join(lines) + "\n"


def _cmd_flags(g, args):
    basis = enumerate_minimal_flags(g, g.q, args.k)
    return "\n".join(uc.literal() for uc in basis) + "\n"


def _cmd_reduce(g, args):
    d = parse_divisor(g, args.divisor)
    return format_divisor(q_reduce(g, g.q, d)) + "\n"


def _cmd_equiv(g, args):
    d1 = parse_divisor(g, args.divisor)
    d2 = parse_divisor(g, args.divisor2)
    return ("equivalent" if linearly_equivalent(g, d1, d2)
            else "inequivalent") + "\n"


def _cmd_linsys(g, args):
    d = parse_divisor(g, args.divisor)
    members = linear_system(g, g.q, d)
    return "\n".join(format_divisor(e) for e in members) + "\n"


def _cmd_orientations(g, args):
    out = []
    for o in acyclic_orientations_unique_source(g):
        arcs = sorted((u + 1, v + 1) for u, v in o.arcs())
        out.append(" ".join(f"{u}->{v}" for u, v in arcs))
    return "\n".join(sorted(out)) + "\n"


def _cmd_export_dot(g, args):
    if args.flag:
        uc = parse_flag_literal(g, g.q, args.flag)
        return emit_dot(g, flag_orientation(g, uc))
    raise ParseError("export-dot needs --flag")


def _cmd_verify(g, args):
    field = get_field(args.field)
    order = bfs_term_order(g)
    which = args.oracle
    lines = []

    def want(name):
        return which in ("all", name)

    if want("complex"):
        for variant in ("binomial", "monomial"):
            res = build_resolution(g, variant=variant, field=field)
            rep = verify_resolution(res)
            if not rep.ok:
                raise CompositionNonzero(str(rep.counterexamples))
        lines.append("complex ok")
    if want("hilbert"):
        hilbert_check(g)
        lines.append("hilbert ok")
    if want("schreyer"):
        gb = groebner_basis(g)
        if not buchberger_check(gb, order, field):
            raise NotGroebner("Buchberger check failed")
        sres = schreyer_resolution(g, gb, order, field=field)
        bt = minimalize(sres)
        if sorted(bt.z_graded.items()) != sorted(betti_table(g).z_graded.items()):
            raise IdentityViolation("Schreyer oracle disagrees with flag count")
        lines.append("schreyer ok")
    if want("hochster"):
        bt = betti_table(g)
        top = g.n - 1
        for (i, j), c in bt.pic_graded.items():
            if i == top and hochster_betti(g, g.q, i, j) != c:
                raise IdentityViolation(f"Hochster mismatch at {j}")
        lines.append("hochster ok")
    if want("flags"):
        for k in range(1, g.n + 1):
            got = brute_force_class_count(g, g.q, k)
            expect = 1 if k == 1 else len(enumerate_minimal_flags(g, g.q, k))
            if got != expect:
                raise IdentityViolation(f"flag-class count mismatch at k={k}")
        lines.append("flags ok")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# argument wiring

def build_parser():
    parser = argparse.ArgumentParser(prog="toppling")
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p):
        p.add_argument("--graph", required=True)
        p.add_argument("--q", type=int, default=None,
                       help="1-based override of the base vertex")
        p.add_argument("--field", default="prime")
        p.add_argument("--output", default=None)

    p = sub.add_parser("betti")
    common(p)
    p.add_argument("--grading", choices=("Z", "Pic"), default="Z")
    p.add_argument("--variant", choices=("binomial", "monomial"),
                   default="binomial")

    p = sub.add_parser("resolution")
    common(p)
    p.add_argument("--variant", choices=("binomial", "monomial"),
                   default="binomial")

    p = sub.add_parser("groebner")
    common(p)

    p = sub.add_parser("flags")
    common(p)
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("reduce")
    common(p)
    p.add_argument("--divisor", required=True)

    p = sub.add_parser("equiv")
    common(p)
    p.add_argument("--divisor", required=True)
    p.add_argument("--divisor2", required=True)

    p = sub.add_parser("linsys")
    common(p)
    p.add_argument("--divisor", required=True)

    p = sub.add_parser("orientations")
    common(p)

    p = sub.add_parser("verify")
    common(p)
    p.add_argument("--oracle", default="all",
                   choices=("all", "complex", "hilbert", "schreyer",
                            "hochster", "flags"))

    p = sub.add_parser("export-dot")
    common(p)
    p.add_argument("--flag", default=None)
    return parser


_DISPATCH = {
    "betti": _cmd_betti,
    "resolution": _cmd_resolution,
    "groebner": _cmd_groebner,
    "flags": _cmd_flags,
    "reduce": _cmd_reduce,
    "equiv": _cmd_equiv,
    "linsys": _cmd_linsys,
    "orientations": _cmd_orientations,
    "verify": _cmd_verify,
    "export-dot": _cmd_export_dot,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        g = parse_graph_file(args.graph)
        if args.q is not None:
            g = PointedGraph(g.n, g.mult, args.q - 1)
            if not 0 <= g.q < g.n:
                raise ParseError(f"q={args.q} out of range")
        text = _DISPATCH[args.verb](g, args)
    except (CompositionNonzero, UnitEntry, IdentityViolation, NotGroebner) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 2
    except (ParseError, GraphError, FlagError, OSError,
            json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    # written in one shot so partial output never lands on disk
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
