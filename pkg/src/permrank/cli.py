"""Command-line front end.

Exit codes: 0 success, 1 a check or verification failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import sys
import warnings
from itertools import combinations
from pathlib import Path

from . import _kernels
from .conjecture import check_conditions, embed_sn, isometry_search_n3, parse_metric_table
from .errors import NotAMetric, OrderMismatch, ParseError, PermRankError
from .formats import (
    format_permutations,
    format_rational,
    parse_cycle_line,
    parse_permutations,
    parse_rankings_csv,
    render,
)
from .graph import Cycle, build_graph, lies_between_dsc, lies_between_metric, to_dot
from .perm import discordance_set
from .quadruples import (
    is_pseudolinear,
    is_symmetric_labeling,
    label_multiplicity_condition,
    quadruples_from_cycle,
)
from .verify import SUITES, run_suite
from .weights import (
    distance,
    generic_weights,
    kendall_correlation,
    kendall_tau_weights,
    parse_weights,
)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _add_weight_source(p: argparse.ArgumentParser):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--tau", action="store_true", help="unit weights (Kendall tau); the default")
    g.add_argument("--generic", action="store_true", help="powers-of-two weights with distinct subset sums")
    g.add_argument("--weights", metavar="FILE", help="weight file ('n <order>' then 'i j w' lines)")


def _weights(args, n: int):
    if args.weights:
        W = parse_weights(_read(args.weights))
        if W.n != n:
            raise OrderMismatch(f"weight file has order {W.n}, permutations have order {n}")
        return W
    if args.generic:
        return generic_weights(n)
    return kendall_tau_weights(n)


def _uses_tau(args) -> bool:
    return not args.weights and not args.generic


def _load_perms(path: str, count: int | None = None, at_least: int | None = None):
    perms = parse_permutations(_read(path))
    if count is not None and len(perms) != count:
        raise ParseError(f"expected {count} permutations, found {len(perms)}")
    if at_least is not None and len(perms) < at_least:
        raise ParseError(f"expected at least {at_least} permutations, found {len(perms)}")
    return perms


def cmd_dist(args) -> int:
    perms = _load_perms(args.perm_file, at_least=2)
    W = _weights(args, perms[0].n)
    pairs = combinations(range(len(perms)), 2) if args.all_pairs else zip(range(len(perms) - 1), range(1, len(perms)))
    for a, b in pairs:
        p, q = perms[a], perms[b]
        print(f"[{a + 1},{b + 1}] {p} | {q}")
        print(f"  d_W = {render(distance(W, p, q))}")
        if _uses_tau(args):
            print(f"  tau = {render(kendall_correlation(p, q))}")
    return 0


def cmd_between(args) -> int:
    p, m, q = _load_perms(args.perm_file, count=3)
    W = _weights(args, p.n)
    if not W.is_strict:
        raise NotAMetric("betweenness needs strictly positive weights")
    by_dsc = lies_between_dsc(p, m, q)
    by_metric = lies_between_metric(W, p, m, q)
    print(f"dsc(p,m) = {discordance_set(p, m)}")
    print(f"dsc(m,q) = {discordance_set(m, q)}")
    print(f"dsc(p,q) = {discordance_set(p, q)}")
    print(f"d(p,m) = {format_rational(distance(W, p, m))}")
    print(f"d(m,q) = {format_rational(distance(W, m, q))}")
    print(f"d(p,q) = {format_rational(distance(W, p, q))}")
    print(f"discordance verdict: {'yes' if by_dsc else 'no'}")
    print(f"metric verdict: {'yes' if by_metric else 'no'}")
    print(f"between: {'yes' if by_dsc else 'no'}")
    return 0 if by_dsc == by_metric else 1


def cmd_quad(args) -> int:
    pts = _load_perms(args.perm_file, count=4)
    W = _weights(args, pts[0].n)
    cert = is_pseudolinear(W, pts)
    if cert is not None:
        print("pseudolinear: yes")
        print(cert.format())
        return 0
    print("pseudolinear: no")
    for a, b in combinations(range(4), 2):
        print(f"d({pts[a]}, {pts[b]}) = {format_rational(distance(W, pts[a], pts[b]))}")
    return 0


def cmd_cycle(args) -> int:
    lines = [ln for ln in _read(args.cycle_file).splitlines() if ln.split("#", 1)[0].strip()]
    if len(lines) != 1:
        raise ParseError("a cycle file holds exactly one line of permutations separated by '|'")
    c = Cycle.through(parse_cycle_line(lines[0].split("#", 1)[0]))
    W = _weights(args, c.vertices[0].n)
    sym = is_symmetric_labeling(c)
    mult = label_multiplicity_condition(c)
    print(f"length: {len(c)}")
    print("labels: " + " ".join(str(x) for x in c.labels))
    print(f"symmetric labeling: {'yes' if sym else 'no'}")
    for lab, (cnt, ok) in mult.items():
        print(f"  {lab}: {cnt} edges ({'ok' if ok else 'not 2(2k-1)'})")
    if not sym or not all(ok for _, ok in mult.values()):
        print("quadruple construction: preconditions fail")
        return 1
    certs = quadruples_from_cycle(W, c)
    print(f"certificates: {len(certs)}")
    for cert in certs:
        print(cert.format().replace("\n", "; "))
    return 0


def cmd_graph(args) -> int:
    g = build_graph(args.n, cap=args.cap)
    edges = len(list(g.edges()))
    print(f"G_{args.n}: {len(g)} vertices, {edges} edges")
    if args.dot:
        text = to_dot(g)
        if args.dot == "-":
            sys.stdout.write(text)
        else:
            Path(args.dot).write_text(text)
    return 0


def cmd_ingest(args) -> int:
    observers, items, perms = parse_rankings_csv(_read(args.rankings_csv))
    out = [
        "# positions: " + " ".join(items),
        "# observers: " + " ".join(observers),
        "# value at a position = rank given by that observer (1 = highest score)",
    ]
    text = "\n".join(out) + "\n" + format_permutations(perms)
    if args.output and args.output != "-":
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    checks = run_suite(args.suite, args.n, seed=args.seed)
    print(f"suite {args.suite}, n={args.n}, seed={args.seed}, backend={_kernels.backend()}")
    for c in checks:
        print(c.line())
    ok = all(c.passed for c in checks)
    print("ALL PASS" if ok else "FAILURES")
    return 0 if ok else 1


def cmd_embed(args) -> int:
    W = parse_weights(_read(args.weights)) if args.weights else (
        generic_weights(args.n) if args.generic else kendall_tau_weights(args.n)
    )
    sys.stdout.write(embed_sn(W).format())
    return 0


def cmd_check(args) -> int:
    t = parse_metric_table(_read(args.table_file))
    rep = check_conditions(t, args.n)
    print(rep.format(t.labels))
    if rep.overall and args.n == 3:
        print(isometry_search_n3(t).format())
    return 0 if rep.overall else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="permrank", description="Weighted Kendall distance toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", help="distances between consecutive (or all) permutations")
    p.add_argument("perm_file")
    p.add_argument("--all-pairs", action="store_true")
    _add_weight_source(p)
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("between", help="does the 2nd permutation lie between the 1st and 3rd")
    p.add_argument("perm_file")
    _add_weight_source(p)
    p.set_defaults(func=cmd_between)

    p = sub.add_parser("quad", help="pseudolinear quadruple test for four permutations")
    p.add_argument("perm_file")
    _add_weight_source(p)
    p.set_defaults(func=cmd_quad)

    p = sub.add_parser("cycle", help="symmetric labeling and quadruples of a permutohedron cycle")
    p.add_argument("cycle_file")
    _add_weight_source(p)
    p.set_defaults(func=cmd_cycle)

    p = sub.add_parser("graph", help="build the permutohedron graph, optionally export DOT")
    p.add_argument("n", type=int)
    p.add_argument("--dot", metavar="FILE", help="write DOT here ('-' for stdout)")
    p.add_argument("--cap", type=int, default=None, help="largest order to materialize (default 8 or $PERMRANK_CAP)")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("ingest", help="convert observer,item,score CSV into permutations")
    p.add_argument("rankings_csv")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("verify", help="run a seeded property suite")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("embed", help="write the distance table of S_n as a metric-table file")
    p.add_argument("--n", type=int, default=3)
    _add_weight_source(p)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("check", help="check a metric table against the S_n structure conditions")
    p.add_argument("table_file")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_check)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            return args.func(args)
    except (PermRankError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
