"""Command-line front end.

Exit codes: 0 holds / success, 1 definite negative with a witness,
2 internal inconsistency between independent routes, 3 input error.
Wall time is written to stderr so stdout stays deterministic.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time

from . import exact
from .catalog import load_operator, load_space, space_to_dict
from .errors import MappingAmbiguous, PolyparError
from .pairs import has_numerical_index_one, is_bj_orthogonal, is_eps_orthogonal, pair_direct, pair_functional
from .preserve import DEFAULT_EPS, preserves, verify_counterexample
from .render import render_svg
from .suites import SUITES, run_suite, search_preservers
from .sums import p_sum_pair_test

EXIT_OK, EXIT_NEGATIVE, EXIT_INCONSISTENT, EXIT_INPUT = 0, 1, 2, 3

CATALOG_HELP = (
    "Spaces: l1:N, linf:N (2 <= N <= 6), hexagon, sums l1(A,B) / linf(A,B), or a JSON space file. "
    "The hexagon has dual vertices (1,0), (1/2,1), (1/2,-1); a regular hexagon would need irrational coordinates."
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, "%s: error: %s\n" % (self.prog, message))


def _holds(b: bool) -> str:
    return "holds" if b else "fails"


def cmd_pair(args) -> int:
    X = load_space(args.space)
    x, y = exact.parse_vector(args.x), exact.parse_vector(args.y)
    kind = args.kind_pos or args.kind
    direct = pair_direct(X, x, y, kind)
    print("space: %s" % X.name)
    print("kind: %s" % kind)
    print("direct: %s" % _holds(direct))
    if exact.is_zero(x) or exact.is_zero(y):
        print("functional: n/a (zero vector)")
        return EXIT_OK
    v = pair_functional(X, x, y, kind)
    print("functional: %s" % _holds(v.holds))
    if v.holds:
        print("witness functional: (%s)" % exact.format_vector(v.witness_functional))
        if kind == "parallel":
            print("lambda: %+d" % v.witness_sign)
    if v.holds != direct:
        print("error: direct and functional verdicts disagree", file=sys.stderr)
        return EXIT_INCONSISTENT
    return EXIT_OK


def cmd_check_preserver(args) -> int:
    path = args.operator_pos or args.operator
    if not path:
        raise PolyparError("an operator file is required")
    T = load_operator(path)
    print("operator: %s -> %s  rank %d" % (T.domain.name, T.codomain.name, T.rank))
    rep = preserves(T, args.kind)
    print(rep.to_text(T.domain))
    if rep.preserves:
        return EXIT_OK
    ce = rep.counterexample
    if ce is None or not verify_counterexample(T, ce.x, ce.y, args.kind):
        print("error: no verified counterexample for a negative verdict", file=sys.stderr)
        return EXIT_INCONSISTENT
    return EXIT_NEGATIVE


def cmd_search(args) -> int:
    X, Y = load_space(args.domain), load_space(args.codomain)
    if args.trials < 1:
        raise PolyparError("--trials must be at least 1")
    summary = search_preservers(X, Y, args.trials, args.seed)
    print(summary.to_text())
    return EXIT_INCONSISTENT if summary.violations else EXIT_OK


def cmd_plot(args) -> int:
    X = load_space(args.space)
    svg = render_svg(X)
    if args.out in (None, "-"):
        sys.stdout.write(svg)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(svg)
        print("wrote %s" % args.out)
    return EXIT_OK


def cmd_suite(args) -> int:
    ok = True
    for res in run_suite(args.name, args.seed):
        print(res.to_text())
        ok &= res.passed
    return EXIT_OK if ok else EXIT_INCONSISTENT


def cmd_orth(args) -> int:
    X = load_space(args.space)
    x, y = exact.parse_vector(args.x), exact.parse_vector(args.y)
    eps = exact.parse_rational(args.eps)
    bj = is_bj_orthogonal(X, x, y)
    eo = is_eps_orthogonal(X, x, y, eps)
    print("space: %s" % X.name)
    print("birkhoff-james: %s" % _holds(bj))
    print("eps-orthogonal (eps=%s): %s" % (exact.format_rational(eps), _holds(eo)))
    if eps == 0 and bj != eo:
        return EXIT_INCONSISTENT
    return EXIT_OK if eo else EXIT_NEGATIVE


def cmd_psum(args) -> int:
    X, Y = load_space(args.left), load_space(args.right)
    z1, z2 = exact.parse_vector(args.z1), exact.parse_vector(args.z2)
    v = p_sum_pair_test(X, Y, args.p, z1, z2, args.kind_pos or args.kind, args.tol)
    print("sum: %s (+)_%s %s" % (X.name, args.p, Y.name))
    print("kind: %s" % v.kind)
    print("verdict: %s" % _holds(v.holds))
    print("method: %s" % v.method)
    print("reason: %s" % v.reason)
    if v.gap is not None:
        print("gap: %.3e (tol %.1e)" % (v.gap, float(args.tol)))
    return EXIT_OK if v.holds else EXIT_NEGATIVE


def cmd_space(args) -> int:
    X = load_space(args.space)
    if args.json:
        print(json.dumps(space_to_dict(X), indent=2))
        return EXIT_OK
    print("space: %s" % X.name)
    print("dim: %d" % X.dim)
    print("dual vertices (one per antipodal pair): %d" % len(X.dual_vertices))
    for g in X.dual_vertices:
        print("  (%s)" % exact.format_vector(g))
    print("primal vertices: %d" % len(X.primal_vertices))
    for v in X.primal_vertices:
        print("  (%s)" % exact.format_vector(v))
    print("faces by dimension: %s" % [len(X.faces(k)) for k in range(X.dim)])
    print("numerical index one: %s" % ("yes" if has_numerical_index_one(X) else "no"))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="polypar", description="Exact parallel/TEA pair and preserver checks on polyhedral normed spaces.",
                epilog=CATALOG_HELP)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("pair", help="decide a parallel or TEA pair by both routes", epilog=CATALOG_HELP)
    s.add_argument("space", nargs="?")
    s.add_argument("x")
    s.add_argument("y")
    s.add_argument("kind_pos", nargs="?", choices=("tea", "parallel"), metavar="kind")
    s.add_argument("--space", dest="space_opt")
    s.add_argument("--kind", choices=("tea", "parallel"), default="parallel")
    s.set_defaults(func=cmd_pair)

    s = sub.add_parser("check-preserver", help="certify or refute pair preservation by an operator file")
    s.add_argument("operator_pos", nargs="?", metavar="operator")
    s.add_argument("--operator")
    s.add_argument("--kind", choices=("tea", "parallel"), default="tea")
    s.set_defaults(func=cmd_check_preserver)

    s = sub.add_parser("search", help="classify random rational operators between two spaces", epilog=CATALOG_HELP)
    s.add_argument("domain")
    s.add_argument("codomain")
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("plot", help="draw a two-dimensional unit ball as SVG", epilog=CATALOG_HELP)
    s.add_argument("space", nargs="?")
    s.add_argument("--space", dest="space_opt")
    s.add_argument("--out")
    s.set_defaults(func=cmd_plot)

    s = sub.add_parser("suite", help="run a named invariant suite")
    s.add_argument("name", choices=list(SUITES) + ["all"])
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_suite)

    s = sub.add_parser("orth", help="Birkhoff-James and eps-approximate orthogonality", epilog=CATALOG_HELP)
    s.add_argument("space", nargs="?")
    s.add_argument("x")
    s.add_argument("y")
    s.add_argument("--space", dest="space_opt")
    s.add_argument("--eps", default=exact.format_rational(DEFAULT_EPS))
    s.set_defaults(func=cmd_orth)

    s = sub.add_parser("psum", help="pair test on the p-sum of two spaces (numeric fallback)", epilog=CATALOG_HELP)
    s.add_argument("left")
    s.add_argument("right")
    s.add_argument("p")
    s.add_argument("z1", help="concatenated components, e.g. 1,0,3,0")
    s.add_argument("z2")
    s.add_argument("kind_pos", nargs="?", choices=("tea", "parallel"), metavar="kind")
    s.add_argument("--kind", choices=("tea", "parallel"), default="parallel")
    s.add_argument("--tol", type=float, default=1e-9)
    s.set_defaults(func=cmd_psum)

    s = sub.add_parser("space", help="describe a space", epilog=CATALOG_HELP)
    s.add_argument("space", nargs="?")
    s.add_argument("--space", dest="space_opt")
    s.add_argument("--json", action="store_true", help="print the space file format")
    s.set_defaults(func=cmd_space)
    return p


def _resolve_space(args, parser):
    if not hasattr(args, "space_opt"):
        return
    if args.space_opt:
        if args.space is not None:
            # positional slots shift left when --space is given
            shifted = [args.space] + [getattr(args, k) for k in ("x", "y") if hasattr(args, k)]
            for k, val in zip(("x", "y", "kind_pos"), shifted):
                if hasattr(args, k):
                    setattr(args, k, val)
        args.space = args.space_opt
    if args.space is None:
        parser.error("a space is required (positional or --space)")


_NEGATIVE_VECTOR = re.compile(r"^-\d[\d/]*([,\s]+[-\u2212]?\d[\d/]*)*$")


def _protect_negative_vectors(argv):
    """Leading minus on a vector or fraction would read as an option; use the Unicode minus instead."""
    out = []
    for a in argv:
        if _NEGATIVE_VECTOR.match(a) and ("," in a or "/" in a):
            a = "\u2212" + a[1:]
        out.append(a)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_protect_negative_vectors(argv))
    _resolve_space(args, parser)
    start = time.perf_counter()
    try:
        code = args.func(args)
    except MappingAmbiguous as e:
        print("error: %s" % e, file=sys.stderr)
        code = EXIT_INCONSISTENT
    except (PolyparError, OSError, ValueError) as e:
        print("error: %s" % e, file=sys.stderr)
        code = EXIT_INPUT
    sys.stdout.flush()
    print("wall time: %.3f s" % (time.perf_counter() - start), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
