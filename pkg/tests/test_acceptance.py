"""Acceptance criteria, one test (and one printed PASS/FAIL line) per criterion."""

import random
import time
from fractions import Fraction

import pytest

from polypar import exact
from polypar.catalog import catalog_names, l1_space, linf_space, parse_space_expr
from polypar.cli import main as cli_main
from polypar.exact import Matrix
from polypar.pairs import is_parallel_direct, is_tea_direct, pair_direct, pair_functional
from polypar.preserve import Operator, preserves_parallel, preserves_tea, verify_counterexample
from polypar.sampling import random_rational_vector, signed_permutations
from polypar.suites import suite_bipolar, suite_facet_oracle, suite_index_one, suite_isometry
from polypar.sums import SumPoint, p_sum_pair_test, sum_l1

F = Fraction
_example_seconds = {}


@pytest.fixture
def report(capsys):
    def emit(label, ok, detail=""):
        with capsys.disabled():
            print("\n[acceptance %s] %s %s" % (label, "PASS" if ok else "FAIL", detail), end="")
        assert ok, "%s: %s" % (label, detail)

    return emit


def _timed(label, fn):
    t = time.perf_counter()
    ok, detail = fn()
    _example_seconds[label] = time.perf_counter() - t
    return ok, detail


def _c1a():
    X = linf_space(2)
    ok = (
        is_parallel_direct(X, (1, 0), (1, 1))
        and not is_parallel_direct(X, (1, 0), (0, 1))
        and is_tea_direct(X, (1, 1), (1, -1))
        and is_tea_direct(X, (1, 0), (1, F(1, 2)))
    )
    return ok, "linf:2 pair verdicts"


def _c1b():
    X = l1_space(3)
    T = Operator(Matrix([[1, 0, -1], [0, 0, 0], [1, 0, -1]]), X)
    par, tea = preserves_parallel(T), preserves_tea(T)
    ce = tea.counterexample
    u = (F(1, 3),) * 3
    facet = X.facet(X.index_of((1, 1, 1)))
    ok = (
        par.preserves
        and par.branch == "rank<=1"
        and not tea.preserves
        and ce is not None
        and verify_counterexample(T, ce.x, ce.y, "tea")
        and verify_counterexample(T, (2, 1, 1), (1, 1, 2), "tea")
        and exact.is_zero(T(u))
        and facet.in_relative_interior(u)
    )
    return ok, "reported counterexample (%s),(%s); (2,1,1),(1,1,2) also verified" % (
        exact.format_vector(ce.x), exact.format_vector(ce.y))


def _c1c():
    X = l1_space(3)
    T = Operator(Matrix([[1, 0, 0], [0, 0, 0], [0, 0, 1]]), X)
    ok = preserves_parallel(T).preserves and X.smoothness_order((1, 1, 1)) == 1 and X.smoothness_order((1, 0, 1)) == 2
    return ok, "projection preserves parallel pairs; orders 1 and 2"


def _c1d():
    X = l1_space(3)
    T = Operator(Matrix([[1, 0, 0], [2, 0, 0], [0, 0, 1]]), X)
    ok = T((1, 0, 0)) == (1, 2, 0) and X.smoothness_order((1, 0, 0)) == 3 and X.smoothness_order((1, 2, 0)) == 2
    return ok, "orders 3 and 2"


def _c1e():
    X = l1_space(2)
    Z = sum_l1(X, X)
    z1 = SumPoint((1, 0), (0, 1)).concat()
    z2 = SumPoint((F(1, 2), F(1, 2)), (F(1, 2), F(-1, 2))).concat()
    ok = (
        Z.norm(exact.add(z1, z2)) == 3
        and Z.norm(exact.sub(z1, z2)) == 3
        and Z.norm(z1) == 2
        and Z.norm(z2) == 2
        and not pair_direct(Z, z1, z2, "parallel")
    )
    return ok, "norms 3, 3 against 2 + 2"


def _c1f():
    X = l1_space(2)
    z1, z2 = ((1, 0), (3, 0)), ((2, 0), (1, 0))
    components = pair_direct(X, (1, 0), (2, 0), "tea") and pair_direct(X, (3, 0), (1, 0), "tea")
    gaps = []
    ok = components
    for p in ("3/2", 2, 3):
        v = p_sum_pair_test(X, X, p, z1, z2, "parallel", 1e-9)
        ok = ok and not v.holds and v.method == "numeric"
        gaps.append("%.3f" % v.gap)
    return ok, "gaps %s at tol 1e-9" % ", ".join(gaps)


EXAMPLES = {"1a": _c1a, "1b": _c1b, "1c": _c1c, "1d": _c1d, "1e": _c1e, "1f": _c1f}


@pytest.mark.parametrize("label", list(EXAMPLES))
def test_criterion_1_examples(label, report):
    ok, detail = _timed(label, EXAMPLES[label])
    report(label, ok, "%s (%.3f s)" % (detail, _example_seconds[label]))


def test_criterion_1_total_time(report):
    for label, fn in EXAMPLES.items():
        if label not in _example_seconds:
            _timed(label, fn)
    total = sum(_example_seconds.values())
    report("1-time", total < 1.0, "worked examples took %.3f s in total (limit 1 s)" % total)


@pytest.mark.parametrize("name", ["l1:2", "l1:3", "linf:2", "linf:3", "hexagon"])
def test_criterion_2_oracle_equivalence(name, report):
    X = parse_space_expr(name)
    rng = random.Random(2024)
    start = time.perf_counter()
    disagreements = positives = 0
    for _ in range(10_000):
        x, y = random_rational_vector(rng, X.dim), random_rational_vector(rng, X.dim)
        for kind in ("tea", "parallel"):
            d = pair_direct(X, x, y, kind)
            positives += d
            disagreements += d != pair_functional(X, x, y, kind).holds
    elapsed = time.perf_counter() - start
    report("2 %s" % name, disagreements == 0 and elapsed < 10,
           "10000 pairs, %d disagreements, %d positive verdicts, %.2f s" % (disagreements, positives, elapsed))


def test_criterion_3_facet_soundness_gate(report):
    res = suite_facet_oracle(seed=0, operators=200, pairs=10_000)
    tea = [p for p in res.properties if p.name.startswith("tea verdict")]
    checked = sum(p.checked for p in tea)
    report("3", res.passed and checked == 400,
           "%d operators on l1:3 and linf:3, %d disagreements" % (checked, sum(p.failures for p in res.properties)))


@pytest.mark.parametrize("suite", ["corchar", "thm-intn0", "cardpreserve", "pcara"])
def test_criterion_4_bijective_suites(suite, report, capsys):
    code = cli_main(["suite", suite])
    out, _ = capsys.readouterr()
    checked = sum(int(line.split("checked=")[1].split()[0]) for line in out.splitlines() if "checked=" in line)
    report("4 %s" % suite, code == 0, "exit %d, %d cases" % (code, checked))


def test_criterion_5_index_one(report):
    res = suite_index_one(seed=0, samples=1000)
    report("5", res.passed, "; ".join("%s %s" % (p.name, "ok" if p.passed else "FAILED") for p in res.properties[:1]) +
           " ... %d checks" % len(res.properties))


def test_criterion_6_isometry(report):
    res = suite_isometry(seed=0, operators=100)
    perms = len(signed_permutations(3))
    report("6", res.passed and res.properties[1].checked == 100 and perms == 48,
           "dominance on l1:3 and 100 norm-one bijective operators (48 signed permutations)")


def test_criterion_7_bipolar(report):
    res = suite_bipolar()
    report("7", res.passed and len(res.properties) == len(catalog_names()),
           "%d catalog spaces" % len(res.properties))
