"""Named invariant suites and the randomized preserver search.

Every suite is deterministic given its seed and reports, per property, how
many cases were checked and how many failed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import exact
from .catalog import catalog_names, l1_space, linf_space, hexagon, parse_space_expr
from .errors import UnknownSuite
from .exact import Matrix, format_vector
from .oracle import brute_force_preserves
from .pairs import has_numerical_index_one, is_eps_orthogonal, pair_direct, pair_functional
from .polyspace import PolyhedralSpace
from .preserve import (
    Operator,
    count_law_check,
    isometry_characterization_check,
    kernel_face_check,
    preserves,
    preserves_eps_orthogonality,
    preserves_parallel,
    preserves_tea,
    support_count_law,
    verify_counterexample,
    vertex_support_dominance,
)
from .sampling import (
    operator_corpus,
    random_bijective_matrix,
    random_cone_point,
    random_matrix,
    random_rational_vector,
    random_signed_permutation,
    random_sphere_point,
    signed_permutations,
)
from .sums import l1_sum_pair_rules, linf_sum_pair_rules, p_sum_pair_test, sum_l1, sum_linf


@dataclass
class PropertyResult:
    name: str
    checked: int = 0
    failures: int = 0
    first_failure: str = ""

    def record(self, ok: bool, detail=""):
        self.checked += 1
        if not ok:
            self.failures += 1
            if not self.first_failure:
                self.first_failure = detail() if callable(detail) else str(detail)

    @property
    def passed(self) -> bool:
        return self.failures == 0


@dataclass
class SuiteResult:
    name: str
    properties: list = field(default_factory=list)

    def prop(self, name: str) -> PropertyResult:
        p = PropertyResult(name)
        self.properties.append(p)
        return p

    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.properties)

    def to_text(self) -> str:
        lines = []
        for p in self.properties:
            status = "pass" if p.passed else "FAIL"
            line = "[%s] %s: %s  checked=%d failures=%d" % (self.name, status, p.name, p.checked, p.failures)
            if p.first_failure:
                line += "  first: " + p.first_failure
            lines.append(line)
        lines.append("[%s] %s" % (self.name, "pass" if self.passed else "FAIL"))
        return "\n".join(lines)


def _vecs(*vs):
    return " ".join("(%s)" % format_vector(v) for v in vs)


PAIR_SPACES = ("l1:2", "l1:3", "linf:2", "linf:3", "hexagon")


def _cube_spaces():
    return [l1_space(3), linf_space(3)]


# -- pair procedures -------------------------------------------------------


def suite_prop21(seed: int = 0, pairs: int = 10_000) -> SuiteResult:
    """Direct and functional pair verdicts agree; half the pairs share a facet cone."""
    res = SuiteResult("prop21")
    for name in PAIR_SPACES:
        X = parse_space_expr(name)
        rng = random.Random(seed)
        p = res.prop("direct==functional on %s" % name)
        for i in range(pairs):
            if i % 2:
                j = rng.randrange(X.n_signed_duals)
                x, y = random_cone_point(rng, X, j), random_cone_point(rng, X, j)
            else:
                x, y = random_rational_vector(rng, X.dim), random_rational_vector(rng, X.dim)
            for kind in ("tea", "parallel"):
                d = pair_direct(X, x, y, kind)
                v = pair_functional(X, x, y, kind)
                p.record(d == v.holds, lambda: "%s %s" % (kind, _vecs(x, y)))
    X = linf_space(2)
    p = res.prop("non-transitivity witness on linf:2")
    a, b, c = (1, 0), (1, 1), (0, 1)
    p.record(pair_direct(X, a, b, "parallel") and pair_direct(X, b, c, "parallel") and not pair_direct(X, a, c, "parallel"))
    return res


def suite_index_one(seed: int = 0, samples: int = 1000) -> SuiteResult:
    """Index-one test against the vertex-versus-sphere parallel-pair formulation."""
    res = SuiteResult("index-one")
    expected = {"l1:2": True, "l1:3": True, "linf:2": True, "linf:3": True, "hexagon": False}
    for name, want in expected.items():
        X = parse_space_expr(name)
        rng = random.Random(seed)
        got = has_numerical_index_one(X)
        res.prop("index one on %s is %s" % (name, want)).record(got == want, "got %s" % got)
        ys = list(X.primal_vertices) + [F.barycenter() for F in X.faces()]
        ys += [random_sphere_point(rng, X) for _ in range(samples)]
        all_parallel = all(pair_direct(X, v, y, "parallel") for v in X.primal_vertices for y in ys)
        res.prop("parallel formulation agrees on %s" % name).record(all_parallel == got, "formulation gives %s" % all_parallel)
    return res


def suite_smooth_exposed(seed: int = 0, samples: int = 200) -> SuiteResult:
    """Smooth exposed points are parallel only to their own multiples.

    In a polyhedral space of dimension at least two no point is both smooth
    and exposed, so the hypothesis never fires on vertices or face centers.
    """
    res = SuiteResult("smooth-exposed")
    for name in PAIR_SPACES:
        X = parse_space_expr(name)
        rng = random.Random(seed)
        p = res.prop("implication on %s" % name)
        for x in list(X.primal_vertices) + [F.barycenter() for F in X.faces()]:
            sup = X.support_indices(x)
            exposed = len(sup) == 1 and len(X.facet(sup[0]).vertices) == 1
            if not exposed:
                p.record(True)
                continue
            for _ in range(samples):
                y = random_sphere_point(rng, X)
                if pair_direct(X, x, y, "parallel"):
                    p.record(exact.vectors_rank([x, y]) == 1, lambda: _vecs(x, y))
    return res


def suite_sums(seed: int = 0, pairs: int = 10_000) -> SuiteResult:
    res = SuiteResult("sums")
    rng = random.Random(seed)
    factors = [l1_space(2), linf_space(2), hexagon()]
    for X in factors:
        for Y in factors:
            Z1, Zi = sum_l1(X, Y), sum_linf(X, Y)
            p1 = res.prop("l1 rules on %s" % Z1.name)
            pi = res.prop("linf rules on %s" % Zi.name)
            for i in range(pairs // 9):
                parts = []
                for F in (X, Y, X, Y):
                    r = rng.random()
                    parts.append((0,) * F.dim if r < 0.15 else random_rational_vector(rng, F.dim))
                if i % 3 == 0:
                    parts[2] = exact.scale(rng.choice((1, 2, Fraction(1, 2), -1)), parts[0])
                z1, z2 = parts[0] + parts[1], parts[2] + parts[3]
                if exact.is_zero(z1) or exact.is_zero(z2):
                    continue
                for kind in ("tea", "parallel"):
                    p1.record(l1_sum_pair_rules(X, Y, z1, z2, kind).holds == pair_direct(Z1, z1, z2, kind),
                              lambda: "%s %s" % (kind, _vecs(z1, z2)))
                    pi.record(linf_sum_pair_rules(X, Y, z1, z2, kind).holds == pair_direct(Zi, z1, z2, kind),
                              lambda: "%s %s" % (kind, _vecs(z1, z2)))
    X = l1_space(2)
    p = res.prop("numeric holds implies component pairs hold")
    for _ in range(pairs // 10):
        parts = [random_rational_vector(rng, 2) for _ in range(4)]
        if rng.random() < 0.5:
            parts[2] = exact.scale(rng.randint(1, 3), parts[0])
            parts[3] = exact.scale(rng.randint(1, 3), parts[1])
        for pval in ("3/2", 2, 3):
            v = p_sum_pair_test(X, X, pval, (parts[0], parts[1]), (parts[2], parts[3]), "parallel", 1e-9)
            if v.holds:
                p.record(pair_direct(X, parts[0], parts[2], "parallel") and pair_direct(X, parts[1], parts[3], "parallel"),
                         lambda: _vecs(*parts))
            else:
                p.record(True)
    return res


# -- preservers ------------------------------------------------------------


def _corpus(seed: int, count: int):
    out = []
    for X in _cube_spaces():
        rng = random.Random(seed)
        out += [Operator(M, X) for M in operator_corpus(rng, X.dim, count)]
    rng = random.Random(seed)
    L1 = l1_space(3)
    out.append(Operator(Matrix([[1, 0, -1], [0, 0, 0], [1, 0, -1]]), L1, name="rank-one example"))
    out.append(Operator(Matrix([[1, 0, 0], [0, 0, 0], [0, 0, 1]]), L1, name="coordinate projection"))
    for Y in (linf_space(2), hexagon(), l1_space(2)):
        for X in (linf_space(2), hexagon(), l1_space(2)):
            out += [Operator(random_matrix(rng, Y.dim, X.dim), X, Y) for _ in range(5)]
    return out


def suite_facet_oracle(seed: int = 0, operators: int = 200, pairs: int = 10_000) -> SuiteResult:
    """Facet certificates agree with brute-force pair sampling; counterexamples verify."""
    res = SuiteResult("facet-oracle")
    for X in _cube_spaces():
        rng = random.Random(seed)
        agree = res.prop("tea verdict == oracle on %s" % X.name)
        agree_par = res.prop("parallel verdict == oracle on %s" % X.name)
        ces = res.prop("counterexamples verify on %s" % X.name)
        for i, M in enumerate(operator_corpus(rng, X.dim, operators)):
            T = Operator(M, X)
            for kind, prop in (("tea", agree), ("parallel", agree_par)):
                r = preserves(T, kind)
                o = brute_force_preserves(T, kind, pairs, seed + i)
                prop.record(r.preserves == o.preserves, lambda: "%s %s" % (kind, M.to_strings()))
                if not r.preserves:
                    ce = r.counterexample
                    ces.record(ce is not None and verify_counterexample(T, ce.x, ce.y, kind), lambda: str(M.to_strings()))
    return res


def suite_corchar(seed: int = 0, bijective: int = 200) -> SuiteResult:
    res = SuiteResult("corchar")
    impl = res.prop("tea preserver => parallel preserver (corpus)")
    for T in _corpus(seed, 60):
        impl.record(not preserves_tea(T).preserves or preserves_parallel(T).preserves, lambda: str(T.matrix.to_strings()))
    L1 = l1_space(3)
    T = Operator(Matrix([[1, 0, -1], [0, 0, 0], [1, 0, -1]]), L1)
    res.prop("rank-one separation witness").record(preserves_parallel(T).preserves and not preserves_tea(T).preserves)
    for X in _cube_spaces() + [linf_space(2), hexagon()]:
        rng = random.Random(seed)
        p = res.prop("bijective: tea <=> parallel on %s" % X.name)
        for i in range(bijective):
            M = random_signed_permutation(rng, X.dim) if i % 4 == 0 else random_bijective_matrix(rng, X.dim)
            if i % 8 == 0:
                M = M * Fraction(rng.randint(1, 5), rng.randint(1, 5))
            T = Operator(M, X)
            p.record(preserves_tea(T).preserves == preserves_parallel(T).preserves, lambda: str(M.to_strings()))
    return res


def _certified_preservers(seed: int):
    return [T for T in _corpus(seed, 60) if preserves_tea(T).preserves]


def suite_intn0(seed: int = 0) -> SuiteResult:
    res = SuiteResult("thm-intn0")
    p = res.prop("kernel avoids relative interiors of certified faces")
    for T in _certified_preservers(seed):
        bad = kernel_face_check(T)
        p.record(not bad, lambda: "%s on face %s" % (T.matrix.to_strings(), bad[0].active))
    L1 = l1_space(3)
    T = Operator(Matrix([[1, 0, -1], [0, 0, 0], [1, 0, -1]]), L1)
    F = L1.facet(L1.index_of((1, 1, 1)))
    u = (Fraction(1, 3),) * 3
    res.prop("rank-one example: hypothesis fails on the kernel facet").record(
        exact.is_zero(T(u)) and F.in_relative_interior(u) and kernel_face_check(T) == []
    )
    return res


def suite_cardpreserve(seed: int = 0, isometries: int = 100, samples: int = 50) -> SuiteResult:
    res = SuiteResult("cardpreserve")
    count = res.prop("dual vertex count law on certified bijective preservers")
    smooth = res.prop("non-smooth points map to non-smooth points")
    for T in _certified_preservers(seed):
        if not T.is_bijective:
            continue
        count.record(count_law_check(T), lambda: str(T.matrix.to_strings()))
        rng = random.Random(seed)
        X = T.domain
        pts = [F.barycenter() for F in X.faces()] + [random_rational_vector(rng, X.dim) for _ in range(samples)]
        for x in pts:
            smooth.record((X.smoothness_order(x) == 1) == (T.codomain.smoothness_order(T(x)) == 1), lambda: _vecs(x))
    for X in _cube_spaces():
        rng = random.Random(seed)
        p = res.prop("support count law on signed permutations of %s" % X.name)
        for i in range(isometries):
            T = Operator(random_signed_permutation(rng, X.dim), X)
            p.record(support_count_law(T, samples, seed + i), lambda: str(T.matrix.to_strings()))
    return res


def suite_pcara(seed: int = 0, names=None) -> SuiteResult:
    res = SuiteResult("pcara")
    for name in names or catalog_names():
        X = parse_space_expr(name)
        p = res.prop("decomposition on every face of %s" % name)
        for F in X.faces():
            if F.dim < 1:
                continue
            x = F.barycenter()
            pts = F.decompose_interior_point(x)
            ok = (
                len(pts) == F.dim + 1
                and all(F.contains(q) for q in pts)
                and exact.vectors_rank(pts) == F.dim + 1
                and exact.scale(Fraction(1, len(pts)), exact.vsum(pts, X.dim)) == x
            )
            p.record(ok, lambda: "face %s" % (F.active,))
    return res


def suite_bipolar(seed: int = 0) -> SuiteResult:
    res = SuiteResult("bipolar")
    for name in catalog_names():
        X = parse_space_expr(name)
        P = X.polar()
        ok = set(P.primal_vertices) == set(X.signed_duals) and P.polar().same_norm(X)
        res.prop("polar round trip on %s" % name).record(ok)
    return res


def norm_one_bijective_operators(X: PolyhedralSpace, count: int, seed: int = 0) -> list:
    """All signed permutations first, then random bijective matrices scaled to norm one."""
    ops = [Operator(M, X) for M in signed_permutations(X.dim)][:count]
    rng = random.Random(seed)
    while len(ops) < count:
        T = Operator(random_bijective_matrix(rng, X.dim), X)
        ops.append(Operator(T.matrix * (1 / T.norm()), X))
    return ops


def suite_isometry(seed: int = 0, operators: int = 100) -> SuiteResult:
    res = SuiteResult("isometry")
    X = l1_space(3)
    res.prop("vertex support dominance on l1:3").record(vertex_support_dominance(X))
    p = res.prop("characterization on norm-one bijective operators of l1:3")
    for T in norm_one_bijective_operators(X, operators, seed):
        p.record(isometry_characterization_check(T), lambda: str(T.matrix.to_strings()))
    return res


def suite_eps_orth(seed: int = 0, eps=Fraction(1, 100), operators: int = 30) -> SuiteResult:
    """Sampled: operators preserving eps-orthogonality also preserve TEA pairs."""
    res = SuiteResult("eps-orth")
    p = res.prop("eps-orthogonality preservation => tea preservation (sampled)")
    for T in _corpus(seed, operators):
        ok, _ = preserves_eps_orthogonality(T, eps, samples=10, seed=seed)
        if ok:
            p.record(preserves_tea(T).preserves, lambda: str(T.matrix.to_strings()))
    e0 = res.prop("eps = 0 agrees with Birkhoff-James orthogonality")
    rng = random.Random(seed)
    from .pairs import is_bj_orthogonal

    for name in PAIR_SPACES:
        X = parse_space_expr(name)
        for _ in range(200):
            x, y = random_rational_vector(rng, X.dim), random_rational_vector(rng, X.dim)
            if rng.random() < 0.3:
                g = X.support_set(x).functionals[0]
                basis = exact.kernel_basis(Matrix([g]))
                y = basis[0]
            e0.record(is_eps_orthogonal(X, x, y, 0) == is_bj_orthogonal(X, x, y), lambda: _vecs(x, y))
    return res


SUITES = {
    "prop21": suite_prop21,
    "index-one": suite_index_one,
    "smooth-exposed": suite_smooth_exposed,
    "sums": suite_sums,
    "facet-oracle": suite_facet_oracle,
    "corchar": suite_corchar,
    "thm-intn0": suite_intn0,
    "cardpreserve": suite_cardpreserve,
    "pcara": suite_pcara,
    "bipolar": suite_bipolar,
    "isometry": suite_isometry,
    "eps-orth": suite_eps_orth,
}


def run_suite(name: str, seed: int = 0) -> list:
    """Run one suite (or every suite for ``all``); returns a list of SuiteResult."""
    if name == "all":
        return [fn(seed=seed) for fn in SUITES.values()]
    try:
        fn = SUITES[name]
    except KeyError:
        raise UnknownSuite("unknown suite %r; choose from %s" % (name, ", ".join(list(SUITES) + ["all"]))) from None
    return [fn(seed=seed)]


# -- randomized search -----------------------------------------------------


@dataclass
class SearchSummary:
    domain: str
    codomain: str
    trials: int
    seed: int
    by_rank: dict = field(default_factory=dict)
    bijective_preservers: int = 0
    violations: list = field(default_factory=list)

    def to_text(self) -> str:
        lines = [
            "search %s -> %s  trials=%d seed=%d" % (self.domain, self.codomain, self.trials, self.seed),
            "rank  sampled  tea-preservers  parallel-preservers",
        ]
        for r in sorted(self.by_rank):
            s, t, p = self.by_rank[r]
            lines.append("%4d  %7d  %14d  %19d" % (r, s, t, p))
        lines.append("bijective preservers: %d" % self.bijective_preservers)
        lines.append("invariant violations: %d" % len(self.violations))
        lines += ["  " + v for v in self.violations[:10]]
        return "\n".join(lines)


def search_preservers(X: PolyhedralSpace, Y: PolyhedralSpace, trials: int, seed: int = 0) -> SearchSummary:
    """Classify random matrices and check the derived invariants on each one."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(seed)
    out = SearchSummary(X.name, Y.name, trials, seed)
    for _ in range(trials):
        M = random_matrix(rng, Y.dim, X.dim)
        T = Operator(M, X, Y)
        tea = preserves_tea(T)
        par = preserves_parallel(T)
        s, t, p = out.by_rank.get(T.rank, (0, 0, 0))
        out.by_rank[T.rank] = (s + 1, t + tea.preserves, p + par.preserves)
        tag = str(M.to_strings())
        if tea.preserves and not par.preserves:
            out.violations.append("tea without parallel: " + tag)
        if T.rank <= 1 and not par.preserves:
            out.violations.append("rank <= 1 but not parallel: " + tag)
        for rep in (tea, par):
            ce = rep.counterexample
            if not rep.preserves and (ce is None or not verify_counterexample(T, ce.x, ce.y, rep.kind)):
                out.violations.append("unverified negative (%s): %s" % (rep.kind, tag))
        if T.is_bijective and par.preserves:
            out.bijective_preservers += 1
            if tea.preserves != par.preserves:
                out.violations.append("bijective tea/parallel mismatch: " + tag)
            if X.n_signed_duals < Y.n_signed_duals:
                out.violations.append("count law violated: " + tag)
    return out
