"""Linear operators between polyhedral spaces and exact preservation certificates.

TEA preservation is decided facet by facet: ``T`` preserves TEA pairs iff
for every facet ``F`` of the domain ball either ``T`` kills ``F`` or some
signed dual vertex ``g`` of the codomain satisfies ``g(Tv) = ||Tv||`` at
every vertex ``v`` of ``F``.  Such a ``g`` supports ``T`` on the whole cone
over ``F`` (sum the vertex equalities), and conversely pairwise TEA images of
a convex set force a common supporting functional.  For rank at least two,
parallel preservation is equivalent; rank at most one preserves parallel
pairs trivially since all images are collinear.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import exact
from .errors import (
    DimensionMismatch,
    MappingAmbiguous,
    NotBijective,
    NotPreserver,
    PreconditionFailed,
)
from .exact import Matrix, Vector, dot, format_vector
from .pairs import is_bj_orthogonal, is_eps_orthogonal, pair_direct
from .polyspace import Face, PolyhedralSpace

DEFAULT_EPS = Fraction(1, 100)


class Operator:
    """Exact rational matrix from ``domain`` to ``codomain`` (shape codomain.dim x domain.dim)."""

    def __init__(self, matrix, domain: PolyhedralSpace, codomain: Optional[PolyhedralSpace] = None, name: str = ""):
        codomain = domain if codomain is None else codomain
        matrix = matrix if isinstance(matrix, Matrix) else Matrix(matrix, ncols=domain.dim)
        if matrix.shape != (codomain.dim, domain.dim):
            raise DimensionMismatch(
                "matrix shape %s does not map dimension %d to %d" % (matrix.shape, domain.dim, codomain.dim)
            )
        self.matrix = matrix
        self.domain = domain
        self.codomain = codomain
        self.name = name
        self.rank = exact.rank(matrix)
        self.kernel = tuple(exact.kernel_basis(matrix))

    def __repr__(self):
        return "Operator(%r: %s -> %s)" % (self.matrix, self.domain.name, self.codomain.name)

    def __call__(self, x) -> Vector:
        return self.matrix.apply(self.domain._coerce(x))

    apply = __call__

    @property
    def is_bijective(self) -> bool:
        return self.domain.dim == self.codomain.dim and self.rank == self.domain.dim

    def norm(self) -> Fraction:
        """Operator norm; the max of a convex function over the ball sits at a vertex."""
        return max(self.codomain.norm(self(v)) for v in self.domain.primal_vertices)

    def compose(self, other: "Operator") -> "Operator":
        return Operator(self.matrix @ other.matrix, other.domain, self.codomain)


@dataclass(frozen=True)
class FacetCertificate:
    """Certificate for the facet of signed dual index ``facet``.

    ``functional`` is a common supporting functional of all vertex images,
    ``image_zero`` marks facets killed by the operator; neither means failure.
    """

    facet: int
    functional: Optional[Vector]
    image_zero: bool = False

    @property
    def ok(self) -> bool:
        return self.image_zero or self.functional is not None

    def describe(self) -> str:
        if self.image_zero:
            return "image-zero"
        if self.functional is None:
            return "none"
        return "(%s)" % format_vector(self.functional)


@dataclass(frozen=True)
class Counterexample:
    x: Vector
    y: Vector
    kind: str
    before: bool
    after: bool


@dataclass(frozen=True)
class PreservationReport:
    kind: str
    preserves: bool
    facet_certificates: tuple = field(default=())
    counterexample: Optional[Counterexample] = None
    branch: str = "facet-certificates"

    def certificate_map(self, X: PolyhedralSpace) -> dict:
        return {X.signed_dual(c.facet): c.describe() for c in self.facet_certificates}

    def to_text(self, X: PolyhedralSpace) -> str:
        lines = [
            "kind: %s" % self.kind,
            "preserves: %s" % ("true" if self.preserves else "false"),
            "branch: %s" % self.branch,
        ]
        for c in self.facet_certificates:
            lines.append("facet (%s): %s" % (format_vector(X.signed_dual(c.facet)), c.describe()))
        if self.counterexample is not None:
            ce = self.counterexample
            lines += [
                "counterexample:",
                "  x: %s" % format_vector(ce.x),
                "  y: %s" % format_vector(ce.y),
                "  before: %s %s" % (ce.kind, "holds" if ce.before else "fails"),
                "  after: %s %s" % (ce.kind, "holds" if ce.after else "fails"),
            ]
        elif not self.preserves:
            lines.append("counterexample: not found")
        return "\n".join(lines)

    def to_dict(self, X: PolyhedralSpace) -> dict:
        d = {
            "kind": self.kind,
            "preserves": self.preserves,
            "branch": self.branch,
            "facets": [
                {"functional": [exact.format_rational(a) for a in X.signed_dual(c.facet)], "certificate": c.describe()}
                for c in self.facet_certificates
            ],
        }
        if self.counterexample is not None:
            ce = self.counterexample
            d["counterexample"] = {
                "x": [exact.format_rational(a) for a in ce.x],
                "y": [exact.format_rational(a) for a in ce.y],
                "before": ce.before,
                "after": ce.after,
            }
        return d


# -- certificates ----------------------------------------------------------


def common_functionals(T: Operator, points) -> list:
    """Signed codomain dual indices supporting ``T p`` for every ``p`` in ``points``."""
    Y = T.codomain
    images = [T(p) for p in points]
    norms = [Y.norm(w) for w in images]
    return [
        j for j, g in enumerate(Y.signed_duals)
        if all(dot(g, w) == nw for w, nw in zip(images, norms))
    ]


def face_certificate(T: Operator, F: Face) -> FacetCertificate:
    verts = F.vertex_set
    if all(exact.is_zero(T(v)) for v in verts):
        return FacetCertificate(F.active[0], None, image_zero=True)
    common = common_functionals(T, verts)
    functional = T.codomain.signed_dual(common[0]) if common else None
    return FacetCertificate(F.active[0], functional)


def verify_counterexample(T: Operator, x, y, kind: str) -> bool:
    """True iff ``(x, y)`` is a ``kind`` pair in the domain whose image is not."""
    return pair_direct(T.domain, x, y, kind) and not pair_direct(T.codomain, T(x), T(y), kind)


def _mean(points, dim):
    return exact.scale(Fraction(1, len(points)), exact.vsum(points, dim))


def _interior_samples(verts, dim, count, rng):
    out = []
    for _ in range(count):
        w = [rng.randint(1, 9) for _ in verts]
        tot = sum(w)
        out.append(exact.vsum((exact.scale(Fraction(wi, tot), v) for wi, v in zip(w, verts)), dim))
    return out


def _segment_params(T: Operator, a, b) -> list:
    """Test parameters in (0, 1) covering every linear piece of the image norms on [a, b]."""
    Y = T.codomain
    Ta, Tb = T(a), T(b)
    d = exact.sub(Tb, Ta)
    breaks = {Fraction(0), Fraction(1)}
    for base in (Ta, exact.scale(2, Ta)):
        av = [dot(g, base) for g in Y.signed_duals]
        dv = [dot(g, d) for g in Y.signed_duals]
        k = len(av)
        for i in range(k):
            for j in range(i + 1, k):
                den = dv[i] - dv[j]
                if den != 0:
                    t = -(av[i] - av[j]) / den
                    if 0 < t < 1:
                        breaks.add(t)
    pts = sorted(breaks)
    out = []
    for lo, hi in zip(pts[:-1], pts[1:]):
        for q in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
            out.append(lo + q * (hi - lo))
    return out


def _candidate_pairs(T: Operator, F: Face, kind: str, seed: int):
    """Candidate pairs inside ``F``: vertex pairs, then barycentric points, then segment scans."""
    X = T.domain
    verts = F.vertex_set
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            yield verts[i], verts[j]
    for k in range(2, len(verts)):
        yield _mean(verts[:k], X.dim), verts[k]
    if kind == "tea":
        return
    rng = random.Random(seed)
    anchors = [F.barycenter()] + _interior_samples(verts, X.dim, 4, rng)
    live = [v for v in verts if not exact.is_zero(T(v))]
    for u in anchors:
        for v in live:
            yield u, v
    for a, b in [(u, v) for u in anchors for v in live] + [(v, z) for v in live for z in live if v != z]:
        for t in _segment_params(T, a, b):
            yield a, exact.add(exact.scale(1 - t, a), exact.scale(t, b))


def _search_counterexample(T: Operator, F: Face, kind: str, seed: int = 0) -> Optional[Counterexample]:
    for x, y in _candidate_pairs(T, F, kind, seed):
        if not pair_direct(T.codomain, T(x), T(y), kind):
            return Counterexample(x, y, kind, pair_direct(T.domain, x, y, kind), False)
    return None


def _facet_scan(T: Operator, kind: str) -> PreservationReport:
    certs = tuple(face_certificate(T, F) for F in T.domain.facets())
    bad = next((c for c in certs if not c.ok), None)
    if bad is None:
        return PreservationReport(kind, True, certs)
    ce = _search_counterexample(T, T.domain.facet(bad.facet), kind)
    return PreservationReport(kind, False, certs, ce)


def preserves_tea(T: Operator) -> PreservationReport:
    return _facet_scan(T, "tea")


def preserves_parallel(T: Operator) -> PreservationReport:
    if T.rank <= 1:
        return PreservationReport("parallel", True, branch="rank<=1")
    rep = _facet_scan(T, "parallel")
    return PreservationReport("parallel", rep.preserves, rep.facet_certificates, rep.counterexample, "rank>=2")


def preserves(T: Operator, kind: str) -> PreservationReport:
    if kind == "tea":
        return preserves_tea(T)
    if kind == "parallel":
        return preserves_parallel(T)
    raise ValueError("kind must be 'tea' or 'parallel', got %r" % (kind,))


# -- faces and kernels -----------------------------------------------------


def kernel_meets_relative_interior(T: Operator, F: Face) -> bool:
    """Exact test for ``ker T`` meeting the relative interior of ``F``.

    ``aff F`` is cut out by the active functionals, so ``ker T`` meets it in
    an affine space ``p + span N``.  The trace of ``F`` there is a bounded
    polytope; it meets ``Int_r F`` iff the barycenter of its vertices does.
    """
    from .hull import polytope_vertices

    X = T.domain
    A = [X.signed_dual(j) for j in F.active]
    system = Matrix(A + list(T.matrix.rows), ncols=X.dim)
    rhs = [1] * len(A) + [0] * T.codomain.dim
    p = exact.solve(system, rhs)
    if p is None:
        return False
    N = exact.kernel_basis(system)
    if not N:
        return F.in_relative_interior(p)
    others = [g for j, g in enumerate(X.signed_duals) if j not in F.active]
    G = [[dot(g, v) for v in N] for g in others]
    b = [1 - dot(g, p) for g in others]
    verts = polytope_vertices(G, b)
    if not verts:
        return False
    c = _mean(verts, len(N))
    y = exact.add(p, exact.vsum((exact.scale(ci, v) for ci, v in zip(c, N)), X.dim))
    return F.in_relative_interior(y)


def kernel_face_check(T: Operator) -> list:
    """Faces where the kernel/relative-interior dichotomy fails (empty when it holds).

    A face qualifies when ``T`` preserves TEA pairs inside it and does not
    vanish on it; then its relative interior must avoid ``ker T``.
    """
    violations = []
    if not T.kernel:
        return violations
    for F in T.domain.faces():
        if F.dim < 1:
            continue
        cert = face_certificate(T, F)
        if cert.image_zero or cert.functional is None:
            continue
        if kernel_meets_relative_interior(T, F):
            violations.append(F)
    return violations


def rank_smooth_kernel_check(T: Operator) -> bool:
    """No ``k``-smooth point with ``k < rank T`` lies in the kernel of a TEA preserver."""
    if not preserves_tea(T).preserves:
        raise PreconditionFailed("operator does not preserve TEA pairs")
    n = T.domain.dim
    if not T.kernel:
        return True
    for k in range(1, T.rank):
        for F in T.domain.faces(n - k):
            if kernel_meets_relative_interior(T, F):
                return False
    return True


# -- smooth cones, cardinalities, isometries --------------------------------


def facet_image_map(T: Operator, samples: int = 8, seed: int = 0) -> dict:
    """For a bijective preserver, the map ``f -> g`` with ``T(Sm f)`` inside ``Sm g``."""
    if not T.is_bijective:
        raise NotBijective("facet image map needs a bijective operator")
    if not preserves_parallel(T).preserves:
        raise NotPreserver("operator does not preserve parallel pairs")
    X, Y = T.domain, T.codomain
    rng = random.Random(seed)
    out = {}
    for j in range(X.n_signed_duals):
        F = X.facet(j)
        s = Y.support_indices(T(F.barycenter()))
        if len(s) != 1:
            raise MappingAmbiguous(
                "image of the smooth cone of (%s) is not smooth" % format_vector(X.signed_dual(j))
            )
        for u in _interior_samples(F.vertex_set, X.dim, samples, rng):
            if Y.support_indices(T(u)) != s:
                raise MappingAmbiguous(
                    "smooth cone of (%s) is split by the operator" % format_vector(X.signed_dual(j))
                )
        out[X.signed_dual(j)] = Y.signed_dual(s[0])
    return out


def random_rational_vector(rng: random.Random, n: int) -> Vector:
    """Numerators uniform in [-9, 9], denominators in [1, 9]; never the zero vector."""
    while True:
        v = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(n))
        if not exact.is_zero(v):
            return v


def _require_bijective_preserver(T: Operator):
    if not T.is_bijective:
        raise PreconditionFailed("operator is not bijective")
    if not preserves_parallel(T).preserves:
        raise PreconditionFailed("operator does not preserve parallel pairs")


def support_count_law(T: Operator, samples: int = 100, seed: int = 0) -> bool:
    """``|Ext J(x)| = |Ext J(Tx)|`` on vertices, facet barycenters and random points."""
    _require_bijective_preserver(T)
    X, Y = T.domain, T.codomain
    if X.n_signed_duals != Y.n_signed_duals:
        raise PreconditionFailed("domain and codomain have different numbers of dual vertices")
    rng = random.Random(seed)
    points = list(X.primal_vertices) + [F.barycenter() for F in X.facets()]
    points += [random_rational_vector(rng, X.dim) for _ in range(samples)]
    return all(len(X.support_indices(x)) == len(Y.support_indices(T(x))) for x in points)


def count_law_check(T: Operator) -> bool:
    _require_bijective_preserver(T)
    return T.domain.n_signed_duals >= T.codomain.n_signed_duals


def is_isometry(T: Operator) -> bool:
    X, Y = T.domain, T.codomain
    if X.dim != Y.dim:
        raise DimensionMismatch("isometry test needs equal dimensions")
    if T.rank != X.dim:
        return False
    return {T(v) for v in X.primal_vertices} == set(Y.primal_vertices)


def vertex_support_dominance(X: PolyhedralSpace) -> bool:
    """Every vertex has strictly more supporting functionals than any relative interior point of a positive-dimensional face."""
    low = min(len(X.support_indices(u)) for u in X.primal_vertices)
    high = max(len(F.active) for F in X.faces() if F.dim >= 1)
    return low > high


def isometry_characterization_check(T: Operator) -> bool:
    """``is_isometry(T)`` agrees with: bijective, preserves parallel pairs, equal vertex image norms."""
    X = T.domain
    if not X.same_norm(T.codomain):
        raise PreconditionFailed("operator must act on a single space")
    if not vertex_support_dominance(X):
        raise PreconditionFailed("domain fails vertex support dominance")
    if T.norm() != 1:
        raise PreconditionFailed("operator norm is %s, not 1" % exact.format_rational(T.norm()))
    norms = {T.codomain.norm(T(v)) for v in X.primal_vertices}
    rhs = T.is_bijective and preserves_parallel(T).preserves and len(norms) == 1
    return is_isometry(T) == rhs


# -- approximate orthogonality ---------------------------------------------


def _bj_directions(X: PolyhedralSpace, x, rng: random.Random, per_functional: int) -> list:
    """Directions ``y`` with ``x`` Birkhoff-James orthogonal to ``y``."""
    sup = X.support_set(x).functionals
    combos = list(sup)
    combos += [exact.scale(Fraction(1, 2), exact.add(g, h)) for i, g in enumerate(sup) for h in sup[i + 1:]]
    out = []
    for g in combos:
        basis = exact.kernel_basis(Matrix([g]))
        out.extend(basis)
        for _ in range(per_functional):
            c = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in basis]
            y = exact.vsum((exact.scale(ci, b) for ci, b in zip(c, basis)), X.dim)
            if not exact.is_zero(y):
                out.append(y)
    return out


def preserves_eps_orthogonality(T: Operator, eps=DEFAULT_EPS, samples: int = 20, seed: int = 0):
    """Sampled check that ``x`` BJ-orthogonal to ``y`` implies ``Tx`` eps-orthogonal to ``Ty``.

    Points are all face barycenters plus ``samples`` random points; not
    exhaustive.  Returns ``(ok, witness)`` where ``witness`` is a failing
    ``(x, y)`` or None.
    """
    X, Y = T.domain, T.codomain
    rng = random.Random(seed)
    points = list(X.primal_vertices) + [F.barycenter() for F in X.faces()]
    points += [random_rational_vector(rng, X.dim) for _ in range(samples)]
    for x in points:
        Tx = T(x)
        if exact.is_zero(Tx):
            continue
        for y in _bj_directions(X, x, rng, 2):
            assert is_bj_orthogonal(X, x, y)
            if not is_eps_orthogonal(Y, Tx, T(y), eps):
                return False, (x, y)
    return True, None
