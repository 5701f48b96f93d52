"""Finite-dimensional polyhedral normed spaces.

A space is given by the vertices of its dual unit ball, one representative
per antipodal pair.  The norm is ``max |g . x|`` over those functionals, the
supporting functionals at ``x`` are the signed vertices attaining it, and
the primal unit ball ``{x : |g . x| <= 1}`` is converted to vertex form by
exact double description.  Faces of the unit ball are intersections of
facets; a facet corresponds to exactly one signed dual vertex.

Signed dual vertices are indexed ``0..2m-1``: index ``j < m`` is
``+dual_vertices[j]`` and ``j >= m`` is ``-dual_vertices[j - m]``.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import exact
from .errors import (
    CapacityExceeded,
    DegenerateNorm,
    DimensionMismatch,
    NotInteriorPoint,
    RedundantFunctional,
    UnknownFunctional,
    ZeroVector,
)
from .exact import Q, Vector, dot, format_vector
from .hull import polytope_vertices

MAX_DIM = 6
MAX_DUAL_VERTICES = 64


@dataclass(frozen=True)
class SupportSet:
    """``Ext J(point)``: the signed dual vertices attaining the norm at ``point``."""

    point: Vector
    indices: tuple
    functionals: tuple

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.functionals)

    def __contains__(self, g):
        return tuple(Q(a) for a in g) in self.functionals


@dataclass(frozen=True)
class Face:
    """A nonempty proper face of the unit ball.

    ``active`` are the signed dual indices equal to 1 on the whole face and
    ``vertices`` the primal vertex indices it contains.
    """

    space: "PolyhedralSpace" = field(compare=False, repr=False)
    active: tuple
    vertices: tuple
    dim: int

    @property
    def vertex_set(self) -> list:
        pv = self.space.primal_vertices
        return [pv[i] for i in self.vertices]

    @property
    def active_functionals(self) -> list:
        return [self.space.signed_dual(j) for j in self.active]

    @property
    def is_facet(self) -> bool:
        return self.dim == self.space.dim - 1

    def barycenter(self) -> Vector:
        pts = self.vertex_set
        s = exact.vsum(pts, self.space.dim)
        return exact.scale(Fraction(1, len(pts)), s)

    def contains(self, x) -> bool:
        x = self.space._coerce(x)
        return self.space.norm(x) == 1 and all(
            dot(self.space.signed_dual(j), x) == 1 for j in self.active
        )

    def in_relative_interior(self, x) -> bool:
        x = self.space._coerce(x)
        if exact.is_zero(x) or self.space.norm(x) != 1:
            return False
        return self.space.support_indices(x) == self.active

    def decompose_interior_point(self, x) -> list:
        """Split a relative-interior point into ``dim + 1`` independent points of the face.

        Directions spanning the face's affine hull are normalised to
        length ``eps/k``; the balancing point is minus their sum.  ``eps``
        is half the largest value keeping every point inside the unit ball,
        found by an exact ratio test.  The mean of the returned points is ``x``.
        """
        X = self.space
        x = X._coerce(x)
        if not self.in_relative_interior(x):
            raise NotInteriorPoint("(%s) is not in the relative interior of the face" % format_vector(x))
        _, directions = exact.solve_affine(self.vertex_set)
        k = len(directions)
        if k == 0:
            return [x]
        steps = [exact.scale(Fraction(1, k) / X.norm(d), d) for d in directions]
        steps = [exact.neg(exact.vsum(steps, X.dim))] + steps
        limit = None
        for g in X.signed_duals:
            slack = 1 - dot(g, x)
            for w in steps:
                rate = dot(g, w)
                if rate > 0:
                    bound = slack / rate
                    if limit is None or bound < limit:
                        limit = bound
        eps = limit / 2
        return [exact.add(x, exact.scale(eps, w)) for w in steps]


class PolyhedralSpace:
    """Immutable polyhedral norm on ``Q^dim``.  Build with :func:`build_space`."""

    def __init__(self, dim: int, dual_vertices, primal_vertices, name: str = ""):
        self.dim = dim
        self.dual_vertices = tuple(dual_vertices)
        self.primal_vertices = tuple(primal_vertices)
        self.name = name
        m = len(self.dual_vertices)
        self.signed_duals = self.dual_vertices + tuple(exact.neg(g) for g in self.dual_vertices)
        self._signed_index = {g: j for j, g in enumerate(self.signed_duals)}
        self._m = m
        # integer copy of the duals for fast exact evaluation
        self._dual_scale = math.lcm(*(a.denominator for g in self.dual_vertices for a in g))
        self._int_duals = tuple(tuple(int(a * self._dual_scale) for a in g) for g in self.dual_vertices)
        self._incidence = tuple(
            frozenset(i for i, v in enumerate(self.primal_vertices) if dot(g, v) == 1)
            for g in self.signed_duals
        )
        self._lattice = None
        self._lock = threading.Lock()

    def __repr__(self):
        return "PolyhedralSpace(%r, dim=%d, %d dual vertices)" % (self.name, self.dim, len(self.dual_vertices))

    # -- basic queries -------------------------------------------------

    @property
    def n_signed_duals(self) -> int:
        return len(self.signed_duals)

    def signed_dual(self, j: int) -> Vector:
        return self.signed_duals[j]

    def index_of(self, f) -> int:
        key = tuple(Q(a) for a in f)
        try:
            return self._signed_index[key]
        except KeyError:
            raise UnknownFunctional("(%s) is not a signed dual vertex of %s" % (format_vector(key), self.name or "the space")) from None

    def antipode(self, j: int) -> int:
        return j + self._m if j < self._m else j - self._m

    def _coerce(self, x) -> Vector:
        if len(x) != self.dim:
            raise DimensionMismatch("vector of length %d in a %d-dimensional space" % (len(x), self.dim))
        return tuple(Q(a) for a in x)

    def _dual_values(self, x):
        """Values ``g . x`` for the stored duals, as integers sharing the returned positive denominator."""
        x = self._coerce(x)
        den = math.lcm(*(a.denominator for a in x))
        xi = [a.numerator * (den // a.denominator) for a in x]
        vals = [sum(gi * xj for gi, xj in zip(g, xi)) for g in self._int_duals]
        return vals, den * self._dual_scale

    def norm(self, x) -> Fraction:
        vals, den = self._dual_values(x)
        return Fraction(max(abs(v) for v in vals), den)

    def support_indices(self, x) -> tuple:
        vals, _ = self._dual_values(x)
        top = max(abs(v) for v in vals)
        if top == 0:
            raise ZeroVector("the zero vector has no supporting functional set")
        m = self._m
        return tuple(j for j, v in enumerate(vals) if v == top) + tuple(j + m for j, v in enumerate(vals) if -v == top)

    def support_set(self, x) -> SupportSet:
        x = self._coerce(x)
        idx = self.support_indices(x)
        return SupportSet(x, idx, tuple(self.signed_duals[j] for j in idx))

    def smoothness_order(self, x) -> int:
        return exact.vectors_rank(self.support_set(x).functionals)

    def in_smooth_cone(self, f, x) -> bool:
        j = self.index_of(f)
        x = self._coerce(x)
        if exact.is_zero(x):
            return False
        return self.support_indices(x) == (j,)

    # -- face lattice --------------------------------------------------

    def _face_lattice(self) -> dict:
        with self._lock:
            if self._lattice is None:
                self._lattice = self._compute_lattice()
            return self._lattice

    def _compute_lattice(self) -> dict:
        inc = self._incidence
        seen = {}
        frontier = []
        for s in inc:
            if s and s not in seen:
                seen[s] = None
                frontier.append(s)
        while frontier:
            nxt = []
            for s in frontier:
                for t in inc:
                    u = s & t
                    if u and u not in seen:
                        seen[u] = None
                        nxt.append(u)
            frontier = nxt
        lattice = {}
        for vs in seen:
            active = tuple(j for j, s in enumerate(inc) if vs <= s)
            dim = exact.affine_dimension([self.primal_vertices[i] for i in vs])
            lattice[active] = Face(self, active, tuple(sorted(vs)), dim)
        return dict(sorted(lattice.items()))

    def faces(self, k: Optional[int] = None) -> list:
        """All ``k``-faces (every proper face if ``k`` is None), ordered by active set."""
        if k is not None and not 0 <= k <= self.dim - 1:
            raise ValueError("face dimension must lie in [0, %d]" % (self.dim - 1))
        return [F for F in self._face_lattice().values() if k is None or F.dim == k]

    def facets(self) -> list:
        """One facet per signed dual vertex, in signed-index order."""
        return [self._face_lattice()[(j,)] for j in range(self.n_signed_duals)]

    def facet(self, j: int) -> Face:
        return self._face_lattice()[(j,)]

    def minimal_face(self, x) -> Face:
        return self._face_lattice()[self.support_indices(x)]

    # -- derived spaces ------------------------------------------------

    def polar(self, name: Optional[str] = None) -> "PolyhedralSpace":
        return build_space(self.dim, self.primal_vertices, name=name or "polar(%s)" % self.name)

    def signed_dual_set(self) -> frozenset:
        return frozenset(self.signed_duals)

    def same_norm(self, other: "PolyhedralSpace") -> bool:
        return self.dim == other.dim and self.signed_dual_set() == other.signed_dual_set()

    def has_primal_vertex(self, v) -> bool:
        v = self._coerce(v)
        return v in set(self.primal_vertices)


def build_space(dim: int, dual_vertices: Sequence, name: str = "") -> PolyhedralSpace:
    """Validate dual data and derive the primal vertices.

    Duplicate and antipodal functionals are dropped (first occurrence kept).
    Raises DegenerateNorm when the functionals do not span, and
    RedundantFunctional for a functional that is not a vertex of the dual
    ball, i.e. whose facet of the primal ball is not ``dim - 1`` dimensional.
    """
    if dim < 1:
        raise DimensionMismatch("dimension must be positive")
    if dim > MAX_DIM:
        raise CapacityExceeded("dimension %d exceeds the limit %d" % (dim, MAX_DIM))
    if not dual_vertices:
        raise DegenerateNorm("no dual vertices given")
    kept = []
    seen = set()
    for g in dual_vertices:
        if len(g) != dim:
            raise DimensionMismatch("functional of length %d in dimension %d" % (len(g), dim))
        g = tuple(Q(a) for a in g)
        if exact.is_zero(g):
            raise RedundantFunctional(g)
        if g in seen:
            continue
        seen.add(g)
        seen.add(exact.neg(g))
        kept.append(g)
    if len(kept) > MAX_DUAL_VERTICES:
        raise CapacityExceeded("%d dual vertices exceed the limit %d" % (len(kept), MAX_DUAL_VERTICES))
    if exact.vectors_rank(kept) < dim:
        raise DegenerateNorm("dual vertices do not span the space")
    signed = kept + [exact.neg(g) for g in kept]
    primal = polytope_vertices(signed, [1] * len(signed))
    for g in kept:
        facet = [v for v in primal if dot(g, v) == 1]
        if exact.affine_dimension(facet) < dim - 1:
            raise RedundantFunctional(g)
    return PolyhedralSpace(dim, kept, primal, name)
