"""Seeded random generators for vectors, operators and facet-cone points."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from . import exact
from .exact import Matrix
from .polyspace import PolyhedralSpace
from .preserve import random_rational_vector

__all__ = [
    "random_rational_vector",
    "random_matrix",
    "random_bijective_matrix",
    "signed_permutations",
    "random_signed_permutation",
    "rank_one_matrix",
    "operator_corpus",
    "random_cone_point",
    "random_sphere_point",
]


def _entry(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-3, 3), rng.randint(1, 3))


def random_matrix(rng: random.Random, rows: int, cols: int) -> Matrix:
    """Entries with numerators in [-3, 3] and denominators in [1, 3]."""
    return Matrix([[_entry(rng) for _ in range(cols)] for _ in range(rows)], ncols=cols)


def random_bijective_matrix(rng: random.Random, n: int) -> Matrix:
    while True:
        M = random_matrix(rng, n, n)
        if exact.rank(M) == n:
            return M


def signed_permutations(n: int) -> list:
    out = []
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((1, -1), repeat=n):
            rows = [[0] * n for _ in range(n)]
            for i, (j, s) in enumerate(zip(perm, signs)):
                rows[i][j] = s
            out.append(Matrix(rows, ncols=n))
    return out


def random_signed_permutation(rng: random.Random, n: int) -> Matrix:
    perm = list(range(n))
    rng.shuffle(perm)
    rows = [[0] * n for _ in range(n)]
    for i, j in enumerate(perm):
        rows[i][j] = rng.choice((1, -1))
    return Matrix(rows, ncols=n)


def rank_one_matrix(rng: random.Random, rows: int, cols: int) -> Matrix:
    while True:
        u = [_entry(rng) for _ in range(rows)]
        v = [_entry(rng) for _ in range(cols)]
        M = Matrix([[a * b for b in v] for a in u], ncols=cols)
        if exact.rank(M) == 1:
            return M


def _coordinate_projection(rng: random.Random, n: int) -> Matrix:
    keep = rng.sample(range(n), rng.randint(1, n - 1))
    return Matrix([[1 if i == j and i in keep else 0 for j in range(n)] for i in range(n)], ncols=n)


def operator_corpus(rng: random.Random, n: int, count: int) -> list:
    """Square matrices mixing signed permutations, rank-one maps, coordinate projections, small integer and random rational matrices."""
    makers = [
        lambda: random_signed_permutation(rng, n),
        lambda: rank_one_matrix(rng, n, n),
        lambda: _coordinate_projection(rng, n),
        lambda: Matrix([[rng.randint(-1, 1) for _ in range(n)] for _ in range(n)], ncols=n),
        lambda: random_matrix(rng, n, n),
    ]
    out = [Matrix.zeros(n, n), Matrix.identity(n)]
    while len(out) < count:
        out.append(makers[len(out) % len(makers)]())
    return out[:count]


def random_cone_point(rng: random.Random, X: PolyhedralSpace, facet_index: int) -> tuple:
    """Positive rational combination of the vertices of one facet."""
    verts = X.facet(facet_index).vertex_set
    while True:
        w = [rng.randint(0, 9) for _ in verts]
        if any(w):
            return exact.vsum((exact.scale(wi, v) for wi, v in zip(w, verts)), X.dim)


def random_sphere_point(rng: random.Random, X: PolyhedralSpace) -> tuple:
    v = random_rational_vector(rng, X.dim)
    return exact.scale(1 / X.norm(v), v)
