"""Exact double description (Motzkin) for bounded polytopes.

Only what the package needs: the vertices of ``{x : A x <= b}`` when that
set is bounded.  The polytope is homogenised into the pointed cone
``{(x, t) : t*b - A x >= 0, t >= 0}`` and its extreme rays are built by
inserting one constraint at a time, with the combinatorial adjacency test.
Rays are kept as primitive integer vectors.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .exact import Matrix, bareiss_echelon, inverse, primitive


def _int_dot(h, r):
    return sum(a * b for a, b in zip(h, r))


def _normalise(r):
    g = math.gcd(*r)
    if g > 1:
        return tuple(a // g for a in r)
    return tuple(r)


def _initial_rows(H, d):
    """Greedily pick ``d`` linearly independent rows of ``H``."""
    chosen = []
    current_rank = 0
    for i, h in enumerate(H):
        trial = [H[j] for j in chosen] + [h]
        _, piv = bareiss_echelon(trial, d)
        if len(piv) > current_rank:
            chosen.append(i)
            current_rank = len(piv)
            if current_rank == d:
                return chosen
    return None


def extreme_rays(H: Sequence[Sequence[int]]) -> list:
    """Extreme rays of the pointed cone ``{y : h.y >= 0 for h in H}``.

    ``H`` holds integer rows of a common length ``d`` with rank ``d``.
    Returns a list of ``(ray, zero_set)`` with ``zero_set`` the indices of
    rows vanishing on the ray.
    """
    H = [tuple(int(a) for a in h) for h in H]
    d = len(H[0])
    K = _initial_rows(H, d)
    if K is None:
        raise ValueError("constraint matrix does not have full column rank; cone is not pointed")
    Kinv = inverse(Matrix([H[i] for i in K]))
    rays = []
    for j, col in enumerate(Kinv.columns()):
        r = primitive(col)
        zeros = frozenset(K[i] for i in range(d) if i != j)
        rays.append((r, zeros))
    in_K = set(K)
    for i, h in enumerate(H):
        if i in in_K:
            continue
        plus, zero, minus = [], [], []
        for k, (r, z) in enumerate(rays):
            s = _int_dot(h, r)
            if s > 0:
                plus.append((k, r, z, s))
            elif s < 0:
                minus.append((k, r, z, s))
            else:
                zero.append((r, z | {i}))
        new = [(r, z) for _, r, z, _ in plus] + zero
        if minus and plus:
            for kp, rp, zp, sp in plus:
                for km, rm, zm, sm in minus:
                    common = zp & zm
                    if len(common) < d - 2:
                        continue
                    adjacent = True
                    for k, (_, z) in enumerate(rays):
                        if k == kp or k == km:
                            continue
                        if common <= z:
                            adjacent = False
                            break
                    if not adjacent:
                        continue
                    combo = tuple(sp * b - sm * a for a, b in zip(rp, rm))
                    new.append((_normalise(combo), common | {i}))
        rays = new
    return rays


def polytope_vertices(A: Sequence[Sequence], b: Sequence) -> list:
    """Vertices of the bounded polytope ``{x : A x <= b}`` (exact).

    Returns an empty list when the polytope is empty.  Each vertex is a
    tuple of Fractions.  Boundedness is the caller's responsibility: any
    unbounded ray is reported as ValueError.
    """
    A = [[Fraction(a) for a in row] for row in A]
    b = [Fraction(x) for x in b]
    n = len(A[0])
    H = []
    for row, bi in zip(A, b):
        H.append(primitive([-a for a in row] + [bi]))
    H.append(tuple([0] * n + [1]))
    rays = extreme_rays(H)
    out = set()
    for r, _ in rays:
        t = r[-1]
        if t == 0:
            raise ValueError("polytope is unbounded")
        out.add(tuple(Fraction(a, t) for a in r[:-1]))
    return sorted(out)
