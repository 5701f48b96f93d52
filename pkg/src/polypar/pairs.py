"""Decision procedures for parallel pairs, TEA pairs and (approximate) orthogonality.

Two independent routes are provided for the pair relations: the direct
norm identities and the supporting-functional characterisation (a common
extreme functional, possibly up to sign).  Both are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import exact
from .errors import InvalidEpsilon, ZeroVector
from .exact import Q, Vector, dot
from .polyspace import PolyhedralSpace

KINDS = ("tea", "parallel")


@dataclass(frozen=True)
class PairVerdict:
    kind: str
    holds: bool
    witness_sign: Optional[int] = None
    witness_functional: Optional[Vector] = None
    note: str = ""

    def __bool__(self):
        return self.holds


def _check_kind(kind):
    if kind not in KINDS:
        raise ValueError("kind must be 'tea' or 'parallel', got %r" % (kind,))


def is_tea_direct(X: PolyhedralSpace, x, y) -> bool:
    x, y = X._coerce(x), X._coerce(y)
    return X.norm(exact.add(x, y)) == X.norm(x) + X.norm(y)


def is_parallel_direct(X: PolyhedralSpace, x, y) -> bool:
    x, y = X._coerce(x), X._coerce(y)
    total = X.norm(x) + X.norm(y)
    return X.norm(exact.add(x, y)) == total or X.norm(exact.sub(x, y)) == total


def pair_direct(X: PolyhedralSpace, x, y, kind: str) -> bool:
    _check_kind(kind)
    return is_tea_direct(X, x, y) if kind == "tea" else is_parallel_direct(X, x, y)


def _nonzero_supports(X, x, y):
    x, y = X._coerce(x), X._coerce(y)
    if exact.is_zero(x) or exact.is_zero(y):
        raise ZeroVector("functional pair tests need nonzero vectors")
    return X.support_indices(x), X.support_indices(y)


def is_tea_functional(X: PolyhedralSpace, x, y) -> PairVerdict:
    sx, sy = _nonzero_supports(X, x, y)
    common = sorted(set(sx) & set(sy))
    if not common:
        return PairVerdict("tea", False)
    return PairVerdict("tea", True, 1, X.signed_dual(common[0]))


def is_parallel_functional(X: PolyhedralSpace, x, y) -> PairVerdict:
    sx, sy = _nonzero_supports(X, x, y)
    sy = set(sy)
    for lam in (1, -1):
        for j in sx:
            partner = j if lam == 1 else X.antipode(j)
            if partner in sy:
                return PairVerdict("parallel", True, lam, X.signed_dual(j))
    return PairVerdict("parallel", False)


def pair_functional(X: PolyhedralSpace, x, y, kind: str) -> PairVerdict:
    _check_kind(kind)
    return is_tea_functional(X, x, y) if kind == "tea" else is_parallel_functional(X, x, y)


def is_bj_orthogonal(X: PolyhedralSpace, x, y) -> bool:
    """James criterion: some convex combination of ``Ext J(x)`` vanishes on ``y``."""
    x, y = X._coerce(x), X._coerce(y)
    if exact.is_zero(x):
        raise ZeroVector("Birkhoff-James orthogonality needs x != 0")
    vals = [dot(g, y) for g in X.support_set(x).functionals]
    return min(vals) <= 0 <= max(vals)


def _min_on_interval(A, B, C, lo, hi):
    """Minimum of ``A t^2 + B t + C`` (A >= 0) on ``[lo, hi]``; None marks an infinite end.

    Returns None when the quadratic is unbounded below there.
    """
    cands = []
    if lo is None and (A == 0 and B > 0):
        return None
    if hi is None and (A == 0 and B < 0):
        return None
    for t in (lo, hi):
        if t is not None:
            cands.append(A * t * t + B * t + C)
    if A > 0:
        t = -B / (2 * A)
        if (lo is None or t >= lo) and (hi is None or t <= hi):
            cands.append(C - B * B / (4 * A))
    elif B == 0:
        cands.append(C)
    return min(cands)


def is_eps_orthogonal(X: PolyhedralSpace, x, y, eps) -> bool:
    """Decide ``||x + t y||^2 >= ||x||^2 - 2 eps ||x|| ||t y||`` for every real ``t``.

    ``||x + t y||`` is piecewise linear in ``t`` with rational breakpoints
    where two signed functionals tie; together with ``t = 0`` (for ``|t|``)
    these split the line into pieces on which the condition is a rational
    quadratic inequality, minimised in closed form.
    """
    eps = Q(eps)
    if not 0 <= eps < 1:
        raise InvalidEpsilon("epsilon must lie in [0, 1), got %s" % exact.format_rational(eps))
    x, y = X._coerce(x), X._coerce(y)
    if exact.is_zero(x):
        raise ZeroVector("epsilon-orthogonality needs x != 0")
    if exact.is_zero(y):
        return True
    n0 = X.norm(x)
    c = 2 * eps * n0 * X.norm(y)
    ax = [dot(g, x) for g in X.signed_duals]
    by = [dot(g, y) for g in X.signed_duals]
    breaks = {Fraction(0)}
    k = len(ax)
    for i in range(k):
        for j in range(i + 1, k):
            db = by[i] - by[j]
            if db != 0:
                breaks.add(-(ax[i] - ax[j]) / db)
    pts = sorted(breaks)
    bounds = [None] + pts + [None]
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        if lo is None:
            t = hi - 1
        elif hi is None:
            t = lo + 1
        else:
            t = (lo + hi) / 2
        j = max(range(k), key=lambda i: ax[i] + t * by[i])
        a, b = ax[j], by[j]
        s = 1 if t > 0 else -1
        A = b * b
        B = 2 * a * b + c * s
        C = a * a - n0 * n0
        m = _min_on_interval(A, B, C, lo, hi)
        if m is None or m < 0:
            return False
    return True


def has_numerical_index_one(X: PolyhedralSpace) -> bool:
    """``n(X) = 1`` iff every dual vertex takes values +-1 on every primal vertex."""
    return all(abs(dot(g, v)) == 1 for g in X.dual_vertices for v in X.primal_vertices)
