"""l1 and l-infinity direct sums of polyhedral spaces, and pair rules on p-sums.

``X (+)_1 Y`` and ``X (+)_inf Y`` are polyhedral again and are built as
ordinary spaces.  For ``1 < p < inf`` the sum is not polyhedral; pair tests
there apply the exact structural rules first and fall back to a
floating-point comparison, always tagged ``numeric``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import exact
from .errors import InvalidP, InvalidTolerance, ZeroVector
from .exact import Q, Vector
from .pairs import PairVerdict, _check_kind, pair_direct, pair_functional
from .polyspace import PolyhedralSpace, build_space


@dataclass(frozen=True)
class SumPoint:
    left: Vector
    right: Vector

    @classmethod
    def of(cls, X: PolyhedralSpace, Y: PolyhedralSpace, left, right) -> "SumPoint":
        return cls(X._coerce(left), Y._coerce(right))

    @classmethod
    def split(cls, X: PolyhedralSpace, Y: PolyhedralSpace, z) -> "SumPoint":
        z = tuple(Q(a) for a in z)
        if len(z) != X.dim + Y.dim:
            raise exact.DimensionMismatch("sum point of length %d, expected %d" % (len(z), X.dim + Y.dim))
        return cls(z[: X.dim], z[X.dim:])

    def concat(self) -> Vector:
        return self.left + self.right

    def is_zero(self) -> bool:
        return exact.is_zero(self.left) and exact.is_zero(self.right)


def _zeros(n):
    return (Fraction(0),) * n


def sum_l1(X: PolyhedralSpace, Y: PolyhedralSpace, name: Optional[str] = None) -> PolyhedralSpace:
    """``X (+)_1 Y``: dual vertices are all concatenations ``(f, g)``."""
    duals = [f + g for f in X.dual_vertices for g in Y.signed_duals]
    return build_space(X.dim + Y.dim, duals, name=name or "l1(%s,%s)" % (X.name, Y.name))


def sum_linf(X: PolyhedralSpace, Y: PolyhedralSpace, name: Optional[str] = None) -> PolyhedralSpace:
    """``X (+)_inf Y``: dual vertices are the embeddings ``(f, 0)`` and ``(0, g)``."""
    duals = [f + _zeros(Y.dim) for f in X.dual_vertices]
    duals += [_zeros(X.dim) + g for g in Y.dual_vertices]
    return build_space(X.dim + Y.dim, duals, name=name or "linf(%s,%s)" % (X.name, Y.name))


def _as_point(X, Y, z) -> SumPoint:
    if isinstance(z, SumPoint):
        return SumPoint.of(X, Y, z.left, z.right)
    if len(z) == 2 and not isinstance(z[0], (int, Fraction, str)):
        return SumPoint.of(X, Y, z[0], z[1])
    return SumPoint.split(X, Y, z)


def _parse_p(p) -> float:
    try:
        val = float(Q(p)) if isinstance(p, str) else float(p)
    except (TypeError, ValueError, exact.ParseError):
        raise InvalidP("p must be a real number, got %r" % (p,)) from None
    if not math.isfinite(val) or val <= 1:
        raise InvalidP("p must be finite and > 1, got %r" % (p,))
    return val


def p_sum_norm(X: PolyhedralSpace, Y: PolyhedralSpace, p, z) -> float:
    """Floating-point norm of ``z`` in ``X (+)_p Y``."""
    z = _as_point(X, Y, z)
    pf = float(Q(p)) if isinstance(p, str) else float(p)
    a = float(X.norm(z.left))
    b = float(Y.norm(z.right))
    if a == 0 or b == 0:
        return max(a, b)
    return (a ** pf + b ** pf) ** (1.0 / pf)


@dataclass(frozen=True)
class PSumVerdict:
    """Outcome of a pair test on ``X (+)_p Y``; ``method`` is 'structural' or 'numeric'."""

    kind: str
    holds: bool
    method: str
    reason: str
    gap: Optional[float] = None


def p_sum_pair_test(X, Y, p, z1, z2, kind: str, tol: float = 1e-9) -> PSumVerdict:
    _check_kind(kind)
    pf = _parse_p(p)
    try:
        tol = float(tol)
    except (TypeError, ValueError):
        raise InvalidTolerance("tolerance must be a positive number") from None
    if not (tol > 0 and math.isfinite(tol)):
        raise InvalidTolerance("tolerance must be a positive number, got %r" % (tol,))
    z1, z2 = _as_point(X, Y, z1), _as_point(X, Y, z2)
    if z1.is_zero() or z2.is_zero():
        raise ZeroVector("p-sum pair tests need nonzero sum points")
    x1z, y1z = exact.is_zero(z1.left), exact.is_zero(z1.right)
    x2z, y2z = exact.is_zero(z2.left), exact.is_zero(z2.right)
    if x1z and x2z:
        ok = pair_direct(Y, z1.right, z2.right, kind)
        return PSumVerdict(kind, ok, "structural", "left components vanish; decided in the right factor")
    if y1z and y2z:
        ok = pair_direct(X, z1.left, z2.left, kind)
        return PSumVerdict(kind, ok, "structural", "right components vanish; decided in the left factor")
    if (x1z and y2z) or (x2z and y1z):
        return PSumVerdict(kind, False, "structural", "complementary zero components are never parallel for 1<p<inf")
    if not (x1z or y1z or x2z or y2z):
        for side, F, a, b in (("left", X, z1.left, z2.left), ("right", Y, z1.right, z2.right)):
            if not pair_direct(F, a, b, kind):
                return PSumVerdict(kind, False, "structural", "component pair fails in the %s factor" % side)
    rhs = p_sum_norm(X, Y, pf, z1) + p_sum_norm(X, Y, pf, z2)
    signs = (1,) if kind == "tea" else (1, -1)
    best = max(
        p_sum_norm(X, Y, pf, SumPoint(exact.add(z1.left, exact.scale(s, z2.left)),
                                      exact.add(z1.right, exact.scale(s, z2.right))))
        for s in signs
    )
    gap = rhs - best
    return PSumVerdict(kind, gap <= tol, "numeric", "floating-point norm comparison", gap)


# -- exact rules on the polyhedral sums ------------------------------------


def _attaining(F: PolyhedralSpace, v) -> set:
    """Signed dual indices attaining the norm at ``v``; every index when ``v = 0``."""
    if exact.is_zero(v):
        return set(range(F.n_signed_duals))
    return set(F.support_indices(v))


def _l1_witness(X, Y, z1: SumPoint, z2: SumPoint, lam: int):
    a = _attaining(X, z1.left) & _attaining(X, exact.scale(lam, z2.left))
    b = _attaining(Y, z1.right) & _attaining(Y, exact.scale(lam, z2.right))
    if not a or not b:
        return None
    return X.signed_dual(min(a)) + Y.signed_dual(min(b))


def _linf_support(X, Y, z: SumPoint) -> set:
    nx, ny = X.norm(z.left), Y.norm(z.right)
    out = set()
    if nx >= ny:
        out |= {X.signed_dual(j) + _zeros(Y.dim) for j in X.support_indices(z.left)}
    if ny >= nx:
        out |= {_zeros(X.dim) + Y.signed_dual(j) for j in Y.support_indices(z.right)}
    return out


def _linf_witness(X, Y, z1, z2, lam):
    s1 = _linf_support(X, Y, z1)
    s2 = _linf_support(X, Y, SumPoint(exact.scale(lam, z2.left), exact.scale(lam, z2.right)))
    common = sorted(s1 & s2)
    return common[0] if common else None


def _finish(kind, holds, witness_fn, note):
    if not holds:
        return PairVerdict(kind, False, note=note)
    for lam in ((1,) if kind == "tea" else (1, -1)):
        w = witness_fn(lam)
        if w is not None:
            return PairVerdict(kind, True, lam, w, note=note)
    raise AssertionError("pair holds but no common extreme functional was found")


def l1_sum_pair_rules(X, Y, z1, z2, kind: str) -> PairVerdict:
    _check_kind(kind)
    z1, z2 = _as_point(X, Y, z1), _as_point(X, Y, z2)
    if z1.is_zero() or z2.is_zero():
        raise ZeroVector("sum pair rules need nonzero sum points")
    zeros = [exact.is_zero(v) for v in (z1.left, z1.right, z2.left, z2.right)]
    witness = lambda lam: _l1_witness(X, Y, z1, z2, lam)

    def norm(z: SumPoint):
        return X.norm(z.left) + Y.norm(z.right)

    def direct(lam):
        s = SumPoint(exact.add(z1.left, exact.scale(lam, z2.left)), exact.add(z1.right, exact.scale(lam, z2.right)))
        return norm(s) == norm(z1) + norm(z2)

    if kind == "tea":
        if not any(zeros):
            ok = pair_direct(X, z1.left, z2.left, "tea") and pair_direct(Y, z1.right, z2.right, "tea")
            return _finish(kind, ok, witness, "componentwise TEA")
        if (zeros[0] and zeros[3]) or (zeros[2] and zeros[1]):
            return _finish(kind, True, witness, "complementary zero components")
        return _finish(kind, direct(1), witness, "direct norm test")
    if not any(zeros):
        if not (pair_direct(X, z1.left, z2.left, "parallel") and pair_direct(Y, z1.right, z2.right, "parallel")):
            return PairVerdict(kind, False, note="component pair not parallel")
    return _finish(kind, direct(1) or direct(-1), witness, "direct norm test")


def linf_sum_pair_rules(X, Y, z1, z2, kind: str) -> PairVerdict:
    """Exact pair rules on ``X (+)_inf Y`` driven by which component dominates.

    When both points have equal component norms the verdict is the
    disjunction of the two factor verdicts, so that case is settled by the
    direct norm identity instead of by either factor alone.
    """
    _check_kind(kind)
    z1, z2 = _as_point(X, Y, z1), _as_point(X, Y, z2)
    if z1.is_zero() or z2.is_zero():
        raise ZeroVector("sum pair rules need nonzero sum points")
    a1, b1 = X.norm(z1.left), Y.norm(z1.right)
    a2, b2 = X.norm(z2.left), Y.norm(z2.right)
    witness = lambda lam: _linf_witness(X, Y, z1, z2, lam)
    if (a1 > b1 and a2 < b2) or (a1 < b1 and a2 > b2):
        return PairVerdict(kind, False, note="crossed strict dominance")
    if a1 == b1 and a2 == b2:
        def norm(z):
            return max(X.norm(z.left), Y.norm(z.right))

        def direct(lam):
            s = SumPoint(exact.add(z1.left, exact.scale(lam, z2.left)), exact.add(z1.right, exact.scale(lam, z2.right)))
            return norm(s) == norm(z1) + norm(z2)

        ok = direct(1) if kind == "tea" else direct(1) or direct(-1)
        return _finish(kind, ok, witness, "balanced components; direct norm test")
    if a1 >= b1 and a2 >= b2:
        v = pair_functional(X, z1.left, z2.left, kind)
        return _finish(kind, v.holds, witness, "left factor dominates")
    v = pair_functional(Y, z1.right, z2.right, kind)
    return _finish(kind, v.holds, witness, "right factor dominates")
