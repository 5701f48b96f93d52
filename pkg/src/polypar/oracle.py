"""Brute-force pair oracle for preservation verdicts.

Independent of the facet certificates: it samples pairs inside a common
facet cone of the domain (all such pairs are TEA there) and evaluates the
codomain norm of their images directly, in scaled integer arithmetic.  Any
sampled image pair violating the relation refutes preservation.  Parallel
pairs need no separate sampling: ``(x, y)`` is parallel iff ``(x, +-y)``
shares a facet cone, and the image relation is invariant under ``y -> -y``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import exact
from .preserve import Operator


@dataclass(frozen=True)
class OracleResult:
    preserves: bool
    pairs_checked: int
    witness: Optional[tuple] = None


def _scale_rows(rows) -> np.ndarray:
    """Common-denominator integer copy of a rational matrix (positive scale, so maxima are preserved)."""
    den = math.lcm(*(Fraction(a).denominator for r in rows for a in r))
    return np.array([[int(Fraction(a) * den) for a in r] for r in rows], dtype=np.int64)


def _relation(P: np.ndarray, R: np.ndarray, kind: str) -> np.ndarray:
    """Row-wise TEA / parallel test on functional values (columns are signed functionals)."""
    total = P.max(axis=1) + R.max(axis=1)
    ok = (P + R).max(axis=1) == total
    if kind == "parallel":
        ok |= (P - R).max(axis=1) == total
    return ok


def brute_force_preserves(T: Operator, kind: str, random_pairs: int = 10_000, seed: int = 0) -> OracleResult:
    if kind not in ("tea", "parallel"):
        raise ValueError("kind must be 'tea' or 'parallel', got %r" % (kind,))
    X = T.domain
    G = _scale_rows(T.codomain.signed_duals)
    M = _scale_rows(T.matrix.rows)
    GT = G @ M
    rng = np.random.default_rng(seed)
    facets = X.facets()
    per = [random_pairs // len(facets) + (i < random_pairs % len(facets)) for i in range(len(facets))]
    checked = 0
    for F, count in zip(facets, per):
        verts = [exact.primitive(v) for v in F.vertex_set]
        V = np.array(verts, dtype=np.int64)
        W = V @ GT.T
        r = len(verts)
        iu, ju = np.triu_indices(r, 1)
        A = np.zeros((len(iu), r), dtype=np.int64)
        B = np.zeros((len(iu), r), dtype=np.int64)
        A[np.arange(len(iu)), iu] = 1
        B[np.arange(len(iu)), ju] = 1
        if count:
            RA = rng.integers(0, 10, size=(count, r))
            RB = rng.integers(0, 10, size=(count, r))
            RA[RA.sum(axis=1) == 0, 0] = 1
            RB[RB.sum(axis=1) == 0, 0] = 1
            A = np.vstack([A, RA])
            B = np.vstack([B, RB])
        ok = _relation(A @ W, B @ W, kind)
        checked += len(ok)
        bad = np.flatnonzero(~ok)
        if bad.size:
            k = bad[0]
            x = exact.vsum((exact.scale(int(a), v) for a, v in zip(A[k], verts)), X.dim)
            y = exact.vsum((exact.scale(int(b), v) for b, v in zip(B[k], verts)), X.dim)
            return OracleResult(False, checked, (x, y))
    return OracleResult(True, checked)
