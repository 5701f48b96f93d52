"""Exact rational scalars, vectors and matrices.

Scalars are :class:`fractions.Fraction`; vectors are tuples of fractions;
matrices are immutable :class:`Matrix` objects.  Elimination runs
fraction-free (Bareiss) on integer rows obtained by clearing denominators,
so rank and echelon structure are computed without any rounding.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatch, ParseError

Rational = Fraction
Vector = tuple  # tuple[Fraction, ...]

_MINUS_SIGNS = ("−", "–")


def Q(value) -> Fraction:
    """Coerce ``value`` (int, Fraction or canonical string) to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError("cannot convert %r exactly to a rational" % (value,))


def parse_rational(text: str) -> Fraction:
    s = text.strip()
    for m in _MINUS_SIGNS:
        s = s.replace(m, "-")
    if not s:
        raise ParseError("empty rational", text, 0)
    body = s[1:] if s[0] in "+-" else s
    parts = body.split("/")
    if len(parts) > 2:
        raise ParseError("more than one '/'", text, text.rfind("/"))
    offset = len(s) - len(body)
    for part in parts:
        if not part.isdigit():
            bad = next((i for i, ch in enumerate(part) if not ch.isdigit()), 0)
            raise ParseError("expected digits", text, offset + bad)
        offset += len(part) + 1
    if len(parts) == 2 and int(parts[1]) == 0:
        raise ParseError("zero denominator", text, s.index("/") + 1)
    return Fraction(s)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


def vec(*entries) -> Vector:
    if len(entries) == 1 and not isinstance(entries[0], (int, Fraction, str)):
        entries = tuple(entries[0])
    return tuple(Q(e) for e in entries)


def parse_vector(text: str) -> Vector:
    """Parse ``"1,-1/2,0"`` into a vector; parse errors carry the absolute offset."""
    if not text.strip():
        raise ParseError("empty vector", text, 0)
    out = []
    start = 0
    for chunk in text.split(","):
        try:
            out.append(parse_rational(chunk))
        except ParseError as exc:
            pos = start + (exc.position or 0) + (len(chunk) - len(chunk.lstrip()))
            raise ParseError("bad rational entry", text, pos) from None
        start += len(chunk) + 1
    return tuple(out)


def format_vector(v: Sequence[Fraction]) -> str:
    return ",".join(format_rational(c) for c in v)


def dot(u: Sequence, v: Sequence) -> Fraction:
    if len(u) != len(v):
        raise DimensionMismatch("dot of lengths %d and %d" % (len(u), len(v)))
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatch("add of lengths %d and %d" % (len(u), len(v)))
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatch("sub of lengths %d and %d" % (len(u), len(v)))
    return tuple(a - b for a, b in zip(u, v))


def scale(r, v: Sequence) -> Vector:
    r = Q(r)
    return tuple(r * a for a in v)


def neg(v: Sequence) -> Vector:
    return tuple(-a for a in v)


def is_zero(v: Sequence) -> bool:
    return all(a == 0 for a in v)


def vsum(vectors: Iterable[Sequence], dim: int) -> Vector:
    acc = [Fraction(0)] * dim
    for v in vectors:
        for i, a in enumerate(v):
            acc[i] += a
    return tuple(acc)


def primitive(v: Sequence) -> tuple:
    """Smallest integer vector positively proportional to ``v`` (as Python ints)."""
    v = [Fraction(a) for a in v]
    den = math.lcm(*(a.denominator for a in v)) if v else 1
    ints = [int(a * den) for a in v]
    g = math.gcd(*ints) if ints else 0
    if g == 0:
        return tuple(ints)
    return tuple(a // g for a in ints)


class Matrix:
    """Immutable dense rational matrix."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows, ncols: Optional[int] = None):
        if isinstance(rows, Matrix):
            rows = rows.rows
        rows = tuple(tuple(Q(a) for a in r) for r in rows)
        if ncols is None:
            if not rows:
                raise DimensionMismatch("cannot infer the column count of an empty matrix")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged matrix rows")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, m: int, n: int) -> "Matrix":
        return cls([[0] * n for _ in range(m)], ncols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: Optional[int] = None) -> "Matrix":
        if not columns:
            return cls([() for _ in range(nrows or 0)], ncols=0)
        return cls(list(zip(*columns)))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def columns(self):
        return [tuple(r[j] for r in self.rows) for j in range(self.ncols)]

    def transpose(self) -> "Matrix":
        return Matrix(self.columns(), ncols=self.nrows)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.ncols:
            raise DimensionMismatch("matrix with %d columns applied to length %d" % (self.ncols, len(v)))
        return tuple(sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self.rows)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise DimensionMismatch("shapes %s and %s" % (self.shape, other.shape))
            cols = other.columns()
            return Matrix([[dot(r, c) for c in cols] for r in self.rows], ncols=other.ncols)
        return self.apply(other)

    def __mul__(self, r):
        r = Q(r)
        return Matrix([[r * a for a in row] for row in self.rows], ncols=self.ncols)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        body = "; ".join(format_vector(r) for r in self.rows)
        return "Matrix[%s]" % body

    def to_strings(self):
        return [[format_rational(a) for a in r] for r in self.rows]


def _as_matrix(M) -> Matrix:
    return M if isinstance(M, Matrix) else Matrix(M)


def _integer_rows(rows) -> list:
    out = []
    for r in rows:
        den = math.lcm(*(Fraction(a).denominator for a in r)) if r else 1
        out.append([int(Fraction(a) * den) for a in r])
    return out


def bareiss_echelon(rows, ncols: int):
    """Fraction-free row echelon form of an integer matrix.

    Returns ``(U, pivots)`` where ``U`` holds the nonzero echelon rows (all
    integers) and ``pivots`` their leading columns.  Every division performed
    is exact by Sylvester's identity.
    """
    A = [list(r) for r in rows]
    m = len(A)
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == m:
            break
        p = next((i for i in range(r, m) if A[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        for i in range(r + 1, m):
            aic = A[i][c]
            Ai = A[i]
            Ar = A[r]
            for j in range(c + 1, ncols):
                Ai[j] = (piv * Ai[j] - aic * Ar[j]) // prev
            Ai[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(M) -> int:
    M = _as_matrix(M)
    if M.nrows == 0 or M.ncols == 0:
        return 0
    _, pivots = bareiss_echelon(_integer_rows(M.rows), M.ncols)
    return len(pivots)


def vectors_rank(vectors: Sequence[Sequence]) -> int:
    vectors = list(vectors)
    if not vectors:
        return 0
    return rank(Matrix(vectors))


def _back_substitute(U, pivots, ncols, fixed: dict) -> list:
    x = [Fraction(0)] * ncols
    for j, val in fixed.items():
        x[j] = Fraction(val)
    for row, pc in zip(reversed(U), reversed(pivots)):
        s = sum((row[j] * x[j] for j in range(pc + 1, ncols)), Fraction(0))
        x[pc] = -s / row[pc]
    return x


def kernel_basis(M) -> list:
    """Exact basis of ``{v : M v = 0}``; empty iff ``M`` is injective."""
    M = _as_matrix(M)
    n = M.ncols
    if M.nrows == 0:
        return [tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n)]
    U, pivots = bareiss_echelon(_integer_rows(M.rows), n)
    free = [j for j in range(n) if j not in set(pivots)]
    return [tuple(_back_substitute(U, pivots, n, {f: 1})) for f in free]


def solve(M, b: Sequence):
    """One exact solution of ``M x = b`` (free variables set to zero), or None."""
    M = _as_matrix(M)
    if len(b) != M.nrows:
        raise DimensionMismatch("rhs length %d for %d rows" % (len(b), M.nrows))
    n = M.ncols
    aug = [list(r) + [Q(bi)] for r, bi in zip(M.rows, b)]
    if not aug:
        return tuple(Fraction(0) for _ in range(n))
    U, pivots = bareiss_echelon(_integer_rows(aug), n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = [Fraction(0)] * n
    for row, pc in zip(reversed(U), reversed(pivots)):
        s = sum((row[j] * x[j] for j in range(pc + 1, n)), Fraction(0))
        x[pc] = (row[n] - s) / row[pc]
    return tuple(x)


def independent_subset(vectors: Sequence[Sequence]) -> list:
    """Indices of a maximal linearly independent subset, chosen greedily in order."""
    chosen = []
    basis = []
    for i, v in enumerate(vectors):
        if is_zero(v):
            continue
        if vectors_rank(basis + [v]) > len(basis):
            basis.append(v)
            chosen.append(i)
    return chosen


def solve_affine(points: Sequence[Sequence]):
    """Affine hull of ``points`` as ``(base, directions)``.

    ``base`` is the first point and ``directions`` a basis of the direction
    space, taken greedily from the differences ``p_i - p_0``.
    """
    points = [tuple(Q(a) for a in p) for p in points]
    if not points:
        raise ValueError("solve_affine needs at least one point")
    base = points[0]
    diffs = [sub(p, base) for p in points[1:]]
    directions = [diffs[i] for i in independent_subset(diffs)]
    return base, directions


def affine_dimension(points: Sequence[Sequence]) -> int:
    if not points:
        return -1
    return len(solve_affine(points)[1])


def inverse(M) -> Matrix:
    M = _as_matrix(M)
    n = M.nrows
    if M.ncols != n:
        raise DimensionMismatch("inverse of a non-square matrix")
    cols = []
    for j in range(n):
        e = [int(i == j) for i in range(n)]
        x = solve(M, e)
        if x is None:
            raise ZeroDivisionError("singular matrix")
        cols.append(x)
    return Matrix.from_columns(cols)


def determinant(M) -> Fraction:
    M = _as_matrix(M)
    n = M.nrows
    if M.ncols != n:
        raise DimensionMismatch("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    dens = [math.lcm(*(a.denominator for a in r)) for r in M.rows]
    A = [[int(a * d) for a in r] for r, d in zip(M.rows, dens)]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            p = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if p is None:
                return Fraction(0)
            A[k], A[p] = A[p], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[k][k] * A[i][j] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return Fraction(sign * A[n - 1][n - 1], math.prod(dens))
