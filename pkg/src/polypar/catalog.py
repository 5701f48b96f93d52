"""Built-in spaces, composite space expressions, and the space/operator file formats."""

from __future__ import annotations

import itertools
import json
import os
from fractions import Fraction

from . import exact
from .errors import ParseError, SpaceFileError
from .exact import Matrix, format_rational
from .polyspace import MAX_DIM, PolyhedralSpace, build_space
from .preserve import Operator
from .sums import sum_l1, sum_linf

HEXAGON_DUALS = ((1, 0), (Fraction(1, 2), 1), (Fraction(1, 2), -1))


def l1_space(n: int) -> PolyhedralSpace:
    duals = [(1,) + signs for signs in itertools.product((1, -1), repeat=n - 1)]
    return build_space(n, duals, name="l1:%d" % n)


def linf_space(n: int) -> PolyhedralSpace:
    duals = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return build_space(n, duals, name="linf:%d" % n)


def hexagon() -> PolyhedralSpace:
    """Rational hexagonal norm (not the regular hexagon, which needs irrationals)."""
    return build_space(2, HEXAGON_DUALS, name="hexagon")


def catalog_names() -> list:
    names = ["l1:%d" % n for n in range(2, MAX_DIM + 1)]
    names += ["linf:%d" % n for n in range(2, MAX_DIM + 1)]
    return names + ["hexagon"]


def _atom(text: str, start: int) -> PolyhedralSpace:
    if text == "hexagon":
        return hexagon()
    family, sep, size = text.partition(":")
    if sep and family in ("l1", "linf"):
        if not size.isdigit():
            raise ParseError("expected a dimension after %r" % (family + ":"), text, start + len(family) + 1)
        n = int(size)
        if not 2 <= n <= MAX_DIM:
            raise ParseError("catalog dimension must lie in [2, %d]" % MAX_DIM, text, start + len(family) + 1)
        return l1_space(n) if family == "l1" else linf_space(n)
    raise ParseError("unknown space %r" % text, text, start)


def parse_space_expr(text: str) -> PolyhedralSpace:
    """Parse ``name`` or ``l1(A,B)`` / ``linf(A,B)`` with nested operands."""
    src = text.replace(" ", "")
    pos = 0

    def expr():
        nonlocal pos
        start = pos
        while pos < len(src) and src[pos] not in "(),":
            pos += 1
        head = src[start:pos]
        if pos < len(src) and src[pos] == "(":
            if head not in ("l1", "linf"):
                raise ParseError("unknown sum %r" % head, src, start)
            pos += 1
            left = expr()
            if pos >= len(src) or src[pos] != ",":
                raise ParseError("expected ','", src, pos)
            pos += 1
            right = expr()
            if pos >= len(src) or src[pos] != ")":
                raise ParseError("expected ')'", src, pos)
            pos += 1
            return sum_l1(left, right) if head == "l1" else sum_linf(left, right)
        if not head:
            raise ParseError("expected a space name", src, start)
        return _atom(head, start)

    space = expr()
    if pos != len(src):
        raise ParseError("unexpected trailing input", src, pos)
    return space


# -- files -------------------------------------------------------------------


def _rationals(row, where):
    try:
        return tuple(exact.Q(a) if isinstance(a, (str, int)) and not isinstance(a, bool) else _bad(a) for a in row)
    except (TypeError, ParseError) as e:
        raise SpaceFileError("%s: %s" % (where, e)) from None


def _bad(a):
    raise TypeError("entries must be rational strings or integers, got %r" % (a,))


def space_from_dict(data: dict) -> PolyhedralSpace:
    try:
        dim = data["dim"]
        duals = data["dual_vertices"]
    except (KeyError, TypeError):
        raise SpaceFileError("space data needs 'dim' and 'dual_vertices'") from None
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise SpaceFileError("'dim' must be an integer")
    duals = [_rationals(r, "dual_vertices") for r in duals]
    X = build_space(dim, duals, name=str(data.get("name", "")))
    if "primal_vertices" in data:
        given = {_rationals(r, "primal_vertices") for r in data["primal_vertices"]}
        if given != set(X.primal_vertices):
            raise SpaceFileError("listed primal_vertices do not match the vertices derived from dual_vertices")
    return X


def space_to_dict(X: PolyhedralSpace) -> dict:
    return {
        "name": X.name,
        "dim": X.dim,
        "dual_vertices": [[format_rational(a) for a in g] for g in X.dual_vertices],
        "primal_vertices": [[format_rational(a) for a in v] for v in X.primal_vertices],
    }


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise SpaceFileError("cannot read %s: %s" % (path, e.strerror)) from None
    except json.JSONDecodeError as e:
        raise SpaceFileError("%s is not valid JSON: %s" % (path, e)) from None


def load_space(ref, base_dir: str = ".") -> PolyhedralSpace:
    """A space from a catalog expression, a JSON file path, or an inline dict."""
    if isinstance(ref, dict):
        return space_from_dict(ref)
    if not isinstance(ref, str):
        raise SpaceFileError("space reference must be a name, a path or an object")
    path = ref if os.path.isabs(ref) else os.path.join(base_dir, ref)
    if ref.endswith(".json") or os.path.isfile(path):
        return space_from_dict(_read_json(path))
    return parse_space_expr(ref)


def operator_from_dict(data: dict, base_dir: str = ".") -> Operator:
    try:
        dom = load_space(data["domain"], base_dir)
        cod = load_space(data.get("codomain", data["domain"]), base_dir)
        rows = [_rationals(r, "matrix") for r in data["matrix"]]
    except (KeyError, TypeError):
        raise SpaceFileError("operator data needs 'domain' and 'matrix'") from None
    if not rows or any(len(r) != dom.dim for r in rows):
        raise SpaceFileError("matrix rows must all have length %d" % dom.dim)
    return Operator(Matrix(rows, ncols=dom.dim), dom, cod, name=str(data.get("name", "")))


def load_operator(path: str) -> Operator:
    return operator_from_dict(_read_json(path), os.path.dirname(os.path.abspath(path)))


def operator_to_dict(T: Operator, domain_ref=None, codomain_ref=None) -> dict:
    return {
        "domain": domain_ref or T.domain.name,
        "codomain": codomain_ref or T.codomain.name,
        "matrix": T.matrix.to_strings(),
    }


__all__ = [
    "HEXAGON_DUALS",
    "catalog_names",
    "hexagon",
    "l1_space",
    "linf_space",
    "load_operator",
    "load_space",
    "operator_from_dict",
    "operator_to_dict",
    "parse_space_expr",
    "space_from_dict",
    "space_to_dict",
]
