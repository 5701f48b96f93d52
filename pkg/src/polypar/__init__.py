"""Exact parallel-pair and TEA-pair computations on polyhedral normed spaces."""

from .catalog import hexagon, l1_space, linf_space, load_operator, load_space, parse_space_expr
from .exact import Matrix, parse_rational, parse_vector
from .pairs import (
    has_numerical_index_one,
    is_bj_orthogonal,
    is_eps_orthogonal,
    is_parallel_direct,
    is_parallel_functional,
    is_tea_direct,
    is_tea_functional,
)
from .polyspace import Face, PolyhedralSpace, SupportSet, build_space
from .preserve import Operator, PreservationReport, preserves_parallel, preserves_tea
from .sums import p_sum_pair_test, sum_l1, sum_linf

__version__ = "0.1.0"

__all__ = [
    "Face",
    "Matrix",
    "Operator",
    "PolyhedralSpace",
    "PreservationReport",
    "SupportSet",
    "build_space",
    "has_numerical_index_one",
    "hexagon",
    "is_bj_orthogonal",
    "is_eps_orthogonal",
    "is_parallel_direct",
    "is_parallel_functional",
    "is_tea_direct",
    "is_tea_functional",
    "l1_space",
    "linf_space",
    "load_operator",
    "load_space",
    "p_sum_pair_test",
    "parse_rational",
    "parse_space_expr",
    "parse_vector",
    "preserves_parallel",
    "preserves_tea",
    "sum_l1",
    "sum_linf",
]
