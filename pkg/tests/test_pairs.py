from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from polypar import exact
from polypar.catalog import parse_space_expr
from polypar.errors import InvalidEpsilon, ZeroVector
from polypar.pairs import (
    has_numerical_index_one,
    is_bj_orthogonal,
    is_eps_orthogonal,
    is_parallel_direct,
    is_parallel_functional,
    is_tea_direct,
    is_tea_functional,
    pair_direct,
    pair_functional,
)

from strategies import nonzero_vectors, rationals, vectors

F = Fraction
SPACES = ["l1:2", "linf:2", "hexagon"]


class TestDirect:
    def test_tea_examples(self, l1_3):
        assert is_tea_direct(l1_3, (2, 1, 1), (1, 1, 2))
        assert not is_tea_direct(l1_3, (1, 0, 1), (-1, 0, -1))
        assert is_tea_direct(l1_3, (0, 0, 0), (5, -1, 2))

    def test_parallel_examples(self, linf_2):
        assert is_parallel_direct(linf_2, (1, 0), (1, 1))
        assert is_parallel_direct(linf_2, (1, 1), (1, -1))
        assert not is_parallel_direct(linf_2, (1, 0), (0, 1))

    def test_square_ball_pairs(self, linf_2):
        assert is_tea_direct(linf_2, (1, 1), (1, -1))
        assert is_tea_direct(linf_2, (1, 0), (1, F(1, 2)))

    def test_non_transitive(self, linf_2):
        assert is_parallel_direct(linf_2, (1, 0), (1, 1))
        assert is_parallel_direct(linf_2, (1, 1), (0, 1))
        assert not is_parallel_direct(linf_2, (1, 0), (0, 1))


class TestFunctional:
    def test_tea_witness(self, linf_2, l1_3):
        v = is_tea_functional(linf_2, (1, 0), (1, F(1, 2)))
        assert v.holds and v.witness_functional == (1, 0)
        v = is_tea_functional(l1_3, (2, 1, 1), (1, 1, 2))
        assert v.holds and v.witness_functional == (1, 1, 1)
        assert not is_tea_functional(linf_2, (1, 0), (0, 1))

    def test_parallel_signs(self, linf_2, l1_2):
        v = is_parallel_functional(linf_2, (1, 0), (1, 1))
        assert v.holds and v.witness_sign == 1
        v = is_parallel_functional(linf_2, (1, 0), (-1, -1))
        assert v.holds and v.witness_sign == -1
        v = is_parallel_functional(l1_2, (1, 0), (0, 1))
        assert v.holds and v.witness_functional == (1, 1)

    def test_zero_rejected(self, linf_2):
        with pytest.raises(ZeroVector):
            is_tea_functional(linf_2, (0, 0), (1, 0))

    @pytest.mark.parametrize("name", SPACES + ["l1:3", "linf:3"])
    @given(data=st.data())
    def test_routes_agree(self, name, data):
        X = parse_space_expr(name)
        x = data.draw(nonzero_vectors(X.dim))
        y = data.draw(nonzero_vectors(X.dim))
        for kind in ("tea", "parallel"):
            v = pair_functional(X, x, y, kind)
            assert v.holds == pair_direct(X, x, y, kind)
            if v.holds:
                g = v.witness_functional
                assert exact.dot(g, x) == X.norm(x)
                assert exact.dot(g, exact.scale(v.witness_sign, y)) == X.norm(y)


class TestAlgebra:
    @pytest.mark.parametrize("name", SPACES)
    @given(data=st.data())
    def test_symmetry_and_homogeneity(self, name, data):
        X = parse_space_expr(name)
        x, y = data.draw(vectors(2)), data.draw(vectors(2))
        r = data.draw(rationals.filter(bool))
        s = data.draw(rationals.filter(bool))
        p = is_parallel_direct(X, x, y)
        assert p == is_parallel_direct(X, y, x)
        assert p == is_parallel_direct(X, exact.scale(r, x), exact.scale(s, y))

    @pytest.mark.parametrize("name", SPACES + ["l1:3"])
    @given(data=st.data())
    def test_dependent_vectors_are_parallel(self, name, data):
        X = parse_space_expr(name)
        x = data.draw(vectors(X.dim))
        r = data.draw(rationals)
        assert is_parallel_direct(X, x, exact.scale(r, x))


def _float_scan(X, x, y, eps, lo=-6.0, hi=6.0, steps=24001):
    """Worst slack of the eps-orthogonality inequality on a float grid."""
    G = np.array([[float(a) for a in g] for g in X.signed_duals])
    xv, yv = np.array([float(a) for a in x]), np.array([float(a) for a in y])
    lam = np.linspace(lo, hi, steps)
    pts = xv[None, :] + lam[:, None] * yv[None, :]
    nx = (G @ xv).max()
    ny = (G @ yv).max()
    lhs = (pts @ G.T).max(axis=1) ** 2
    rhs = nx ** 2 - 2 * float(eps) * nx * np.abs(lam) * ny
    return (lhs - rhs).min()


class TestOrthogonality:
    def test_bj_examples(self, linf_2):
        assert is_bj_orthogonal(linf_2, (1, 1), (1, -1))
        assert not is_bj_orthogonal(linf_2, (1, 0), (1, 0))
        assert is_bj_orthogonal(linf_2, (1, 0), (0, 0))

    def test_eps_examples(self, linf_2):
        for eps in (0, F(1, 100), F(1, 2), F(9, 10)):
            assert is_eps_orthogonal(linf_2, (1, 0), (0, 1), eps)
        # lambda = -1/2: ||(1/2, 0)||^2 = 1/4 < 1 - 2(1/2)(1)(1/2) = 1/2
        assert not is_eps_orthogonal(linf_2, (1, 0), (1, 0), F(1, 2))

    def test_invalid_epsilon(self, linf_2):
        for eps in (-1, 1, F(3, 2)):
            with pytest.raises(InvalidEpsilon):
                is_eps_orthogonal(linf_2, (1, 0), (0, 1), eps)

    def test_zero_x(self, linf_2):
        with pytest.raises(ZeroVector):
            is_bj_orthogonal(linf_2, (0, 0), (1, 0))

    @pytest.mark.parametrize("name", SPACES)
    @given(data=st.data())
    def test_eps_zero_is_bj(self, name, data):
        X = parse_space_expr(name)
        x = data.draw(nonzero_vectors(2))
        y = data.draw(vectors(2))
        assert is_eps_orthogonal(X, x, y, 0) == is_bj_orthogonal(X, x, y)

    @pytest.mark.parametrize("name", SPACES)
    @given(data=st.data())
    def test_positive_verdicts_survive_float_scan(self, name, data):
        X = parse_space_expr(name)
        x = data.draw(nonzero_vectors(2))
        y = data.draw(nonzero_vectors(2))
        eps = data.draw(st.sampled_from([F(1, 100), F(1, 4), F(1, 2), F(9, 10)]))
        if is_eps_orthogonal(X, x, y, eps):
            assert _float_scan(X, x, y, eps) > -1e-9

    @pytest.mark.parametrize("name", SPACES)
    @given(data=st.data())
    def test_monotone_in_eps(self, name, data):
        X = parse_space_expr(name)
        x = data.draw(nonzero_vectors(2))
        y = data.draw(nonzero_vectors(2))
        if is_eps_orthogonal(X, x, y, F(1, 10)):
            assert is_eps_orthogonal(X, x, y, F(1, 2))


class TestIndexOne:
    @pytest.mark.parametrize("name", ["l1:2", "l1:3", "linf:2", "linf:3"])
    def test_true(self, name):
        assert has_numerical_index_one(parse_space_expr(name))

    def test_hexagon_false(self, hexa):
        assert not has_numerical_index_one(hexa)

    def test_hexagon_vertex_pairs_alone_do_not_detect_it(self, hexa):
        # every pair of hexagon vertices is parallel, yet the index is not one;
        # a facet barycenter is needed to expose the failure
        V = hexa.primal_vertices
        assert all(is_parallel_direct(hexa, v, w) for v in V for w in V)
        mids = [f.barycenter() for f in hexa.facets()]
        assert not all(is_parallel_direct(hexa, v, m) for v in V for m in mids)


class TestSmoothExposed:
    @pytest.mark.parametrize("name", SPACES + ["l1:3", "linf:3"])
    def test_no_smooth_exposed_points(self, name):
        # an exposed point of a polytope is a vertex, and vertices are never smooth
        X = parse_space_expr(name)
        for x in list(X.primal_vertices) + [f.barycenter() for f in X.faces()]:
            sup = X.support_indices(x)
            assert not (len(sup) == 1 and len(X.facet(sup[0]).vertices) == 1)
