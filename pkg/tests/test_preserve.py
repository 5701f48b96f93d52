import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polypar import exact
from polypar.catalog import l1_space, linf_space
from polypar.errors import DimensionMismatch, NotBijective, NotPreserver, PreconditionFailed
from polypar.exact import Matrix
from polypar.polyspace import build_space
from polypar.preserve import (
    Operator,
    count_law_check,
    facet_image_map,
    is_isometry,
    isometry_characterization_check,
    kernel_face_check,
    kernel_meets_relative_interior,
    preserves,
    preserves_eps_orthogonality,
    preserves_parallel,
    preserves_tea,
    rank_smooth_kernel_check,
    support_count_law,
    verify_counterexample,
    vertex_support_dominance,
)
from polypar.sampling import operator_corpus, random_cone_point, signed_permutations

F = Fraction
RANK_ONE = [[1, 0, -1], [0, 0, 0], [1, 0, -1]]
PROJECTION = [[1, 0, 0], [0, 0, 0], [0, 0, 1]]
DOUBLING = [[1, 0, 0], [2, 0, 0], [0, 0, 1]]


def prism_ball():
    """Octahedral prism with one truncated vertex: vertices with four supports coexist with edges carrying four."""
    duals = [(1, 1, 1, 0), (1, 1, -1, 0), (1, -1, 1, 0), (1, -1, -1, 0), (0, 0, 0, 1), (F(3, 4), 0, 0, F(3, 4))]
    return build_space(4, duals, name="prism-ball")


class TestOperator:
    def test_shape_checked(self, l1_3):
        with pytest.raises(DimensionMismatch):
            Operator([[1, 0], [0, 1]], l1_3)

    def test_cached_rank_and_kernel(self, l1_3):
        T = Operator(RANK_ONE, l1_3)
        assert T.rank == 1 and len(T.kernel) == 2
        assert all(exact.is_zero(T(v)) for v in T.kernel)

    def test_norm(self, linf_2):
        assert Operator([[1, 1], [0, 1]], linf_2).norm() == 2


class TestPreservesTea:
    def test_identity_certificates_are_own_functionals(self, l1_3):
        rep = preserves_tea(Operator(Matrix.identity(3), l1_3))
        assert rep.preserves
        assert [c.functional for c in rep.facet_certificates] == list(l1_3.signed_duals)

    def test_rank_one_example(self, l1_3):
        T = Operator(RANK_ONE, l1_3)
        rep = preserves_tea(T)
        assert not rep.preserves
        ce = rep.counterexample
        assert ce.before and not ce.after
        assert verify_counterexample(T, ce.x, ce.y, "tea")
        # the pair used in the literature is a counterexample as well
        assert verify_counterexample(T, (2, 1, 1), (1, 1, 2), "tea")

    def test_projection_preserves(self, l1_3):
        T = Operator(PROJECTION, l1_3)
        assert preserves_tea(T).preserves and preserves_parallel(T).preserves

    def test_zero_operator_preserves_both(self, l1_3):
        T = Operator(Matrix.zeros(3, 3), l1_3)
        for kind in ("tea", "parallel"):
            rep = preserves(T, kind)
            assert rep.preserves
        assert all(c.image_zero for c in preserves_tea(T).facet_certificates)

    def test_rank_one_branch(self, l1_3):
        rep = preserves_parallel(Operator(RANK_ONE, l1_3))
        assert rep.preserves and rep.branch == "rank<=1"

    def test_unknown_kind(self, l1_3):
        with pytest.raises(ValueError):
            preserves(Operator(Matrix.identity(3), l1_3), "orthogonal")

    def test_report_serialisation(self, l1_3):
        T = Operator(RANK_ONE, l1_3)
        rep = preserves_tea(T)
        text = rep.to_text(l1_3)
        assert "preserves: false" in text and "facet (1,1,1): none" in text and "counterexample:" in text
        d = rep.to_dict(l1_3)
        assert d["preserves"] is False and len(d["facets"]) == 8 and "counterexample" in d

    @pytest.mark.parametrize("name", ["l1:3", "linf:3"])
    @given(seed=st.integers(0, 10_000))
    def test_certificates_are_sound_on_cone_samples(self, name, seed):
        X = l1_space(3) if name == "l1:3" else linf_space(3)
        rng = random.Random(seed)
        M = operator_corpus(rng, 3, 8)[-1 - seed % 6]
        T = Operator(M, X)
        rep = preserves_tea(T)
        for cert in rep.facet_certificates:
            if cert.functional is None:
                continue
            for _ in range(5):
                x = random_cone_point(rng, X, cert.facet)
                assert exact.dot(cert.functional, T(x)) == T.codomain.norm(T(x))

    @pytest.mark.parametrize("name", ["l1:3", "linf:3"])
    def test_negative_verdicts_carry_verified_counterexamples(self, name):
        X = l1_space(3) if name == "l1:3" else linf_space(3)
        for M in operator_corpus(random.Random(3), 3, 40):
            T = Operator(M, X)
            for kind in ("tea", "parallel"):
                rep = preserves(T, kind)
                if not rep.preserves:
                    assert verify_counterexample(T, rep.counterexample.x, rep.counterexample.y, kind)

    def test_tea_implies_parallel_on_corpus(self, l1_3, linf_3):
        for X in (l1_3, linf_3):
            for M in operator_corpus(random.Random(5), 3, 40):
                T = Operator(M, X)
                if preserves_tea(T).preserves:
                    assert preserves_parallel(T).preserves

    def test_between_different_spaces(self, linf_2, hexa):
        T = Operator([[1, 0], [0, F(1, 2)]], linf_2, hexa)
        rep = preserves_tea(T)
        assert not rep.preserves
        assert verify_counterexample(T, rep.counterexample.x, rep.counterexample.y, "tea")


class TestKernelFaces:
    def test_rank_one_example(self, l1_3):
        T = Operator(RANK_ONE, l1_3)
        u = (F(1, 3),) * 3
        facet = l1_3.facet(l1_3.index_of((1, 1, 1)))
        assert exact.is_zero(T(u)) and facet.in_relative_interior(u)
        assert kernel_meets_relative_interior(T, facet)
        assert kernel_face_check(T) == []

    def test_identity(self, l1_3):
        assert kernel_face_check(Operator(Matrix.identity(3), l1_3)) == []

    def test_kernel_misses_face(self, l1_3):
        T = Operator(PROJECTION, l1_3)
        assert not kernel_meets_relative_interior(T, l1_3.facet(0))
        assert kernel_face_check(T) == []

    def test_kernel_through_edge_interior(self, linf_2):
        # kernel spanned by (1, 0) passes through the middle of the edge x = 1
        T = Operator([[0, 1], [0, 0]], linf_2)
        assert kernel_meets_relative_interior(T, linf_2.facet(linf_2.index_of((1, 0))))
        assert not kernel_meets_relative_interior(T, linf_2.facet(linf_2.index_of((0, 1))))

    def test_rank_smooth_kernel(self, l1_3):
        assert rank_smooth_kernel_check(Operator(Matrix.identity(3), l1_3))
        assert rank_smooth_kernel_check(Operator(PROJECTION, l1_3))
        with pytest.raises(PreconditionFailed):
            rank_smooth_kernel_check(Operator(RANK_ONE, l1_3))


class TestFacetImageMap:
    def test_identity(self, l1_3):
        m = facet_image_map(Operator(Matrix.identity(3), l1_3))
        assert m == {g: g for g in l1_3.signed_duals}

    def test_signed_permutation(self, linf_3):
        # for an orthogonal matrix the image cone of Sm(f) is Sm(T f)
        for M in signed_permutations(3)[::7]:
            T = Operator(M, linf_3)
            m = facet_image_map(T)
            assert all(g == M.apply(f) for f, g in m.items())

    def test_preconditions(self, l1_3, linf_2):
        with pytest.raises(NotBijective):
            facet_image_map(Operator(PROJECTION, l1_3))
        with pytest.raises(NotPreserver):
            facet_image_map(Operator([[2, 0], [0, 1]], linf_2))


class TestCounts:
    def test_support_count_law(self, l1_3):
        assert support_count_law(Operator(Matrix.identity(3), l1_3))
        for M in signed_permutations(3)[::5]:
            assert support_count_law(Operator(M, l1_3), samples=20)

    def test_support_count_precondition(self, l1_3):
        T = Operator(DOUBLING, l1_3)
        assert l1_3.smoothness_order((1, 0, 0)) == 3
        assert T((1, 0, 0)) == (1, 2, 0) and l1_3.smoothness_order((1, 2, 0)) == 2
        with pytest.raises(PreconditionFailed):
            support_count_law(T)

    def test_count_law(self, l1_3, linf_3):
        assert count_law_check(Operator(Matrix.identity(3), l1_3))
        assert count_law_check(Operator(signed_permutations(3)[11], linf_3))
        with pytest.raises(PreconditionFailed):
            count_law_check(Operator(PROJECTION, l1_3))


class TestIsometry:
    def test_signed_permutations(self, l1_3):
        assert all(is_isometry(Operator(M, l1_3)) for M in signed_permutations(3))

    def test_non_isometries(self, linf_2):
        assert not is_isometry(Operator([[1, 0], [0, F(1, 2)]], linf_2))
        assert not is_isometry(Operator([[1, 1], [0, 1]], linf_2))

    def test_dimension_mismatch(self, l1_2, l1_3):
        with pytest.raises(DimensionMismatch):
            is_isometry(Operator([[1, 0], [0, 1], [0, 0]], l1_2, l1_3))

    def test_dominance(self, l1_3, linf_2):
        assert vertex_support_dominance(l1_3)
        assert vertex_support_dominance(linf_2)
        assert not vertex_support_dominance(prism_ball())

    def test_characterization(self, l1_3, linf_2):
        for M in signed_permutations(3):
            assert isometry_characterization_check(Operator(M, l1_3))
        assert isometry_characterization_check(Operator(Matrix.identity(2), linf_2))
        assert isometry_characterization_check(Operator([[1, 0], [0, F(1, 2)]], linf_2))

    def test_characterization_preconditions(self, l1_3, l1_2):
        with pytest.raises(PreconditionFailed):
            isometry_characterization_check(Operator(Matrix.identity(3) * 2, l1_3))
        X = prism_ball()
        with pytest.raises(PreconditionFailed):
            isometry_characterization_check(Operator(Matrix.identity(4), X))


class TestEpsOrthogonality:
    def test_identity_preserves(self, l1_3):
        ok, witness = preserves_eps_orthogonality(Operator(Matrix.identity(3), l1_3))
        assert ok and witness is None

    def test_rank_one_fails_with_witness(self, l1_3):
        ok, (x, y) = preserves_eps_orthogonality(Operator(RANK_ONE, l1_3))
        assert not ok
