from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logcavity.errors import (
    DegreeMismatch,
    DimensionMismatch,
    MixedDegrees,
    NegativeCoefficient,
)
from logcavity.linalg import QMatrix, inertia
from logcavity.matroids import Matroid
from logcavity.polynomials import (
    MPoly,
    basis_generating_poly,
    coefficient_logconcavity,
    default_sample_points,
    lorentzian_check,
    m_convex,
    polarization,
    polarization_af_analog_check,
)
from logcavity.zoo import k4_graph, linear_3x5_matroid, matroid_zoo, tripled_u23

U23 = Matroid.uniform(2, 3)
F_U23 = basis_generating_poly(U23)


class TestBasisPolynomial:
    def test_u23(self):
        assert F_U23.terms == {
            (1, 1, 0): 1,
            (1, 0, 1): 1,
            (0, 1, 1): 1,
        }

    def test_boolean(self):
        f = basis_generating_poly(Matroid.uniform(2, 2))
        assert f.terms == {(1, 1): 1}

    def test_homogeneous_of_rank_degree(self):
        for m in matroid_zoo().values():
            f = basis_generating_poly(m)
            assert f.is_homogeneous()
            assert f.degree() == m.rank
            assert sum(f.terms.values()) == len(m.bases)

    def test_loop_partial_vanishes(self):
        zoo = matroid_zoo()
        m = zoo["with_loop"]
        f = basis_generating_poly(m)
        loop = next(iter(m.loops()))
        assert f.partial(m._index[loop]).is_zero()


class TestCalculus:
    def test_partial_matches_contraction(self):
        f = basis_generating_poly(U23)
        assert f.partial(0).terms == {(0, 1, 0): 1, (0, 0, 1): 1}

    def test_hessian_constant_for_quadratics(self):
        h1 = F_U23.hessian_at([1, 1, 1])
        h2 = F_U23.hessian_at([Fraction(5, 2), 1, 7])
        assert h1 == h2 == QMatrix([[0, 1, 1], [1, 0, 1], [1, 1, 0]])

    def test_evaluate(self):
        assert F_U23.evaluate([1, 1, 1]) == 3

    def test_substitution_identity(self):
        assert F_U23.substitute_linear(QMatrix.identity(3)) == F_U23

    def test_substitution_example(self):
        # blocks {0} and {1, 2}: count basis sequences per block pattern
        a = QMatrix([[1, 0], [0, 1], [0, 1]])
        g = F_U23.substitute_linear(a)
        assert g.terms == {(1, 1): 2, (0, 2): 1}

    def test_substitution_permutes_terms(self):
        perm = QMatrix([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
        g = F_U23.substitute_linear(perm)
        assert g == F_U23  # symmetric polynomial

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.integers(-4, 4), min_size=3, max_size=3))
    def test_substitute_commutes_with_evaluation(self, point):
        a = QMatrix([[1, 2, 0], [0, 1, 1], [3, 0, 1]])
        g = F_U23.substitute_linear(a)
        assert g.evaluate(point) == F_U23.evaluate(a.apply(point))


class TestPolarization:
    def test_diagonal_identity(self, rng):
        for _ in range(10):
            v = tuple(Fraction(rng.randint(-5, 5)) for _ in range(3))
            assert polarization(F_U23, [v, v]) == F_U23.evaluate(v)

    def test_symmetry_and_multilinearity(self, rng):
        vs = [
            tuple(Fraction(rng.randint(-3, 3)) for _ in range(3))
            for _ in range(2)
        ]
        base = polarization(F_U23, vs)
        assert polarization(F_U23, vs[::-1]) == base
        w = tuple(Fraction(rng.randint(-3, 3)) for _ in range(3))
        scaled = [tuple(3 * x for x in vs[0]), vs[1]]
        assert polarization(F_U23, scaled) == 3 * base
        shifted = [tuple(a + b for a, b in zip(vs[0], w)), vs[1]]
        assert (
            polarization(F_U23, shifted)
            == base + polarization(F_U23, [w, vs[1]])
        )

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatch):
            polarization(F_U23, [(1, 1, 1)])

    def test_polarization_identity_coefficients(self):
        # expand f(x1 v1 + x2 v2) and compare with multinomial * F values
        v1 = (1, 2, 0)
        v2 = (0, 1, 3)
        a = QMatrix(zip(*[v1, v2]))
        expanded = F_U23.substitute_linear(a)
        f11 = polarization(F_U23, [v1, v2])
        f20 = polarization(F_U23, [v1, v1])
        f02 = polarization(F_U23, [v2, v2])
        assert expanded.coefficient((1, 1)) == 2 * f11
        assert expanded.coefficient((2, 0)) == f20
        assert expanded.coefficient((0, 2)) == f02

    def test_determinant_polarization_is_mixed_discriminant(self):
        # the determinant as a polynomial in the 4 entries of a 2x2 matrix
        from logcavity.discriminants import mixed_discriminant_perm

        detpoly = MPoly(4, {(1, 0, 0, 1): 1, (0, 1, 1, 0): -1})
        a = QMatrix([[2, 1], [1, 3]])
        b = QMatrix([[1, 0], [0, 4]])
        flat = lambda m: (m[0][0], m[0][1], m[1][0], m[1][1])
        assert polarization(detpoly, [flat(a), flat(b)]) == (
            mixed_discriminant_perm([a, b])
        )


class TestMConvex:
    def test_matroid_bases(self):
        for m in matroid_zoo().values():
            f = basis_generating_poly(m)
            assert m_convex(f.support())

    def test_missing_middle(self):
        assert not m_convex([(2, 0), (0, 2)])

    def test_singleton(self):
        assert m_convex([(3, 1)])

    def test_mixed_degrees(self):
        with pytest.raises(MixedDegrees):
            m_convex([(1, 0), (1, 1)])


class TestLorentzian:
    def test_zoo_matroids_pass(self):
        for name, m in matroid_zoo().items():
            f = basis_generating_poly(m)
            assert lorentzian_check(f).passed, name

    def test_sum_of_squares_fails(self):
        report = lorentzian_check(MPoly(2, {(2, 0): 1, (0, 2): 1}))
        assert not report.passed
        assert not report.m_convex_support

    def test_product_passes(self):
        assert lorentzian_check(MPoly(2, {(1, 1): 1})).passed

    def test_negative_coefficient_rejected(self):
        with pytest.raises(NegativeCoefficient):
            lorentzian_check(MPoly(2, {(1, 1): -1}))

    def test_zero_passes(self):
        assert lorentzian_check(MPoly.zero(2)).passed

    def test_nonneg_substitution_preserves(self, rng):
        f = basis_generating_poly(Matroid.graphic(k4_graph()))
        for _ in range(4):
            cols = rng.randint(2, 4)
            a = QMatrix(
                [
                    [Fraction(rng.randint(0, 2)) for _ in range(cols)]
                    for _ in range(f.nvars)
                ]
            )
            g = f.substitute_linear(a)
            assert lorentzian_check(g).passed

    def test_inertia_of_hessian_at_samples(self):
        f = basis_generating_poly(linear_3x5_matroid())
        for point in default_sample_points(f.nvars):
            assert inertia(f.partial(0).hessian_at(point)).n_pos == 1


class TestCoefficientLogConcavity:
    def test_matroid_polys(self):
        for m in matroid_zoo().values():
            assert coefficient_logconcavity(basis_generating_poly(m))

    def test_substituted_instances(self):
        m = Matroid.graphic(k4_graph())
        f = basis_generating_poly(m)
        a = QMatrix(
            [[1, 0], [1, 0], [0, 1], [0, 1], [1, 1], [0, 1]]
        )
        assert coefficient_logconcavity(f.substitute_linear(a))

    def test_handcrafted_violation(self):
        f = MPoly(2, {(2, 0): Fraction(1, 2), (0, 2): Fraction(1, 2)})
        assert not coefficient_logconcavity(f)


class TestAFAnalog:
    def test_equal_vectors(self):
        v = (1, 2, 3)
        assert polarization_af_analog_check(F_U23, [v, v])

    def test_random_nonneg(self, rng):
        for _ in range(40):
            vs = [
                tuple(Fraction(rng.randint(0, 5)) for _ in range(3))
                for _ in range(2)
            ]
            assert polarization_af_analog_check(F_U23, vs)

    def test_degree_three(self, rng):
        f = basis_generating_poly(Matroid.graphic(k4_graph()))
        for _ in range(10):
            vs = [
                tuple(Fraction(rng.randint(0, 3)) for _ in range(6))
                for _ in range(3)
            ]
            assert polarization_af_analog_check(f, vs)


class TestSerialization:
    def test_round_trip(self):
        f = basis_generating_poly(tripled_u23())
        assert MPoly.from_json(f.to_json()) == f
