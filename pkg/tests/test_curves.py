import numpy as np
import pytest

from livsic.bezoutian import u_vector
from livsic.curves import (RationalCurveParam, builtin_curve, builtin_example,
                           construct_gamma, containment_check, divisor_of,
                           example_names, hermitian_representation,
                           is_normalized, lambda_functions,
                           normalize_coordinates, represent_curve,
                           validate_curve)
from livsic.detrep import (degree, membership, pencil_commutation_report,
                           is_very_reasonable)
from livsic.errors import (BasePointError, DegenerateSpan, InvalidArgument,
                           NotNormalized, SectionNotReal, UnknownExample)
from livsic.exterior import contract_subspace, stacked_wedge, transform
from livsic.ratfunc import RationalFunction

TWISTED = RationalCurveParam([[1], [0, 1], [0, 0, 1], [0, 0, 0, 1]])
CONIC = RationalCurveParam([[1], [0, 1], [0, 0, 1]])


@pytest.fixture(scope="module")
def normalized_cubic():
    return normalize_coordinates(TWISTED, seed=7)


@pytest.fixture(scope="module")
def cubic_report(normalized_cubic):
    return construct_gamma(normalized_cubic.curve)


class TestParam:
    def test_shape(self):
        assert (TWISTED.d, TWISTED.n, TWISTED.real) == (3, 3, True)
        assert np.allclose(TWISTED(2.0), [1, 2, 4, 8])
        assert np.allclose(TWISTED(np.inf), [0, 0, 0, 1])

    def test_transformed(self):
        g = np.random.default_rng(0).standard_normal((4, 4))
        assert np.allclose(TWISTED.transformed(g)(0.7), g @ TWISTED(0.7))

    def test_reparametrized(self):
        # s ↦ μ((2s + 1)/(s + 3)) times (s + 3)^3
        r = TWISTED.reparametrized(2, 1, 1, 3)
        s = 0.4
        assert np.allclose(r(s), (s + 3) ** 3 * TWISTED((2 * s + 1) / (s + 3)))

    def test_rejects_trivial(self):
        with pytest.raises(InvalidArgument):
            RationalCurveParam([[1]])
        with pytest.raises(InvalidArgument):
            RationalCurveParam([[0], [0]])


class TestValidate:
    def test_twisted_cubic(self):
        diag = validate_curve(TWISTED)
        assert diag.n == 3 and diag.rank == 4 and diag.injectivity_failures == 0

    def test_base_point(self):
        with pytest.raises(BasePointError):
            validate_curve(RationalCurveParam([[0, 1], [0, 1], [0, 0, 1], [0, 0, 0, 1]]))

    def test_degenerate_span(self):
        with pytest.raises(DegenerateSpan):
            validate_curve(RationalCurveParam([[1], [0, 1], [0, 2], [0, 0, 1]]))

    def test_non_injective_parametrization(self):
        # t ↦ t^2 covers the conic twice
        diag = validate_curve(RationalCurveParam([[1], [0, 0, 1], [0, 0, 0, 0, 1]]))
        assert diag.injectivity_failures == diag.injectivity_samples


class TestNormalize:
    def test_generic_seed_7(self, normalized_cubic):
        mu0 = normalized_cubic.curve.polys[0]
        assert mu0.degree == 3
        r = np.asarray(normalized_cubic.divisor.points)
        assert len(r) == 3
        assert min(abs(a - b) for i, a in enumerate(r) for b in r[:i]) > 1e-6
        assert np.isrealobj(normalized_cubic.g)
        assert np.allclose(normalized_cubic.curve(0.3), normalized_cubic.g @ TWISTED(0.3))

    def test_identity_accepted(self, pick_curve):
        assert is_normalized(pick_curve)
        res = normalize_coordinates(pick_curve, seed=3)
        assert np.array_equal(res.g, np.eye(4))

    def test_pick_real_section(self, pick_curve):
        res = normalize_coordinates(pick_curve, mode="real_section", hyperplane=[1, 0, 0, 0])
        assert np.array_equal(res.g, np.eye(4))
        assert np.allclose(sorted(np.real(res.divisor.points)), [-1, 0, 1])

    def test_section_not_real(self):
        # x_0 + x_2 meets the twisted cubic where 1 + t^2 = 0 (and at t = ∞)
        with pytest.raises(SectionNotReal):
            normalize_coordinates(TWISTED, mode="real_section", hyperplane=[1, 0, 1, 0])

    def test_real_section_other_hyperplane(self):
        # x_1 - x_3 meets the cubic at t in {0, 1, -1}
        res = normalize_coordinates(TWISTED, mode="real_section", hyperplane=[0, 1, 0, -1])
        assert res.divisor.is_real() and len(res.divisor) == 3

    def test_bad_mode(self):
        with pytest.raises(InvalidArgument):
            normalize_coordinates(TWISTED, mode="fancy")
        with pytest.raises(InvalidArgument):
            normalize_coordinates(TWISTED, hyperplane=[1, 0, 0, 0])

    @pytest.mark.parametrize("seed", range(5))
    def test_invariants(self, seed):
        res = normalize_coordinates(builtin_curve("rational_p3"), seed=seed)
        assert is_normalized(res.curve)
        assert res.curve.polys[0].degree == res.curve.n


class TestLambdas:
    def test_pick(self, pick_curve):
        lam = lambda_functions(pick_curve)
        assert lam[0].degree == 0 and lam[0](5.0) == 1
        expected = RationalFunction.from_partial_fractions([-1, 0, 1], [-1, -1, -1])
        for t in (0.3, 2.5, -4.0, 1j):
            assert abs(lam[1](t) - expected(t)) < 1e-12
            assert abs(lam[1](t) - (1 - 3 * t * t) / (t ** 3 - t)) < 1e-12

    def test_polynomial_lambda(self):
        c = RationalCurveParam([[0, -1, 0, 1], [1], [0, 1], [0, -2, 0, 2]])
        lam = lambda_functions(c)
        assert lam[3].den.degree == 0 and abs(lam[3](0.7) - 2) < 1e-12

    def test_not_normalized(self):
        with pytest.raises(NotNormalized):
            lambda_functions(TWISTED)
        with pytest.raises(NotNormalized):
            divisor_of(TWISTED)


class TestConstruct:
    def test_twisted_cubic(self, cubic_report):
        g = cubic_report.gamma
        assert g.n == 3 and g[(0, 1)].shape == (3, 3)
        assert cubic_report.vr and cubic_report.containment_residual < 1e-8

    def test_conic(self):
        res = normalize_coordinates(CONIC, seed=0)
        g = construct_gamma(res.curve).gamma
        assert (g.d, g.n) == (2, 2)
        for t in np.linspace(-2, 2, 9):
            m = res.curve(t)
            M = m[2] * g[(0, 1)] - m[1] * g[(0, 2)] + m[0] * g[(1, 2)]
            assert abs(np.linalg.det(M)) < 1e-10 * np.linalg.norm(m) ** 2
        off = np.array([1.0, 0.0, 1.0])  # x_0 x_2 = x_1^2 fails here, and after g as well
        off = res.g @ off
        M = off[2] * g[(0, 1)] - off[1] * g[(0, 2)] + off[0] * g[(1, 2)]
        assert abs(np.linalg.det(M)) > 1e-3

    def test_pick_base_plane(self, pick_curve):
        g = construct_gamma(pick_curve).gamma
        assert np.allclose(contract_subspace(g, np.eye(4)[2:]), -np.eye(3), atol=1e-12)

    def test_not_normalized(self):
        with pytest.raises(NotNormalized):
            construct_gamma(TWISTED)

    def test_kernel_vector_relations(self, cubic_report):
        # (λ_j γ_0i - λ_i γ_0j + γ_ij) u_right(t) = 0, from the determinant-vanishing identity
        g, lam, D = cubic_report.gamma, cubic_report.lambdas, cubic_report.divisor

        def G(i, j):
            return g[(i, j)] if i < j else np.zeros((g.n, g.n))

        rng = np.random.default_rng(0)
        for t in rng.standard_normal(100) + 1j * rng.standard_normal(100):
            u = u_vector(D, t, "right")
            for i in range(4):
                for j in range(i + 1, 4):
                    M = lam[j](t) * G(0, i) - lam[i](t) * G(0, j) + G(i, j)
                    scale = np.linalg.norm(u) * g.norm() * max(1, abs(lam[i](t)), abs(lam[j](t)))
                    assert np.linalg.norm(M @ u) < 1e-9 * scale

    def test_commutation_on_generic_slices(self, cubic_report):
        rng = np.random.default_rng(1)
        for _ in range(5):
            rep = pencil_commutation_report(cubic_report.gamma, rng.standard_normal((2, 4)), rng.standard_normal(4))
            assert rep.commutator < 1e-9 and rep.ok

    @pytest.mark.parametrize("name", ["twisted_cubic", "rational_p3", "monomial_quintic", "pick_cubic"])
    def test_represent_builtin_curves(self, name):
        c = builtin_curve(name)
        res = represent_curve(c, seed=1)
        assert res.report.vr and res.containment_residual < 1e-8
        assert degree(res.gamma).degree == c.n

    def test_equivariance(self):
        rng = np.random.default_rng(2)
        g = rng.uniform(-1, 1, (4, 4))
        a = transform(represent_curve(TWISTED, seed=0).gamma, g)
        b = represent_curve(TWISTED.transformed(g), seed=0).gamma
        ts = rng.standard_normal(25) + 1j * rng.standard_normal(25)
        points = [g @ TWISTED(t) for t in ts] + list(rng.standard_normal((25, 4)))
        for mu in points:
            assert membership(a, mu).kernel_dim == membership(b, mu).kernel_dim

    def test_symmetry(self, cubic_report, pick_curve):
        for I in cubic_report.gamma.index_sets:
            M = cubic_report.gamma[I]
            assert np.allclose(M, M.T, atol=1e-12)
        real = construct_gamma(pick_curve).gamma
        for I in real.index_sets:
            assert np.isrealobj(real[I]) and np.allclose(real[I], real[I].T)

    def test_hermitian_representation(self, pick_curve):
        res = hermitian_representation(builtin_curve("rational_p3"), seed=0)
        assert res.gamma.is_real() and res.gamma.is_hermitian()
        assert res.containment_residual < 1e-8
        assert hermitian_representation(pick_curve).gamma.is_hermitian()


class TestBuiltins:
    def test_names(self):
        assert {"twisted_cubic", "monomial_quintic", "rational_p3"} <= set(example_names())

    def test_twisted_cubic_entries(self, twisted_cubic):
        assert np.array_equal(twisted_cubic[(0, 1)], np.diag([1.0, 0, 0]))
        assert np.array_equal(twisted_cubic[(2, 3)], np.diag([0, 0, 1.0]))
        assert np.array_equal(twisted_cubic[(1, 3)], [[0, 0, 0], [0, 0, 1], [0, 1, 0]])

    def test_sizes(self):
        assert builtin_example("monomial_quintic").n == 5
        assert builtin_example("rational_p3").n == 4

    def test_unknown(self):
        with pytest.raises(UnknownExample):
            builtin_example("nodal_cubic")
        with pytest.raises(KeyError):
            builtin_curve("nodal_cubic")

    def test_quintic_ideal(self):
        c = builtin_curve("monomial_quintic")
        for t in (0.5, -1.3, 2.0):
            w, x, y, z = c(t)
            x, y, z = x / w, y / w, z / w
            assert abs(y * y - x * z) < 1e-12
            assert abs(x * x * y - z * z) < 1e-9
            assert abs(x ** 3 - y * z) < 1e-9

    @pytest.mark.parametrize("name", ["twisted_cubic", "monomial_quintic", "rational_p3",
                                      "monomial_quintic_variant"])
    def test_containment(self, name):
        res = containment_check(builtin_curve(name), builtin_example(name))
        assert res.passed and all(k >= 1 for k in res.kernel_dims)

    def test_variant_quintic_misses_the_monomial_curve(self):
        res = containment_check(builtin_curve("monomial_quintic"), builtin_example("monomial_quintic_variant"))
        assert not res.passed and res.residual > 0.1

    def test_rational_p3_parametrization(self):
        assert not containment_check(TWISTED, builtin_example("rational_p3")).passed

    def test_wrong_tensor(self):
        res = containment_check(builtin_curve("monomial_quintic"), builtin_example("twisted_cubic"))
        assert not res.passed

    def test_dimension_mismatch(self, twisted_cubic):
        with pytest.raises(InvalidArgument):
            containment_check(CONIC, twisted_cubic)

    @pytest.mark.parametrize("name", ["twisted_cubic", "monomial_quintic", "rational_p3"])
    def test_very_reasonable(self, name):
        assert is_very_reasonable(builtin_example(name))

    def test_stacked_wedge_kernel(self, twisted_cubic):
        # the kernel at μ(t) is spanned by (1, t, t^2) up to the convention of the example
        K = stacked_wedge(twisted_cubic, TWISTED(2.0))
        s = np.linalg.svd(K, compute_uv=False)
        assert s[-1] < 1e-12
