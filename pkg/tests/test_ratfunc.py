import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from livsic.errors import InvalidArgument, UnsupportedPoleOrder
from livsic.ratfunc import (INFINITY, Poly, RationalFunction, evaluate, fiber,
                            homogenize, is_dividing, laurent_simple, roots,
                            sorted_roots)

T = Poly([0.0, 1.0])


def pf(poles, residues, poly=()):
    return RationalFunction.from_partial_fractions(poles, residues, poly)


class TestPoly:
    def test_strip_and_degree(self):
        assert Poly([1, 2, 0, 0]).degree == 1
        assert Poly([0, 0]).is_zero() and Poly([]).degree == -1

    def test_arithmetic(self):
        p = Poly([1, 1]) * Poly([-1, 1])
        assert p == Poly([-1, 0, 1])
        q, r = divmod(p, Poly([-1, 1]))
        assert q.allclose(Poly([1, 1])) and r.is_zero()
        assert (p - p).is_zero()
        assert p.deriv() == Poly([0, 2])

    def test_homogenize(self):
        # t^2 at t = (2s + 1)/(s + 3), cleared: (2s + 1)^2
        assert homogenize(Poly([0, 0, 1]), 2, 2, 1, 1, 3).allclose(Poly([1, 4, 4]))


class TestRoots:
    def test_cubic(self):
        assert np.allclose(sorted_roots(roots(Poly([0, -1, 0, 1]))), [-1, 0, 1])

    def test_double_root(self):
        assert np.allclose(roots(Poly([0, 0, 1])), [0, 0])

    def test_factored(self):
        p = Poly([-2, 1]) * Poly([1, 0, 1])
        r = sorted_roots(roots(p))
        assert np.allclose(r, [-1j, 1j, 2], atol=1e-12)

    def test_zero_polynomial(self):
        with pytest.raises(InvalidArgument):
            roots(Poly())

    @given(st.integers(0, 2**32 - 1), st.integers(1, 8))
    @settings(max_examples=60, deadline=None)
    def test_residuals_small(self, seed, deg):
        rng = np.random.default_rng(seed)
        p = Poly(rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1))
        r = roots(p)
        assert len(r) == p.degree
        for z in r:
            assert abs(p(z)) <= 1e-9 * p.scale_at(z)


class TestLaurent:
    def test_simple_pole(self):
        e = laurent_simple(RationalFunction(1.0, T), 0.0)
        assert (e.a, e.b) == (1.0, 0.0)

    def test_two_poles(self):
        e = laurent_simple(pf([0, 1], [1, 1]), 0.0)
        assert abs(e.a - 1) < 1e-14 and abs(e.b + 1) < 1e-14

    def test_constant(self):
        e = laurent_simple(RationalFunction(1.0), 3.0)
        assert e.a == 0 and e.b == 1

    def test_double_pole(self):
        with pytest.raises(UnsupportedPoleOrder):
            laurent_simple(RationalFunction(1.0, T * T), 0.0)

    def test_unreduced_input(self):
        f = RationalFunction(T * Poly([-1, 1]), T * T)  # (t - 1)/t
        e = laurent_simple(f, 0.0)
        assert abs(e.a + 1) < 1e-12 and abs(e.b - 1) < 1e-12


class TestEvaluate:
    def test_values(self):
        f = RationalFunction(1.0, T)
        assert evaluate(f, 2.0) == 0.5
        assert evaluate(f, 0.0) == INFINITY

    def test_removable_singularity(self):
        f = RationalFunction(Poly([-1, 1]), Poly([-1, 1]))
        assert abs(evaluate(f.reduced(), 1.0) - 1) < 1e-14
        assert abs(evaluate(f, 1.0) - 1) < 1e-12


def _mobius(f, a, b, c, d):
    return f.compose_mobius(a, b, c, d)


class TestDividing:
    def test_pick(self):
        v = is_dividing(-pf([0, 1], [1, 1]))
        assert v.is_dividing and v.orientation_sign == 1

    def test_mixed_residues(self):
        f = RationalFunction(-1.0, Poly([0, -1, 1]))
        v = is_dividing(f)
        assert not v.is_dividing and v.orientation_sign is None
        c = v.failure_witness
        assert c is not None
        r = fiber(f, c)
        assert np.any(np.abs(r.imag) > 1e-6)
        assert c == 1.0  # t^2 - t + 1 has discriminant -3

    def test_negative_identity(self):
        v = is_dividing(RationalFunction(-T))
        assert v.is_dividing and v.orientation_sign == -1

    def test_non_real_rejected(self):
        with pytest.raises(InvalidArgument):
            is_dividing(RationalFunction(Poly([1j, 1])))

    def test_constant_rejected(self):
        with pytest.raises(InvalidArgument):
            is_dividing(RationalFunction(3.0))

    def test_double_pole_not_dividing(self):
        assert not is_dividing(RationalFunction(1.0, T * T)).is_dividing

    def test_complex_pole_not_dividing(self):
        v = is_dividing(RationalFunction(1.0, Poly([1, 0, 1])))
        assert not v.is_dividing and v.failure_witness is not None

    def test_quadratic_at_infinity_not_dividing(self):
        assert not is_dividing(RationalFunction(T * T)).is_dividing

    @pytest.mark.parametrize("f", [
        -pf([0, 1], [1, 1]),
        RationalFunction(-T),
        pf([-1, 0, 1], [-1, -1, -1]),
        pf([2.0], [0.5], [0.0, -3.0]),
    ])
    @pytest.mark.parametrize("m", [(1, 2, -1, 3), (2, 0, 1, 1), (0, 1, -1, 0)])
    def test_mobius_precomposition(self, f, m):
        """Orientation-preserving maps keep the sign; reversing ones flip it."""
        s0 = is_dividing(f).orientation_sign
        a, b, c, d = m
        assert is_dividing(_mobius(f, a, b, c, d)).orientation_sign == s0
        assert is_dividing(_mobius(f, -a, b, -c, d)).orientation_sign == -s0

    @pytest.mark.parametrize("f", [-pf([0, 1], [1, 1]), RationalFunction(-T)])
    def test_postcomposition(self, f):
        s0 = is_dividing(f).orientation_sign
        g = (2 * f + 1) / (f + 3)  # det 5 > 0
        assert is_dividing(g).orientation_sign == s0
        h = (-2 * f + 1) / (f + 3)  # det -7 < 0
        assert is_dividing(h).orientation_sign == -s0

    def test_non_dividing_stays_non_dividing_under_mobius(self):
        f = RationalFunction(-1.0, Poly([0, -1, 1]))
        assert not is_dividing(_mobius(f, 1, 2, -1, 3)).is_dividing

    @pytest.mark.parametrize("seed", range(5))
    def test_dividing_has_real_fibers(self, seed):
        rng = np.random.default_rng(seed)
        m = 4
        poles = np.sort(rng.uniform(-3, 3, m))
        # negative residues with a positive slope: a Pick function
        f = pf(poles, -rng.uniform(0.2, 2.0, m), [rng.standard_normal(), abs(rng.standard_normal())])
        assert is_dividing(f).is_dividing
        for c in rng.standard_normal(50) * 5:
            r = fiber(f, c)
            assert len(r) == f.degree
            assert np.all(np.abs(r.imag) < 1e-8)
            assert np.min(np.diff(np.sort(r.real))) > 0

    @pytest.mark.parametrize("seed", range(5))
    def test_failure_witness_is_genuine(self, seed):
        rng = np.random.default_rng(100 + seed)
        poles = np.sort(rng.uniform(-3, 3, 3))
        f = pf(poles, [1.0, -1.0, rng.uniform(0.5, 1.5)])
        v = is_dividing(f)
        assert not v.is_dividing
        r = fiber(f, v.failure_witness)
        assert np.max(np.abs(r.imag)) > 1e-6
