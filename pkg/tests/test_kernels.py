import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import special

from fracschrodinger.errors import NegativeTime, QuadratureFailure, SingularAtZero
from fracschrodinger.kernels import (
    branch_decomposition_half,
    canonical_weight,
    causal_kernel,
    general_kernel,
    i0_power,
    offshell_integral,
)
from oracles import contour_general_kernel, ml_half

# (w, t) grid shared with the acceptance suite
HALF_GRID = [(0.5, 0.3), (1.0, 1.0), (2.0, 5.0), (0.1, 2.0), (3.0, 0.5),
             (1.5, 10.0), (0.7, 7.0), (4.0, 0.1), (0.25, 20.0), (2.5, 2.5)]


class TestI0Power:
    def test_examples(self):
        assert i0_power(1, 0.3 + 2j) == 1
        assert abs(i0_power(-1, 0.5) - 1j) < 1e-15
        assert abs(i0_power(2, -0.5) - 1 / math.sqrt(2)) < 1e-15

    def test_zero(self):
        assert i0_power(0, 0) == 1
        assert i0_power(0, 0.5) == 0
        with pytest.raises(SingularAtZero):
            i0_power(0, -0.5)

    @given(st.floats(-50, 50).filter(lambda t: abs(t) > 1e-3), st.floats(-2, 2), st.floats(-2, 2))
    def test_modulus_and_phase(self, t, mr, mi):
        mu = complex(mr, mi)
        v = i0_power(t, mu)
        arg = 0.0 if t > 0 else math.pi
        assert cmath.isclose(v, cmath.exp(mu * (math.log(abs(t)) + 1j * arg)), rel_tol=1e-13)


class TestCausal:
    def test_examples(self):
        assert abs(causal_kernel(1, 2, 3) - cmath.exp(-6j)) < 1e-13
        assert abs(causal_kernel(2, 4, math.pi / 2) + 1) < 1e-12
        z = cmath.exp(-0.25j * math.pi)
        assert abs(causal_kernel(0.5, 1, 1) - ml_half(z)) < 1e-13

    def test_negative_time(self):
        with pytest.raises(NegativeTime):
            causal_kernel(1, 1, -0.1)

    @given(st.builds(complex, st.floats(0.1, 3), st.floats(-1, 1)), st.floats(-10, 10))
    def test_one_at_zero(self, nu, w):
        assert causal_kernel(nu, w, 0.0) == 1

    @given(st.floats(-20, 20), st.floats(0, 20))
    def test_nu1(self, w, t):
        v = causal_kernel(1, w, t)
        assert abs(v - cmath.exp(-1j * w * t)) <= 1e-12
        assert abs(abs(v) - 1) <= 1e-12

    @given(st.floats(0.01, 20), st.floats(0, 20))
    def test_nu2(self, w, t):
        assert abs(causal_kernel(2, w, t) - math.cos(t * math.sqrt(w))) <= 1e-12

    def test_broadcast(self):
        v = causal_kernel(0.7, np.array([[0.5], [1.0]]), np.array([0.0, 1.0, 2.0]))
        assert v.shape == (2, 3)


class TestGeneral:
    def test_examples(self):
        for w, t in ((1.0, 0.5), (2.0, 3.0)):
            assert abs(general_kernel(1, 0, w, t) + 1j * cmath.exp(-1j * w * t)) < 1e-12
        assert abs(general_kernel(2, 1, 0, 1) + 1j) < 1e-15

    @pytest.mark.parametrize("nu,m,w,t", [(0.5, 0, 1.0, 1.0), (1.5, 1, 1.0, 0.7),
                                          (0.5, 1, 2.0, 2.0), (1.0, 0, 2.0, 1.5)])
    def test_contour_oracle(self, nu, m, w, t):
        ref = contour_general_kernel(nu, m, w, t)
        assert abs(general_kernel(nu, m, w, t) - ref) < 1e-8 * max(1.0, abs(ref))

    @given(st.floats(0.2, 3.0), st.integers(0, 4), st.floats(-5, 5).filter(lambda t: abs(t) > 1e-2))
    def test_zero_frequency_reduction(self, nu, m, t):
        ref = cmath.exp(-0.5j * math.pi * (nu - m)) * i0_power(t, nu - m - 1) * special.rgamma(nu - m)
        assert cmath.isclose(general_kernel(nu, m, 0.0, t), ref, rel_tol=1e-14, abs_tol=1e-300)

    def test_singular_at_zero(self):
        with pytest.raises(SingularAtZero):
            general_kernel(0.5, 0, 1.0, 0.0)
        assert general_kernel(2.5, 0, 1.0, 0.0) == 0

    def test_negative_m(self):
        with pytest.raises(ValueError):
            general_kernel(1, -1, 1, 1)


class TestBranchDecomposition:
    @pytest.mark.parametrize("w,t", HALF_GRID)
    def test_sum_is_causal_kernel(self, w, t):
        on, off = branch_decomposition_half(w, None, t)
        assert abs(on + off - causal_kernel(0.5, w, t)) < 1e-8

    def test_onshell_phase(self):
        on, _ = branch_decomposition_half(1.3, None, 2.0)
        assert abs(on - 2.0 * cmath.exp(-1j * 1.3**2 * 2.0)) < 1e-15

    def test_small_time_limit(self):
        on, off = branch_decomposition_half(1.0, None, 1e-4)
        assert abs(on + off - 1) < 2e-2

    def test_zero_frequency(self):
        on, off = branch_decomposition_half(0.0, None, 3.0)
        assert on + off == 1

    def test_custom_weight(self):
        # a weight that is a scaled canonical weight scales the cut part
        w, t = 1.2, 1.7
        base = offshell_integral(w, canonical_weight(w), t)
        on, off = branch_decomposition_half(w, lambda s: 2.0 * canonical_weight(w)(s), t)
        assert abs(off - 2 * base) < 1e-9

    def test_rejections(self):
        with pytest.raises(NegativeTime):
            branch_decomposition_half(1.0, None, 0.0)
        with pytest.raises(ValueError):
            branch_decomposition_half(-1.0, None, 1.0)

    def test_quadrature_failure(self):
        with pytest.raises(QuadratureFailure):
            offshell_integral(1.0, lambda s: s**-0.999, 1.0, tol=1e-30)
