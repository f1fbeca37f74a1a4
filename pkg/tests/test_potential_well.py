import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fracschrodinger.errors import BoundaryViolation, NegativeTime, SingularAtZero
from fracschrodinger.kernels import causal_kernel
from fracschrodinger.potential_well import (
    GeneralWellTerm,
    WellSpectrum,
    decompose_half_well,
    evolve_well,
    evolve_well_general,
    mode_profiles,
    project_initial,
)
from fracschrodinger.scales import Scales, well_w
from oracles import l2_rel

A = 2.0
XS = np.linspace(0.0, A, 401)


def sines(coefs, x=XS, width=A):
    return sum(c * np.sin((n + 1) * math.pi * x / width) for n, c in enumerate(coefs))


class TestProjection:
    def test_single_mode(self):
        ws = project_initial(sines([1.0]), A, 8)
        assert abs(ws.coefficients[0] - 1) < 1e-10
        assert np.max(np.abs(ws.coefficients[1:])) < 1e-10

    def test_two_modes(self):
        ws = project_initial(sines([0, 1.0, 0.5]), A, 6)
        assert np.allclose(ws.coefficients, [0, 1, 0.5, 0, 0, 0], atol=1e-10)

    @given(st.lists(st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False),
                    min_size=1, max_size=12))
    def test_round_trip(self, coefs):
        n = len(coefs)
        psi = sines(coefs)
        ws = project_initial(psi, A, n)
        again = project_initial(sines(ws.coefficients), A, n)
        assert np.allclose(again.coefficients, ws.coefficients, atol=1e-10)
        assert np.allclose(ws.coefficients, coefs, atol=1e-10)

    def test_boundary_violation(self):
        with pytest.raises(BoundaryViolation):
            project_initial(np.ones(11), A, 3)


class TestEvolveWell:
    def test_nu1_single_mode(self):
        ws = WellSpectrum(A, [0, 0, 0.7])
        t = np.array([0.0, 0.4, 3.0])
        f = evolve_well(ws, 1, t, XS)
        w3 = well_w(3, A, 1).real
        ref = 0.7 * np.exp(-1j * w3 * t)[:, None] * np.sin(3 * math.pi * XS / A)[None, :]
        assert np.max(np.abs(f.values - ref)) < 1e-12

    def test_nu2_single_mode(self):
        ws = WellSpectrum(A, [0, 1.0])
        w2 = well_w(2, A, 2).real
        t = np.linspace(0, 4 * math.pi / math.sqrt(w2), 60)
        f = evolve_well(ws, 2, t, [A / 4])
        assert np.max(np.abs(f.values[:, 0] - np.cos(t * math.sqrt(w2)))) < 1e-10

    def test_nu_half_single_mode(self):
        width = math.pi / math.sqrt(2.0)  # w_1 = 1 at nu = 1/2
        ws = WellSpectrum(width, [1.0])
        assert abs(well_w(1, width, 0.5) - 1) < 1e-15
        f = evolve_well(ws, 0.5, [1.0], [width / 2])
        assert abs(f.values[0, 0] - causal_kernel(0.5, 1.0, 1.0)) < 1e-14

    def test_boundary_values(self):
        ws = WellSpectrum(A, np.linspace(1, 0.1, 16) * np.exp(1j * np.arange(16)))
        for nu in (0.5, 1.0, 1.7 + 0.2j):
            v = evolve_well(ws, nu, np.linspace(0, 3, 7), XS).values
            peak = np.abs(v).max()
            assert np.all(np.abs(v[:, [0, -1]]) < 1e-12 * peak)

    def test_coefficient_norm_exact(self):
        ws = WellSpectrum(A, [1.0, 0.5j, -0.25])
        w = well_w(ws.n_values, A, 1).real
        t = np.linspace(0, 10, 21)
        c = ws.coefficients[None, :] * np.exp(-1j * np.outer(t, w))
        # phases are unit modulus, so the sum is exact up to one rounding
        norms = np.sum(np.abs(c) ** 2, axis=1)
        assert np.max(np.abs(norms - norms[0])) <= 4 * np.finfo(float).eps

    def test_position_norm(self):
        ws = WellSpectrum(A, [1.0, 0.5j, -0.25])
        f = evolve_well(ws, 1, np.linspace(0, 5, 6), XS)
        n = f.norm_sq()
        assert np.max(np.abs(n - n[0])) < 1e-8
        assert abs(n[0] - A / 2 * np.sum(np.abs(ws.coefficients) ** 2)) < 1e-8

    def test_mode_independence(self):
        coefs = [1.0, -0.3, 0.2j]
        ws = WellSpectrum(A, coefs)
        t = [0.0, 0.8, 2.0]
        joint = evolve_well(ws, 0.6, t, XS).values
        sep = sum(evolve_well(WellSpectrum(A, np.eye(3)[i] * coefs[i]), 0.6, t, XS).values
                  for i in range(3))
        assert np.max(np.abs(joint - sep)) < 1e-12

    def test_frequency_ratio(self):
        w1 = well_w(1, A, 1).real
        period = 2 * math.pi / w1
        for n in (2, 3, 5):
            ws = WellSpectrum(A, np.eye(n)[n - 1])
            x = [A / (2 * n)]
            v = evolve_well(ws, 1, [0.0, period / n**2], x).values[:, 0]
            # one full cycle of mode n after period / n**2
            assert abs(v[1] - v[0]) < 1e-12

    def test_negative_time(self):
        with pytest.raises(NegativeTime):
            evolve_well(WellSpectrum(A, [1.0]), 1, [-1.0], XS)

    def test_outside_well(self):
        with pytest.raises(ValueError):
            evolve_well(WellSpectrum(A, [1.0]), 1, [0.0], [-0.1])


class TestGeneral:
    def test_m0_nu1(self):
        t = np.array([0.5, 1.5])
        f = evolve_well_general([GeneralWellTerm(2, 0, 0.3)], 1, t, XS, A)
        w2 = well_w(2, A, 1).real
        ref = -1j * 0.3 * np.exp(-1j * w2 * t)[:, None] * np.sin(2 * math.pi * XS / A)[None, :]
        assert np.max(np.abs(f.values - ref)) < 1e-12

    def test_empty(self):
        assert np.all(evolve_well_general([], 0.5, [1.0], XS, A).values == 0)

    def test_n1_m1_nu2(self):
        w1 = well_w(1, A, 2).real
        t = np.linspace(0, 5, 11)
        f = evolve_well_general([GeneralWellTerm(1, 1, 1.0)], 2, t, [A / 2], A)
        assert np.max(np.abs(f.values[:, 0] + 1j * np.cos(t * math.sqrt(w1)))) < 1e-12

    def test_singular(self):
        with pytest.raises(SingularAtZero):
            evolve_well_general([GeneralWellTerm(1, 0, 1.0)], 0.5, [0.0], XS, A)

    def test_term_bounds(self):
        with pytest.raises(ValueError):
            GeneralWellTerm(0, 0, 1.0)
        with pytest.raises(ValueError):
            GeneralWellTerm(1, 9, 1.0)


class TestHalfWell:
    def test_sum(self):
        ws = WellSpectrum(A, [1.0, 0.4, -0.2j, 0.1])
        on, off = decompose_half_well(ws, 1.3, XS)
        full = evolve_well(ws, 0.5, [1.3], XS)
        assert l2_rel(on.values + off.values, full.values) < 1e-6

    def test_onshell_unit_phase(self):
        ws = WellSpectrum(A, [1.0])
        x = [A / 2]
        t0, t1 = 0.7, 2.2
        a = decompose_half_well(ws, t0, x)[0].values[0, 0]
        b = decompose_half_well(ws, t1, x)[0].values[0, 0]
        w = well_w(1, A, 0.5).real
        assert abs(abs(b / a) - 1) < 1e-14
        assert abs(b / a - cmath.exp(-1j * w * w * (t1 - t0))) < 1e-13

    def test_offshell_decays(self):
        ws = WellSpectrum(A, [1.0])
        x = [A / 2]
        early = abs(decompose_half_well(ws, 5.0, x)[1].values[0, 0])
        late = abs(decompose_half_well(ws, 50.0, x)[1].values[0, 0])
        assert late < early

    def test_rejects_zero_time(self):
        with pytest.raises(NegativeTime):
            decompose_half_well(WellSpectrum(A, [1.0]), 0.0, XS)


def test_profiles_zero_at_walls():
    p = mode_profiles(np.arange(1, 40), [0.0, 1.0, A], A)
    assert np.all(p[:, 0] == 0) and np.all(p[:, 2] == 0)


def test_width_validated():
    with pytest.raises(ValueError):
        WellSpectrum(0.0, [1.0])


@settings(max_examples=20)
@given(st.floats(0.5, 5.0), st.floats(0.1, 3.0))
def test_scales_enter_frequency(nm, t):
    s = Scales(n_m=nm)
    ws = WellSpectrum(A, [1.0])
    v = evolve_well(ws, 1, [t], [A / 2], s).values[0, 0]
    assert abs(v - cmath.exp(-1j * well_w(1, A, 1, s) * t)) < 1e-12
