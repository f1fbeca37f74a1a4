import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fracschrodinger.errors import InvalidOrder
from fracschrodinger.scales import DerivativeOrder, Scales, beta_sq, dispersion_w, well_w

positive = st.floats(0.05, 20.0)
nus = st.builds(complex, st.floats(0.05, 4.0), st.floats(-2.0, 2.0))


def test_scales_validate():
    with pytest.raises(ValueError):
        Scales(n_m=0)
    with pytest.raises(ValueError):
        Scales(l_p=-1)
    with pytest.raises(ValueError):
        Scales(t_p=float("inf"))


def test_derivative_order():
    assert DerivativeOrder(0.5).nu == 0.5
    with pytest.raises(InvalidOrder):
        DerivativeOrder(0)
    with pytest.raises(InvalidOrder):
        DerivativeOrder(-1 + 2j)


def test_dispersion_examples():
    assert dispersion_w(2, 1) == 2
    assert dispersion_w(0, 0.3 + 1j, Scales(2.0, 3.0, 5.0)) == 0
    assert dispersion_w(1, 0.5, Scales(n_m=2)) == 0.25


def test_well_examples():
    assert math.isclose(well_w(1, math.pi, 1).real, 0.5, rel_tol=1e-15)
    assert math.isclose(well_w(2, math.pi, 1).real, 2.0, rel_tol=1e-15)
    assert math.isclose(well_w(1, math.pi, 2, Scales(t_p=2)).real, 0.125, rel_tol=1e-15)


def test_well_validation():
    with pytest.raises(ValueError):
        well_w(0, 1.0, 1)
    with pytest.raises(ValueError):
        well_w(1, 0.0, 1)
    with pytest.raises(ValueError):
        well_w(1.5, 1.0, 1)


def test_beta_examples():
    assert beta_sq(1) == 0.5
    assert beta_sq(1, Scales(n_m=0.5)) == 1


@given(nus, positive, positive, positive, st.floats(-100, 100))
def test_dispersion_is_beta_k2(nu, nm, lp, tp, k):
    s = Scales(nm, lp, tp)
    assert dispersion_w(k, nu, s) == beta_sq(nu, s) * (k * k)
    assert np.isfinite(dispersion_w(k, nu, s))


@given(nus, positive, positive, positive)
def test_dispersion_three(nu, nm, lp, tp):
    s = Scales(nm, lp, tp)
    assert dispersion_w(3, nu, s) == beta_sq(nu, s) * 9


@given(nus, positive, st.floats(0.1, 10.0))
def test_well_n_squared(nu, tp, width):
    s = Scales(t_p=tp)
    base = well_w(1, width, nu, s)
    n = np.arange(1, 65)
    assert np.all(well_w(n, width, nu, s) == base * n.astype(float) ** 2)


def test_array_input():
    k = np.linspace(-3, 3, 7)
    assert np.array_equal(dispersion_w(k, 1), 0.5 * k * k)
