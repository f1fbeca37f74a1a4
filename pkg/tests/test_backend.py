import os
import subprocess
import sys

import numpy as np
import pytest

import fracschrodinger
from fracschrodinger import _backend, _core_py
from fracschrodinger.mittag_leffler import MLOrder, _pole_geometry, _taylor_coeffs, _taylor_nmax

compiled = pytest.importorskip("fracschrodinger._core")


def test_default_is_compiled():
    if os.environ.get("FRACSCHRODINGER_PURE_PYTHON"):
        pytest.skip("fallback forced by environment")
    assert _backend.NAME == "compiled" and fracschrodinger.BACKEND == "compiled"


@pytest.mark.parametrize("alpha,beta", [(0.5, 1.0), (1.0, 1.0), (1.7, 0.3), (0.8 + 0.1j, 1.2 - 0.2j)])
def test_taylor_batch_agrees(alpha, beta):
    rng = np.random.default_rng(7)
    z = rng.uniform(0.1, 12, 64) * np.exp(1j * rng.uniform(-np.pi, np.pi, 64))
    order = MLOrder(alpha, beta)
    lc, lr, mono = _taylor_coeffs(order.alpha, order.beta, _taylor_nmax(order, 100000))
    a = compiled.taylor_batch(z, lc, lr, mono, 0.0, 1e-14)
    b = _core_py.taylor_batch(z, lc, lr, mono, 0.0, 1e-14)
    assert np.allclose(a[0], b[0], rtol=1e-13, atol=0)
    assert np.array_equal(a[2], b[2])
    assert np.array_equal(a[4], b[4])
    assert np.allclose(a[1], b[1], rtol=1e-10)


def test_ray_level_agrees():
    rng = np.random.default_rng(3)
    z = rng.uniform(1, 40, 16) * np.exp(1j * rng.uniform(-np.pi, np.pi, 16))
    _, theta, _ = _pole_geometry(0.7, z)
    log_r = np.linspace(-6, 4, 41)
    weight = rng.uniform(0.1, 1.0, 41)
    a = compiled.ray_level(z, theta, 0.7, 0.7 - 1.1, log_r, weight)
    b = _core_py.ray_level(z, theta, 0.7, 0.7 - 1.1, log_r, weight)
    for u, v in zip(a, b):
        assert np.allclose(u, v, rtol=1e-12, atol=1e-300)


def test_environment_selects_fallback():
    code = ("import fracschrodinger as f; from fracschrodinger.mittag_leffler import ml, MLOrder; "
            "print(f.BACKEND, repr(ml(MLOrder(0.6, 1.1), 3 - 2j).value))")
    env = dict(os.environ, FRACSCHRODINGER_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env,
                         timeout=120, check=True).stdout.split(maxsplit=1)
    assert out[0] == "python"
    from fracschrodinger.mittag_leffler import ml
    ref = ml(MLOrder(0.6, 1.1), 3 - 2j).value
    assert abs(complex(eval(out[1])) - ref) <= 1e-14 * abs(ref)
