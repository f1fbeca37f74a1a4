"""Scalar time-evolution kernels.

``causal_kernel`` is the initial-value kernel ``E_nu((-it)**nu w)``,
``general_kernel`` the two-index kernel built on the upper boundary value
``(t + i0)**mu``, and ``branch_decomposition_half`` splits the
``nu = 1/2`` causal kernel into its pole and branch-cut parts.

For ``nu = 1/2`` the causal kernel's transform ``1/(sqrt(k0) - w)`` has a
pole at ``k0 = w**2`` and a cut along ``k0 < 0``. Writing
``E_{1/2}(z) = exp(z**2) erfc(-z)`` with ``z = exp(-i pi/4) sqrt(t) w`` gives

    E_{1/2} = 2 exp(-i w**2 t) - (w/pi) int_0^inf s**-1/2 exp(i s t) / (s + w**2) ds

so the pole carries amplitude 2 and the canonical cut weight is
``-(w/pi) s**-1/2``. At ``t = 0`` the cut integral equals ``-1``.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np
from scipy import integrate

from .errors import NegativeTime, QuadratureFailure, SingularAtZero
from .mittag_leffler import MLOrder, ml_values
from .scales import as_nu

ONSHELL_AMPLITUDE = 2.0
OFFSHELL_TOL = 1e-10


def i0_power(t, mu):
    """Upper boundary value ``(t + i0)**mu`` for real ``t``.

    ``|t|**mu`` for ``t > 0`` and ``|t|**mu exp(i pi mu)`` for ``t < 0``. At
    ``t = 0`` the value is 1 for ``mu = 0`` and 0 for ``Re(mu) > 0``.
    """
    mu = complex(mu)
    t = np.asarray(t, dtype=float)
    zero = t == 0
    if zero.any() and mu != 0 and mu.real <= 0:
        raise SingularAtZero(f"(t+i0)**mu at t = 0 with mu = {mu}")
    phase = np.where(t < 0, math.pi, 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.exp(mu * (np.log(np.abs(t)) + 1j * phase))
    if zero.any():
        out = np.where(zero, 1.0 + 0j if mu == 0 else 0j, out)
    return complex(out) if out.ndim == 0 else out


def causal_kernel(nu, w, t, **ml_kw):
    """``E_{nu,1}(t**nu exp(-i pi nu/2) w)`` for ``t >= 0``; broadcasts.

    Extra keywords (``atol``, ``rtol``, ...) go to the Mittag-Leffler
    evaluator.
    """
    nu = as_nu(nu).nu
    w, t = np.broadcast_arrays(np.asarray(w, dtype=complex), np.asarray(t, dtype=float))
    if np.any(t < 0):
        raise NegativeTime("causal kernel needs t >= 0")
    with np.errstate(divide="ignore"):
        tnu = np.where(t > 0, np.exp(nu * np.log(np.where(t > 0, t, 1.0))), 0.0)
    z = tnu * np.exp(-0.5j * math.pi * nu) * w
    z = np.where(t > 0, z, 0.0)
    if nu == 1:
        # E_{1,1} is the exponential; keeps |kernel| = 1 to rounding
        vals = np.exp(-1j * w * t)
    else:
        vals, _ = ml_values(MLOrder(nu, 1.0), z, **ml_kw)
    vals = np.where(t == 0, 1.0 + 0j, vals)
    return complex(vals) if vals.ndim == 0 else vals


def general_kernel(nu, m: int, w, t, **ml_kw):
    """``exp(-i pi (nu-m)/2) (t+i0)**(nu-m-1) E_{nu,nu-m}((t+i0)**nu exp(-i pi nu/2) w)``."""
    nu = as_nu(nu).nu
    if m < 0 or int(m) != m:
        raise ValueError(f"m must be a non-negative integer, got {m}")
    m = int(m)
    w, t = np.broadcast_arrays(np.asarray(w, dtype=complex), np.asarray(t, dtype=float))
    pref = np.exp(-0.5j * math.pi * (nu - m)) * i0_power(t, nu - m - 1)
    z = i0_power(t, nu) * np.exp(-0.5j * math.pi * nu) * w
    vals, _ = ml_values(MLOrder(nu, nu - m), z, **ml_kw)
    out = pref * vals
    return complex(out) if np.ndim(out) == 0 else out


def canonical_weight(w: float) -> Callable[[float], float]:
    """Cut weight ``-(w/pi) s**-1/2`` reproducing the ``nu = 1/2`` causal kernel."""
    c = -float(w) / math.pi

    def weight(s):
        return c / np.sqrt(s)

    return weight


def _quad_parts(f, a, b, **kw):
    """Complex QUADPACK integral; returns (value, error, ok)."""
    re = integrate.quad(lambda x: f(x).real, a, b, full_output=1, **kw)
    im = integrate.quad(lambda x: f(x).imag, a, b, full_output=1, **kw)
    ok = len(re) == 3 and len(im) == 3
    return re[0] + 1j * im[0], re[1] + im[1], ok


def _fourier_tail(g, a, t):
    """``int_a^inf g(s) exp(i s t) ds`` for real-valued or complex ``g``."""
    total = 0j
    err = 0.0
    ok = True
    for part, unit in ((lambda s: complex(g(s)).real, 1.0), (lambda s: complex(g(s)).imag, 1j)):
        for wt, ph in (("cos", 1.0), ("sin", 1j)):
            r = integrate.quad(part, a, np.inf, weight=wt, wvar=t, limlst=200,
                               epsabs=1e-13, full_output=1)
            total += unit * ph * r[0]
            err += r[1]
            ok &= len(r) == 3
    return total, err, ok


def offshell_integral(w: float, spectral_weight, t: float, tol: float = OFFSHELL_TOL):
    """``int_0^inf weight(s) exp(i s t) / (s + w**2) ds``.

    The integrand may be integrably singular at ``s = 0``, so the first
    period ``[0, pi/t]`` is done with ``s = u**2`` and adaptive quadrature,
    and the oscillatory tail with a Fourier-weight rule.
    """
    w2 = float(w) ** 2

    def f(s):
        return spectral_weight(s) / (s + w2)

    a = math.pi / t
    ua = math.sqrt(a)
    # in u = sqrt(s) the denominator puts structure at scale |w|
    pts = [p for p in (abs(w), 10.0 * abs(w), 100.0 * abs(w)) if 0.0 < p < ua] or None
    head, e1, ok1 = _quad_parts(lambda u: f(u * u) * 2.0 * u * np.exp(1j * u * u * t),
                                0.0, ua, limit=200, epsabs=1e-13, epsrel=1e-12, points=pts)
    tail, e2, ok2 = _fourier_tail(f, a, t)
    value = head + tail
    err = e1 + e2
    if not (ok1 and ok2) or not np.isfinite(value) or err > tol:
        raise QuadratureFailure(f"off-shell integral at w={w}, t={t}: error estimate {err:.3g}",
                                value, err)
    return value


def branch_decomposition_half(w: float, spectral_weight=None, t: float = 1.0, *,
                              onshell_amplitude: float = ONSHELL_AMPLITUDE,
                              tol: float = OFFSHELL_TOL):
    """Pole and cut parts of the ``nu = 1/2`` kernel at mode frequency ``w``.

    Returns ``(onshell, offshell)`` with ``onshell = onshell_amplitude *
    exp(-i w**2 t)`` and ``offshell`` the cut integral against
    ``spectral_weight`` (the canonical weight when ``None``). With the
    defaults the two sum to ``causal_kernel(1/2, w, t)``.
    """
    w = float(w)
    t = float(t)
    if t <= 0:
        raise NegativeTime("branch decomposition needs t > 0")
    if w < 0 or (w == 0 and spectral_weight is not None):
        raise ValueError("w must be > 0")
    onshell = onshell_amplitude * np.exp(-1j * w * w * t)
    if w == 0:
        # limit w -> 0+ of the canonical cut integral
        return complex(onshell), -1.0 + 0j
    weight = canonical_weight(w) if spectral_weight is None else spectral_weight
    return complex(onshell), complex(offshell_integral(w, weight, t, tol))
