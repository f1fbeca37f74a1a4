"""Spectral fractional derivative on signed (two-sided) Fourier spectra.

A sampled function is split at ``x = 0`` into

    upper(k) =  int_0^inf   f(x) exp(ikx) dx    (analytic for Im k > 0)
    lower(k) = -int_-inf^0  f(x) exp(ikx) dx    (analytic for Im k < 0)

so that ``upper - lower`` is the ordinary transform on the real axis. The
derivative of order ``lambda`` multiplies both by ``(-ik)**lambda`` and the
inverse collapses the contour onto the real axis:
``f(x) = (1/2pi) int (upper - lower) exp(-ikx) dk``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial

from .errors import EdgeDecayViolation, OriginSingularity, UnsupportedLambda

EDGE_DECAY = 1e-10
ORIGIN_TOL = 1e-10
ORIGIN_ORDER = 3


@dataclass(frozen=True, eq=False)
class SignedSpectrum:
    """Boundary values of the split transform on a uniform ``k`` grid.

    ``origin_taylor`` optionally holds the leading Taylor coefficients of
    ``upper - lower`` at ``k = 0``. Negative integer orders use them to fill
    the ``k = 0`` sample with the limit of ``(-ik)**lam * (upper - lower)``.
    """

    k_values: np.ndarray
    upper_amplitudes: np.ndarray
    lower_amplitudes: np.ndarray
    origin_taylor: np.ndarray | None = None

    def __post_init__(self):
        k = np.asarray(self.k_values, dtype=float).ravel()
        up = np.asarray(self.upper_amplitudes, dtype=complex).ravel()
        lo = np.asarray(self.lower_amplitudes, dtype=complex).ravel()
        if not (k.size == up.size == lo.size) or k.size < 2:
            raise ValueError("k_values and both amplitude arrays need equal length >= 2")
        steps = np.diff(k)
        dk = steps.mean()
        if dk <= 0 or np.max(np.abs(steps - dk)) > 1e-9 * dk:
            raise ValueError("k grid must be uniform and increasing")
        object.__setattr__(self, "k_values", k)
        object.__setattr__(self, "upper_amplitudes", up)
        object.__setattr__(self, "lower_amplitudes", lo)
        if self.origin_taylor is not None:
            object.__setattr__(self, "origin_taylor", np.asarray(self.origin_taylor, dtype=complex).ravel())

    @property
    def dk(self) -> float:
        return float(np.diff(self.k_values).mean())

    def ordinary(self) -> np.ndarray:
        """Real-axis transform ``upper - lower``."""
        return self.upper_amplitudes - self.lower_amplitudes


def default_k_grid(x_values) -> np.ndarray:
    """DFT-reciprocal grid ``(j - n//2) * 2pi / (n dx)`` for ``j = 0..n-1``."""
    x = np.asarray(x_values, dtype=float)
    n = x.size
    dx = float(np.diff(x).mean())
    return (np.arange(n) - n // 2) * (2.0 * math.pi / (n * dx))


def _uniform_step(x: np.ndarray) -> float:
    if x.size < 2:
        raise ValueError("need at least two samples")
    steps = np.diff(x)
    dx = float(steps.mean())
    if dx <= 0 or np.max(np.abs(steps - dx)) > 1e-9 * dx:
        raise ValueError("x grid must be uniform and increasing")
    return dx


def forward_transform(x_values, samples, k_values=None) -> SignedSpectrum:
    """Split transform of samples on a uniform ``x`` grid.

    Trapezoidal weights; a sample exactly at ``x = 0`` is shared half and
    half between the two branches.
    """
    x = np.asarray(x_values, dtype=float).ravel()
    f = np.asarray(samples, dtype=complex).ravel()
    if f.size != x.size:
        raise ValueError("samples and x_values differ in length")
    dx = _uniform_step(x)
    peak = np.abs(f).max()
    if peak > 0 and max(abs(f[0]), abs(f[-1])) >= EDGE_DECAY * peak:
        raise EdgeDecayViolation("samples do not decay to 1e-10 of their peak at the grid edges")
    k = default_k_grid(x) if k_values is None else np.asarray(k_values, dtype=float).ravel()
    w_up = np.where(x > 0, dx, np.where(x == 0, 0.5 * dx, 0.0))
    w_lo = np.where(x < 0, dx, np.where(x == 0, 0.5 * dx, 0.0))
    phase = np.exp(1j * np.outer(k, x))
    upper = phase @ (w_up * f)
    lower = -(phase @ (w_lo * f))
    # moments give d^m/dk^m of the full transform at k = 0
    wf = dx * f
    taylor = np.array([np.sum(wf * (1j * x) ** m) / math.factorial(m) for m in range(ORIGIN_ORDER)])
    return SignedSpectrum(k, upper, lower, taylor)


def minus_ik_power(k, lam) -> np.ndarray:
    """Principal ``(-ik)**lam`` for real ``k``; ``-ik = |k| exp(-i pi sgn(k)/2)``.

    At ``k = 0`` the value is 1 for ``lam = 0``, 0 for ``Re(lam) > 0`` and
    NaN otherwise.
    """
    lam = complex(lam)
    k = np.asarray(k, dtype=float)
    nz = k != 0
    log = np.log(np.abs(np.where(nz, k, 1.0))) - 0.5j * math.pi * np.sign(k)
    out = np.exp(lam * log)
    at0 = 1.0 if lam == 0 else (0.0 if lam.real > 0 else np.nan)
    return np.where(nz, out, at0)


def _shift_taylor(taylor, lam: complex):
    """Taylor coefficients at ``k = 0`` after multiplying by ``(-ik)**lam``."""
    if taylor is None or lam.imag != 0 or lam.real != round(lam.real):
        return None
    n = int(lam.real)
    if n >= 0:
        return np.concatenate([np.zeros(n, dtype=complex), (-1j) ** n * taylor])[: taylor.size]
    return (1j) ** (-n) * taylor[-n:]


def frac_deriv(spectrum: SignedSpectrum, lam) -> SignedSpectrum:
    """Multiply both branches by ``(-ik)**lam``; the entire-function term is zero.

    For ``Re(lam) <= 0`` with ``lam != 0`` the ordinary transform must vanish
    at ``k = 0`` (within ``1e-10`` of its peak). The ``k = 0`` sample is then
    the limit of ``(-ik)**lam * (upper - lower)``: finite for ``lam = -1``
    (and ``-2`` when the slope vanishes too) and taken from
    ``origin_taylor``, zero otherwise.
    """
    lam = complex(lam)
    k = spectrum.k_values
    mult = minus_ik_power(k, lam)
    up = spectrum.upper_amplitudes * np.where(k == 0, 1.0, mult)
    lo = spectrum.lower_amplitudes * np.where(k == 0, 1.0, mult)
    taylor = spectrum.origin_taylor
    origin = k == 0
    if origin.any() and lam != 0:
        limit = 0.0
        if lam.real <= 0:
            full = spectrum.ordinary()
            peak = np.abs(full).max()
            if np.any(np.abs(full[origin]) > ORIGIN_TOL * peak):
                raise OriginSingularity(f"spectrum does not vanish at k = 0 for lambda = {lam}")
            n = -int(lam.real) if lam.imag == 0 and lam.real == round(lam.real) else 0
            if n and taylor is not None and taylor.size > n:
                # the m-th coefficient is a moment of size peak * length**m
                length = 2.0 * math.pi / spectrum.dk
                scale = peak * length ** np.arange(n)
                if np.all(np.abs(taylor[:n]) <= ORIGIN_TOL * scale):
                    limit = (1j) ** n * taylor[n]
        # split so that upper - lower carries the limit
        up[origin] = 0.5 * limit
        lo[origin] = -0.5 * limit
    return SignedSpectrum(k, up, lo, _shift_taylor(taylor, lam))


def inverse_transform(spectrum: SignedSpectrum, x_values) -> np.ndarray:
    """``(1/2pi) dk sum_k (upper - lower) exp(-ikx)``."""
    x = np.atleast_1d(np.asarray(x_values, dtype=float))
    coeff = spectrum.ordinary() * (spectrum.dk / (2.0 * math.pi))
    return np.exp(-1j * np.outer(x, spectrum.k_values)) @ coeff


def primitive_ambiguity(lam, entire_coefficients) -> Polynomial:
    """Ambiguity term ``int_Gamma (-ik)**lam a(k) exp(-ikx) dk`` as a polynomial in ``x``.

    ``entire_coefficients`` are Taylor coefficients ``a_0, a_1, ...`` of the
    entire function at ``k = 0``. The contour runs left to right above the
    real axis and right to left below it, so it encircles ``k = 0``
    clockwise. With ``lam = -n`` the residue gives

        i**n (-2 pi i) sum_j a_j (-ix)**(n-1-j) / (n-1-j)!

    which is ``2 pi a_0`` for ``n = 1`` and ``2 pi i a_1 + 2 pi a_0 x`` for
    ``n = 2``.
    """
    lam_c = complex(lam)
    if lam_c.imag != 0 or lam_c.real not in (-1.0, -2.0):
        raise UnsupportedLambda(f"ambiguity term is provided for lambda in {{-1, -2}}, got {lam}")
    n = int(-lam_c.real)
    a = np.zeros(n, dtype=complex)
    given = np.asarray(entire_coefficients, dtype=complex).ravel()[:n]
    a[: given.size] = given
    pref = (1j**n) * (-2j * math.pi)
    coef = np.zeros(n, dtype=complex)
    for j in range(n):
        p = n - 1 - j
        coef[p] += pref * a[j] * (-1j) ** p / math.factorial(p)
    return Polynomial(coef)
