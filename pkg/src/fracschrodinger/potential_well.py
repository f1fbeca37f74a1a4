"""Infinite-well dynamics on ``[0, width]`` in the sine eigenbasis.

Modes are indexed from ``n = 1``; mode ``n`` has profile
``sin(n pi x / width)`` and frequency :func:`scales.well_w`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import BoundaryViolation, NegativeTime, SingularAtZero
from .free_particle import MAX_M, SpaceTimeField, half_mode_parts
from .kernels import causal_kernel, general_kernel
from .scales import Scales, as_nu, well_w

DEFAULT_MODES = 32
MAX_N = 4096
BOUNDARY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class WellSpectrum:
    """Width and coefficients ``a_n`` for ``n = 1..N`` (``coefficients[n-1]``)."""

    width: float
    coefficients: np.ndarray

    def __post_init__(self):
        w = float(self.width)
        if not (math.isfinite(w) and w > 0):
            raise ValueError(f"width must be finite and > 0, got {self.width}")
        c = np.atleast_1d(np.asarray(self.coefficients, dtype=complex)).ravel()
        if c.size < 1:
            raise ValueError("need at least one mode coefficient")
        object.__setattr__(self, "width", w)
        object.__setattr__(self, "coefficients", c)

    @property
    def n_values(self) -> np.ndarray:
        return np.arange(1, self.coefficients.size + 1)


@dataclass(frozen=True)
class GeneralWellTerm:
    """Coefficient ``a_nm`` of ``sin(n pi x/width) G_m(w_n, t)``."""

    n: int
    m: int
    coefficient: complex

    def __post_init__(self):
        if not 1 <= self.n <= MAX_N:
            raise ValueError(f"mode index n={self.n} outside [1, {MAX_N}]")
        if not 0 <= self.m <= MAX_M:
            raise ValueError(f"term index m={self.m} outside [0, {MAX_M}]")


def mode_profiles(n_values, x_values, width: float) -> np.ndarray:
    """``sin(n pi x / width)`` as an ``(n, x)`` matrix, exactly zero at the walls."""
    n = np.asarray(n_values, dtype=float)
    x = np.asarray(x_values, dtype=float)
    prof = np.sin(np.outer(n, x) * (math.pi / width))
    wall = (x == 0) | (x == width)
    prof[:, wall] = 0.0
    return prof


def _x_grid(x_values, width: float) -> np.ndarray:
    x = np.atleast_1d(np.asarray(x_values, dtype=float))
    if np.any(x < 0) or np.any(x > width):
        raise ValueError("x_values must lie inside [0, width]")
    return x


def project_initial(samples, width: float, n_modes: int = DEFAULT_MODES) -> WellSpectrum:
    """``a_n = (2/width) int_0^width psi(x) sin(n pi x/width) dx`` by the trapezoidal rule.

    ``samples`` are taken on the uniform grid ``linspace(0, width, len(samples))``.
    """
    psi = np.asarray(samples, dtype=complex).ravel()
    if psi.size < 3:
        raise ValueError("need at least three samples")
    if n_modes < 1:
        raise ValueError("n_modes must be >= 1")
    peak = np.abs(psi).max()
    if peak > 0 and max(abs(psi[0]), abs(psi[-1])) >= BOUNDARY_TOL * peak:
        raise BoundaryViolation("samples must vanish at both walls")
    x = np.linspace(0.0, width, psi.size)
    dx = width / (psi.size - 1)
    # walls carry zero weight because the profiles vanish there
    prof = mode_profiles(np.arange(1, n_modes + 1), x, width)
    coef = (2.0 / width) * dx * (prof @ psi)
    return WellSpectrum(width, coef)


def evolve_well(ws: WellSpectrum, nu, t_values, x_values, scales: Scales = Scales(),
                **ml_kw) -> SpaceTimeField:
    """``psi(t, x) = sum_n a_n sin(n pi x/width) E_nu((-it)**nu w_n)`` for ``t >= 0``."""
    nu = as_nu(nu)
    t = np.atleast_1d(np.asarray(t_values, dtype=float))
    if np.any(t < 0):
        raise NegativeTime("causal well evolution is defined for t >= 0")
    x = _x_grid(x_values, ws.width)
    n = ws.n_values
    w = np.atleast_1d(well_w(n, ws.width, nu, scales))
    kern = np.atleast_2d(causal_kernel(nu, w[None, :], t[:, None], **ml_kw))
    vals = (kern * ws.coefficients[None, :]) @ mode_profiles(n, x, ws.width)
    return SpaceTimeField(t, x, vals)


def evolve_well_general(terms: Sequence[GeneralWellTerm], nu, t_values, x_values, width: float,
                        scales: Scales = Scales(), **ml_kw) -> SpaceTimeField:
    """``psi(t, x) = sum a_nm sin(n pi x/width) G_m(w_n, t)`` with :func:`general_kernel`."""
    nu = as_nu(nu)
    t = np.atleast_1d(np.asarray(t_values, dtype=float))
    x = _x_grid(x_values, width)
    vals = np.zeros((t.size, x.size), dtype=complex)
    for term in terms:
        if np.any(t == 0) and (nu.nu - term.m - 1).real < 0:
            raise SingularAtZero(f"t = 0 on the grid with Re(nu - m - 1) < 0 for m={term.m}")
        w = well_w(term.n, width, nu, scales)
        kern = np.atleast_1d(general_kernel(nu, term.m, w, t, **ml_kw))
        vals += np.outer(term.coefficient * kern, mode_profiles([term.n], x, width)[0])
    return SpaceTimeField(t, x, vals)


def decompose_half_well(ws: WellSpectrum, t: float, x_values,
                        scales: Scales = Scales()) -> tuple[SpaceTimeField, SpaceTimeField]:
    """On-shell and off-shell parts of the ``nu = 1/2`` well field at time ``t``."""
    t = float(t)
    if t <= 0:
        raise NegativeTime("decomposition needs t > 0")
    x = _x_grid(x_values, ws.width)
    n = ws.n_values
    on, off = half_mode_parts(np.atleast_1d(well_w(n, ws.width, 0.5, scales)), t)
    prof = mode_profiles(n, x, ws.width)
    tt = np.array([t])
    return (SpaceTimeField(tt, x, ((on * ws.coefficients) @ prof)[None, :]),
            SpaceTimeField(tt, x, ((off * ws.coefficients) @ prof)[None, :]))
