"""Free-particle evolution on a uniform momentum grid.

Convention: ``psi(x) = (1/2pi) int a(k) exp(-ikx) dk``, discretized as
``(1/2pi) dk sum_k``. Spectra decay at the grid edges, so the plain sum
equals the trapezoidal rule.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import GridTooNarrow, NegativeTime, SingularAtZero
from .kernels import branch_decomposition_half, causal_kernel, general_kernel
from .scales import Scales, as_nu, dispersion_w

EDGE_DECAY = 1e-10
MAX_M = 8


@dataclass(frozen=True)
class KGrid:
    k_min: float
    k_max: float
    n_k: int

    def __post_init__(self):
        if self.n_k < 2 or not self.k_max > self.k_min:
            raise ValueError("need n_k >= 2 and k_max > k_min")

    def values(self) -> np.ndarray:
        return np.linspace(self.k_min, self.k_max, self.n_k)


@dataclass(frozen=True, eq=False)
class MomentumSpectrum:
    """Amplitudes ``a(k)`` on a uniform grid.

    A single sample stands for one plane-wave mode with quadrature weight
    ``dk`` (1 unless given).
    """

    k_values: np.ndarray
    amplitudes: np.ndarray
    dk: float | None = None

    def __post_init__(self):
        k = np.asarray(self.k_values, dtype=float).ravel()
        a = np.asarray(self.amplitudes, dtype=complex).ravel()
        if k.size < 1 or k.size != a.size:
            raise ValueError("k_values and amplitudes need equal length >= 1")
        if k.size == 1:
            dk = 1.0 if self.dk is None else float(self.dk)
        else:
            steps = np.diff(k)
            dk = float(steps.mean())
            if dk <= 0 or np.max(np.abs(steps - dk)) > 1e-9 * dk:
                raise ValueError("k grid must be uniform and increasing")
        peak = np.abs(a).max()
        if k.size > 2 and peak > 0 and max(abs(a[0]), abs(a[-1])) >= EDGE_DECAY * peak:
            warnings.warn("spectrum does not decay to 1e-10 of its peak at the grid edges",
                          RuntimeWarning, stacklevel=3)
        object.__setattr__(self, "k_values", k)
        object.__setattr__(self, "amplitudes", a)
        object.__setattr__(self, "dk", dk)

    def scaled(self, c: complex) -> "MomentumSpectrum":
        return MomentumSpectrum(self.k_values, c * self.amplitudes, self.dk)

    def __add__(self, other: "MomentumSpectrum") -> "MomentumSpectrum":
        if not np.array_equal(self.k_values, other.k_values):
            raise ValueError("spectra live on different grids")
        return MomentumSpectrum(self.k_values, self.amplitudes + other.amplitudes, self.dk)


@dataclass(frozen=True)
class GeneralSpectralTerm:
    """Term ``a_m(k) k0**m`` of the general solution."""

    m: int
    spectrum: MomentumSpectrum


@dataclass(frozen=True, eq=False)
class SpaceTimeField:
    """Complex samples ``values[i, j] = psi(t_values[i], x_values[j])``."""

    t_values: np.ndarray
    x_values: np.ndarray
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        t = np.atleast_1d(np.asarray(self.t_values, dtype=float))
        x = np.atleast_1d(np.asarray(self.x_values, dtype=float))
        v = np.asarray(self.values, dtype=complex)
        if v.shape != (t.size, x.size):
            raise ValueError(f"values shape {v.shape} does not match grids ({t.size}, {x.size})")
        object.__setattr__(self, "t_values", t)
        object.__setattr__(self, "x_values", x)
        object.__setattr__(self, "values", v)

    def norm_sq(self) -> np.ndarray:
        """Per-time ``dx * sum |psi|**2`` on a uniform x grid."""
        if self.x_values.size < 2:
            raise ValueError("norm needs at least two x samples")
        dx = float(np.diff(self.x_values).mean())
        return dx * np.sum(np.abs(self.values) ** 2, axis=1)

    def __add__(self, other: "SpaceTimeField") -> "SpaceTimeField":
        return SpaceTimeField(self.t_values, self.x_values, self.values + other.values)


def gaussian_packet(k_center: float, sigma_k: float, x0: float = 0.0,
                    grid: KGrid | None = None) -> MomentumSpectrum:
    """``a(k) = N exp(-(k-kc)**2 / (4 sigma_k**2)) exp(i k x0)``.

    ``N = (sqrt(2 pi) / sigma_k)**(1/2)`` gives unit position-space norm at
    ``nu = 1``. The default grid spans ``kc +- 14 sigma_k`` with 512 points.
    """
    if not sigma_k > 0:
        raise ValueError("sigma_k must be > 0")
    if grid is None:
        grid = KGrid(k_center - 14.0 * sigma_k, k_center + 14.0 * sigma_k, 512)
    k = grid.values()
    edge = np.exp(-max((k[0] - k_center) ** 2, (k[-1] - k_center) ** 2) / (4.0 * sigma_k**2))
    if edge >= EDGE_DECAY:
        raise GridTooNarrow(f"packet edge amplitude {edge:.3g} exceeds {EDGE_DECAY:g} of the peak")
    norm = math.sqrt(math.sqrt(2.0 * math.pi) / sigma_k)
    a = norm * np.exp(-((k - k_center) ** 2) / (4.0 * sigma_k**2) + 1j * k * x0)
    return MomentumSpectrum(k, a)


def _plane_waves(k: np.ndarray, x: np.ndarray) -> np.ndarray:
    return np.exp(-1j * np.outer(k, x))


def _synthesize(weights: np.ndarray, spec: MomentumSpectrum, x: np.ndarray) -> np.ndarray:
    """``(1/2pi) dk sum_k weights[t, k] a(k) exp(-ikx)`` for every t."""
    coeff = weights * spec.amplitudes[None, :] * (spec.dk / (2.0 * math.pi))
    return coeff @ _plane_waves(spec.k_values, x)


def _grid(v) -> np.ndarray:
    return np.atleast_1d(np.asarray(v, dtype=float))


def evolve_free(spec: MomentumSpectrum, nu, t_values, x_values, scales: Scales = Scales(),
                **ml_kw) -> SpaceTimeField:
    """Causal evolution ``(1/2pi) dk sum_k E_nu((-it)**nu w(k)) a(k) exp(-ikx)``, ``t >= 0``."""
    nu = as_nu(nu)
    t = _grid(t_values)
    x = _grid(x_values)
    if np.any(t < 0):
        raise NegativeTime("causal evolution is defined for t >= 0")
    w = dispersion_w(spec.k_values, nu, scales)
    kern = causal_kernel(nu, np.atleast_1d(w)[None, :], t[:, None], **ml_kw)
    return SpaceTimeField(t, x, _synthesize(np.atleast_2d(kern), spec, x))


def evolve_free_general(terms: Sequence[GeneralSpectralTerm], nu, t_values, x_values,
                        scales: Scales = Scales(), max_m: int = MAX_M, **ml_kw) -> SpaceTimeField:
    """General solution ``sum_m (1/2pi) dk sum_k a_m(k) G_m(w(k), t) exp(-ikx)``.

    ``G_m`` is :func:`general_kernel`; the sum over ``m`` is whatever the
    caller supplies, up to ``max_m``.
    """
    nu = as_nu(nu)
    t = _grid(t_values)
    x = _grid(x_values)
    out = np.zeros((t.size, x.size), dtype=complex)
    for term in terms:
        if not 0 <= term.m <= max_m:
            raise ValueError(f"term index m={term.m} outside [0, {max_m}]")
        if np.any(t == 0) and (nu.nu - term.m - 1).real < 0:
            raise SingularAtZero(f"t = 0 on the grid with Re(nu - m - 1) < 0 for m={term.m}")
        w = dispersion_w(term.spectrum.k_values, nu, scales)
        kern = general_kernel(nu, term.m, np.atleast_1d(w)[None, :], t[:, None], **ml_kw)
        out += _synthesize(np.atleast_2d(kern), term.spectrum, x)
    return SpaceTimeField(t, x, out)


def half_mode_parts(w: np.ndarray, t: float):
    """Per-mode ``(onshell, offshell)`` of the ``nu = 1/2`` kernel; equal ``w`` share work."""
    w = np.asarray(w)
    if np.any(np.abs(np.imag(w)) > 1e-14 * np.abs(w)):
        raise ValueError("branch decomposition needs real mode frequencies")
    wr = np.real(w).astype(float)
    uniq, inv = np.unique(wr, return_inverse=True)
    on = np.empty(uniq.size, dtype=complex)
    off = np.empty(uniq.size, dtype=complex)
    for i, wi in enumerate(uniq):
        on[i], off[i] = branch_decomposition_half(wi, None, t)
    return on[inv].reshape(wr.shape), off[inv].reshape(wr.shape)


def decompose_half_shell(spec: MomentumSpectrum, t: float, x_values,
                         scales: Scales = Scales()) -> tuple[SpaceTimeField, SpaceTimeField]:
    """On-shell (pole) and off-shell (cut) parts of the ``nu = 1/2`` field at time ``t``."""
    t = float(t)
    if t <= 0:
        raise NegativeTime("decomposition needs t > 0")
    x = _grid(x_values)
    w = dispersion_w(spec.k_values, 0.5, scales)
    on, off = half_mode_parts(np.atleast_1d(w), t)
    tt = np.array([t])
    return (SpaceTimeField(tt, x, _synthesize(on[None, :], spec, x)),
            SpaceTimeField(tt, x, _synthesize(off[None, :], spec, x)))
