"""Retarded, advanced and Wheeler Green functions as momentum-space multipliers.

The retarded multiplier for ``t > 0`` is

    (1/2pi) exp(-i pi nu/2) t**(nu-1) E_{nu,nu}(exp(-i pi nu/2) t**nu beta2 k**2)

the advanced one for ``t < 0`` is

    (1/2pi) exp(-i pi (nu/2 - 1)) |t|**(nu-1) E_{nu,nu}(exp(i pi nu/2) |t|**nu beta2 k**2)

and the Wheeler multiplier is their average. Green functions are only ever
paired with rapidly decreasing spectra, never sampled pointwise in ``x``.
"""

from __future__ import annotations

import enum
import math

import numpy as np

from .errors import SingularAtZero, ZeroTimeSeparation
from .free_particle import MomentumSpectrum, SpaceTimeField
from .mittag_leffler import MLOrder, ml_values
from .scales import Scales, as_nu, beta_sq


class GreenKind(enum.Enum):
    Retarded = "retarded"
    Advanced = "advanced"
    Wheeler = "wheeler"


def as_kind(kind) -> GreenKind:
    if isinstance(kind, GreenKind):
        return kind
    return GreenKind(str(kind).lower())


def _one_sided(nu: complex, t: np.ndarray, k: np.ndarray, b2: complex, retarded: bool, ml_kw):
    """Retarded (``t > 0``) or advanced (``t < 0``) multiplier; zero off support."""
    on = t > 0 if retarded else t < 0
    at = np.where(on, np.abs(t), 1.0)
    log_t = np.log(at)
    if retarded:
        pref = np.exp(-0.5j * math.pi * nu) / (2.0 * math.pi)
        rot = np.exp(-0.5j * math.pi * nu)
    else:
        pref = np.exp(-1j * math.pi * (0.5 * nu - 1.0)) / (2.0 * math.pi)
        rot = np.exp(0.5j * math.pi * nu)
    z = np.where(on, rot * np.exp(nu * log_t) * b2 * k * k, 0.0)
    vals, _ = ml_values(MLOrder(nu, nu), z, **ml_kw)
    out = pref * np.exp((nu - 1.0) * log_t) * vals
    return np.where(on, out, 0.0)


def green_kernel_k(kind, nu, t, k, s: Scales = Scales(), **ml_kw):
    """Momentum-space Green multiplier; broadcasts over ``t`` and ``k``.

    At ``t = 0`` the multiplier is singular or ambiguous for ``Re(nu) <= 1``
    (``SingularAtZero``) and vanishes for ``Re(nu) > 1``.
    """
    kind = as_kind(kind)
    nu = as_nu(nu).nu
    t, k = np.broadcast_arrays(np.asarray(t, dtype=float), np.asarray(k, dtype=float))
    if np.any(t == 0) and nu.real <= 1:
        raise SingularAtZero(f"Green multiplier at t = 0 needs Re(nu) > 1, got nu = {nu}")
    b2 = beta_sq(nu, s)
    if kind is GreenKind.Retarded:
        out = _one_sided(nu, t, k, b2, True, ml_kw)
    elif kind is GreenKind.Advanced:
        out = _one_sided(nu, t, k, b2, False, ml_kw)
    else:
        out = 0.5 * (_one_sided(nu, t, k, b2, True, ml_kw) + _one_sided(nu, t, k, b2, False, ml_kw))
    return complex(out) if out.ndim == 0 else out


def apply_green(kind, nu, spec: MomentumSpectrum, t_values, x_values, s: Scales = Scales(),
                **ml_kw) -> SpaceTimeField:
    """Pairing ``dk sum_k G(t, k) a(k) exp(-ikx)`` of the multiplier with a spectrum."""
    t = np.atleast_1d(np.asarray(t_values, dtype=float))
    x = np.atleast_1d(np.asarray(x_values, dtype=float))
    g = np.atleast_2d(green_kernel_k(kind, nu, t[:, None], spec.k_values[None, :], s, **ml_kw))
    coeff = g * spec.amplitudes[None, :] * spec.dk
    return SpaceTimeField(t, x, coeff @ np.exp(-1j * np.outer(spec.k_values, x)))


def _free_propagator(dt: float, dx: float, b2: float) -> complex:
    # principal sqrt of 1/(4 pi i b2 dt) is the branch produced by the Gaussian k-integral
    return np.sqrt(1.0 / (4j * math.pi * b2 * dt)) * np.exp(1j * dx * dx / (4.0 * b2 * dt))


def green_closed_form_nu1(kind, dt: float, dx: float, s: Scales = Scales()) -> complex:
    """Position-space Green functions at ``nu = 1``.

    Retarded ``-i H(dt) K(dt, dx)``, advanced ``i H(-dt) K(dt, dx)`` and
    Wheeler their average, with
    ``K = (1/(4 pi i beta2 dt))**(1/2) exp(i dx**2 / (4 beta2 dt))``.
    """
    kind = as_kind(kind)
    dt = float(dt)
    if dt == 0:
        raise ZeroTimeSeparation("closed forms need dt != 0")
    b2 = beta_sq(1.0, s).real
    k = complex(_free_propagator(dt, float(dx), b2))
    ret = -1j * k if dt > 0 else 0j
    adv = 1j * k if dt < 0 else 0j
    if kind is GreenKind.Retarded:
        return ret
    if kind is GreenKind.Advanced:
        return adv
    return 0.5 * (ret + adv)
