"""Planck-scaled parameters and the dispersion quantities built from them.

Everything works in dimensionless Planck units: lengths in ``l_p``, times in
``t_p`` and masses through ``n_m = m / M_p``. With the defaults
``l_p = t_p = 1`` the mode frequency reduces to ``w = k**2 / (2 n_m)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidOrder


@dataclass(frozen=True)
class Scales:
    n_m: float = 1.0
    l_p: float = 1.0
    t_p: float = 1.0

    def __post_init__(self):
        for name in ("n_m", "l_p", "t_p"):
            v = float(getattr(self, name))
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be finite and > 0, got {v}")
            object.__setattr__(self, name, v)


@dataclass(frozen=True)
class DerivativeOrder:
    """Time-derivative order ``nu`` with ``Re(nu) > 0``."""

    nu: complex

    def __post_init__(self):
        v = complex(self.nu)
        if not np.isfinite(v):
            raise InvalidOrder(f"nu must be finite, got {v}")
        if v.real <= 0:
            raise InvalidOrder(f"Re(nu) must be > 0, got {v}")
        object.__setattr__(self, "nu", v)


def as_nu(nu) -> DerivativeOrder:
    return nu if isinstance(nu, DerivativeOrder) else DerivativeOrder(nu)


def _tp_power(nu: DerivativeOrder, s: Scales) -> complex:
    # principal power; t_p > 0 so this is exp(nu log t_p)
    return complex(np.exp(nu.nu * math.log(s.t_p)))


def beta_sq(nu, s: Scales = Scales()) -> complex:
    """``l_p**2 / (2 t_p**nu n_m)``."""
    nu = as_nu(nu)
    return s.l_p**2 / (2.0 * _tp_power(nu, s) * s.n_m)


def dispersion_w(k, nu, s: Scales = Scales()):
    """Mode frequency ``w(k) = beta_sq * k**2``; accepts scalars or arrays."""
    b = beta_sq(nu, s)
    k = np.asarray(k, dtype=float)
    w = b * (k * k)
    return complex(w) if np.ndim(w) == 0 else w


def well_w(n, width: float, nu, s: Scales = Scales()):
    """Well-mode frequency ``(n pi l_p / width)**2 / (2 n_m t_p**nu)``."""
    if width <= 0:
        raise ValueError(f"width must be > 0, got {width}")
    n_arr = np.asarray(n)
    if np.any(n_arr < 1) or not np.all(np.equal(np.mod(n_arr, 1), 0)):
        raise ValueError("mode index n must be a positive integer")
    q = math.pi / width
    w = beta_sq(nu, s) * q * q * (n_arr.astype(float) ** 2)
    return complex(w) if np.ndim(w) == 0 else w
