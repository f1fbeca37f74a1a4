"""Time-fractional Schrodinger dynamics.

Mittag-Leffler evaluation, free-particle and infinite-well evolution,
fractional Green functions and the spectral fractional derivative, all in
Planck-scaled dimensionless variables.
"""

from ._backend import NAME as BACKEND
from .errors import (
    BoundaryViolation,
    EdgeDecayViolation,
    FracSchrodingerError,
    GridTooNarrow,
    InvalidOrder,
    NegativeTime,
    NonConvergent,
    NumericalFailure,
    OriginSingularity,
    QuadratureFailure,
    SectorUnsupported,
    SingularAtZero,
    UnsupportedLambda,
    ZeroTimeSeparation,
)
from .frac_calc import (
    SignedSpectrum,
    forward_transform,
    frac_deriv,
    inverse_transform,
    primitive_ambiguity,
)
from .free_particle import (
    GeneralSpectralTerm,
    KGrid,
    MomentumSpectrum,
    SpaceTimeField,
    decompose_half_shell,
    evolve_free,
    evolve_free_general,
    gaussian_packet,
)
from .green import GreenKind, apply_green, green_closed_form_nu1, green_kernel_k
from .kernels import branch_decomposition_half, causal_kernel, general_kernel, i0_power
from .mittag_leffler import (
    Method,
    MLOrder,
    MLResult,
    laplace_identity_residual,
    ml,
    ml_asymptotic,
    ml_series,
    ml_values,
)
from .potential_well import (
    GeneralWellTerm,
    WellSpectrum,
    decompose_half_well,
    evolve_well,
    evolve_well_general,
    project_initial,
)
from .scales import DerivativeOrder, Scales, beta_sq, dispersion_w, well_w

__all__ = [name for name in dir() if not name.startswith("_")]
