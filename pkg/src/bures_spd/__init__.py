"""Bures-Wasserstein geometry of symmetric positive-definite matrices.

Metric, distance, geodesics, exponential and logarithm maps, Levi-Civita
connection, Jacobi fields and curvature, each with an independent
numerical cross-check in :mod:`bures_spd.checks`.
"""

from .connection import (
    VectorField,
    constant_field,
    covariant_derivative,
    covariant_derivative_along,
    identity_field,
    lie_bracket,
    polynomial_field,
    tensor_T,
)
from .curvature import (
    BasisIndex,
    CurvatureReport,
    curvature_report,
    curvature_value,
    scalar_curvature,
    sectional,
    sectional_basis,
)
from .errors import (
    BuresError,
    DegeneracyError,
    DimensionError,
    DomainError,
    NotSPDError,
    NumericError,
)
from .geodesy import (
    UNBOUNDED,
    GeodesicSpec,
    arc_length,
    boundary_distance,
    degenerate_direction,
    exp_map,
    geodesic_ivp,
    geodesic_point,
    geodesic_velocity,
    log_map,
    max_extension,
    radius,
)
from .jacobi import JacobiSpec, jacobi_field, min_jacobi_norm, variation_oracle
from .matcore import (
    Spectrum,
    eig_sym,
    random_orthogonal,
    random_spd,
    random_sym,
    sqrt_product,
    sqrt_spd,
)
from .metric import distance, dsigma, horizontal_lift, inner, norm, project
from .sylvester import GammaResult, gamma, gamma_kron

__version__ = "0.1.0"
