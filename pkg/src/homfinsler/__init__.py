"""Curvature of reductive homogeneous Finsler spaces with (alpha, beta)-metrics.

The package computes the S-curvature and the mean Berwald curvature at the
origin of a reductive homogeneous space described by Lie-algebra structure
constants, for metrics F = alpha * phi(beta/alpha).  Closed-form evaluation
routes for the infinite-series and exponential profiles are cross-checked
against a generic route and numerical oracles.
"""

from .algebra import (
    CheckResult,
    InvariantVector,
    OriginTensors,
    ReductiveModel,
    StructureConstants,
    ValidationReport,
    bracket_m,
    build_model,
    christoffel_origin,
    orthonormal_frame,
    origin_tensors,
    s0_r00,
    validate_model,
)
from .catalog import CatalogEntry, get as catalog_get, names as catalog_names
from .curvature import (
    BerwaldWorkspace,
    CoefficientBundle,
    CurvatureSample,
    IsotropyReport,
    TranscriptionAudit,
    berwald_workspace,
    coefficients_exponential,
    coefficients_generic,
    coefficients_infinite_series,
    curvature_sample,
    isotropy_test,
    mean_berwald,
    s_curvature,
    s_curvature_via_tensors,
    transcription_audit,
    unit_directions,
)
from .errors import (
    ConfigError,
    DomainError,
    FinslerError,
    QuadratureError,
    SingularityError,
    ValidatedModeError,
)
from .metrics import MetricSpec, PhiFamily, ShenReport, finsler_norm, phi_family, shen_check
from .volume import VolumeCoefficients, t_function, volume_coefficient, volume_coefficients

__version__ = "0.1.0"

__all__ = [
    "BerwaldWorkspace",
    "CatalogEntry",
    "CheckResult",
    "CoefficientBundle",
    "ConfigError",
    "CurvatureSample",
    "DomainError",
    "FinslerError",
    "InvariantVector",
    "IsotropyReport",
    "MetricSpec",
    "OriginTensors",
    "PhiFamily",
    "QuadratureError",
    "ReductiveModel",
    "ShenReport",
    "SingularityError",
    "StructureConstants",
    "TranscriptionAudit",
    "ValidatedModeError",
    "ValidationReport",
    "VolumeCoefficients",
    "berwald_workspace",
    "bracket_m",
    "build_model",
    "catalog_get",
    "catalog_names",
    "christoffel_origin",
    "coefficients_exponential",
    "coefficients_generic",
    "coefficients_infinite_series",
    "curvature_sample",
    "finsler_norm",
    "isotropy_test",
    "mean_berwald",
    "orthonormal_frame",
    "origin_tensors",
    "phi_family",
    "s0_r00",
    "s_curvature",
    "s_curvature_via_tensors",
    "shen_check",
    "t_function",
    "transcription_audit",
    "unit_directions",
    "validate_model",
    "volume_coefficient",
    "volume_coefficients",
]
