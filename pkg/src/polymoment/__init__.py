"""Certificates, reconstructions, and kernel classification for
truncated Hausdorff moment data on the unit cube.

The library answers four families of questions about a finite tensor of
numbers mu[k], k a multi-index:

* is it completely monotone up to a scanned order (difference-sign scan
  with an exact witness on failure);
* what are its bounded and weak constants, with extremal sign
  assignments as reproducible certificates;
* does it carry Hankel structure, and if so which discrete measure on
  [0, 1] reproduces it through a product of one-variable polynomials;
* interpreted as a two-index covariance datum, is it the restriction of
  a harmonizable-Hausdorff kernel, and is that kernel stationary.

Exact rational arithmetic is the default everywhere; float mode is
opt-in and reports borderline results as indeterminate rather than
guessing.
"""

from .errors import (
    BoundsError,
    BoundViolationError,
    BudgetExceededError,
    DiagonalConsistencyError,
    DimensionError,
    HankelViolationError,
    InputError,
    ModeError,
    PolymomentError,
    SchemaError,
)
from .scalars import (
    FLOAT,
    MODES,
    RATIONAL,
    ComplexRational,
    parse_rational,
    parse_scalar,
    render_scalar,
)
from .indexing import MultiIndex, box_range, multinomial_binom, shell
from .moment_core import (
    BernsteinTensor,
    MomentTensor,
    MonotonicityReport,
    Polynomial,
    bernstein_coefficients,
    bernstein_polynomial,
    check_completely_monotone,
    evaluate_functional,
    forward_difference,
)
from .certifiers import (
    CertificateReport,
    SignAssignment,
    bounded_constant,
    certify_weakly_bounded,
    weak_bound_estimate,
    weak_bound_exact,
    weak_profile,
)
from .polymeasure import (
    DiscreteMeasure,
    DiscretePolymeasure,
    integrate,
    moments,
    random_polymeasure,
    semivariation,
    semivariation_signs,
    variation,
)
from .strong import (
    HankelReport,
    HankelWitness,
    StrongSolution,
    check_hankel,
    diagonal_sequence,
    evaluate_diagonal,
    reconstruct_multivariate,
    reconstruct_univariate,
    solve_strong,
    verify_strong_identity,
)
from .harmonizable import (
    HarmonizableReport,
    KernelSamples,
    KernelValue,
    PSDReport,
    PowerSeries2,
    bimeasure_semivariation_estimate,
    check_positive_definite_bimeasure,
    check_positive_definite_kernel,
    covariance_check,
    fourier_stieltjes,
    kernel_series,
    kernel_series_coefficients,
    moments_from_bimeasure,
    moments_from_kernel,
    sample_kernel,
)
from . import jsonio

__version__ = "0.1.0"

__all__ = [
    "BernsteinTensor",
    "BoundViolationError",
    "BoundsError",
    "BudgetExceededError",
    "CertificateReport",
    "ComplexRational",
    "DiagonalConsistencyError",
    "DimensionError",
    "DiscreteMeasure",
    "DiscretePolymeasure",
    "FLOAT",
    "HankelReport",
    "HankelViolationError",
    "HankelWitness",
    "HarmonizableReport",
    "InputError",
    "KernelSamples",
    "KernelValue",
    "MODES",
    "ModeError",
    "MomentTensor",
    "MonotonicityReport",
    "MultiIndex",
    "PSDReport",
    "PolymomentError",
    "Polynomial",
    "PowerSeries2",
    "RATIONAL",
    "SchemaError",
    "SignAssignment",
    "StrongSolution",
    "bernstein_coefficients",
    "bernstein_polynomial",
    "bimeasure_semivariation_estimate",
    "bounded_constant",
    "box_range",
    "certify_weakly_bounded",
    "check_completely_monotone",
    "check_hankel",
    "check_positive_definite_bimeasure",
    "check_positive_definite_kernel",
    "covariance_check",
    "diagonal_sequence",
    "evaluate_diagonal",
    "evaluate_functional",
    "forward_difference",
    "fourier_stieltjes",
    "integrate",
    "jsonio",
    "kernel_series",
    "kernel_series_coefficients",
    "moments",
    "moments_from_bimeasure",
    "moments_from_kernel",
    "multinomial_binom",
    "parse_rational",
    "parse_scalar",
    "random_polymeasure",
    "reconstruct_multivariate",
    "reconstruct_univariate",
    "render_scalar",
    "sample_kernel",
    "semivariation",
    "semivariation_signs",
    "shell",
    "solve_strong",
    "variation",
    "verify_strong_identity",
    "weak_bound_estimate",
    "weak_bound_exact",
    "weak_profile",
]
