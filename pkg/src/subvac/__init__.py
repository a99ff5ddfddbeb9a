"""Optimal subvacuum bounds for single-mode quadratic field operators."""

from .core import (
    BogoliubovTransform,
    QuadraticOperator,
    Spectrum,
    StateVector,
    diagonalize,
    eigenvalue,
    lowest_eigenstate,
    mean_photon_number,
    qi_bound,
)
from .errors import (
    ConvergenceFailure,
    DegenerateWindow,
    NotDiagonalizable,
    QuadratureFailure,
    SubvacError,
    TruncationInsufficient,
)

__all__ = [
    "BogoliubovTransform",
    "QuadraticOperator",
    "Spectrum",
    "StateVector",
    "diagonalize",
    "eigenvalue",
    "lowest_eigenstate",
    "mean_photon_number",
    "qi_bound",
    "ConvergenceFailure",
    "DegenerateWindow",
    "NotDiagonalizable",
    "QuadratureFailure",
    "SubvacError",
    "TruncationInsufficient",
]

__version__ = "0.1.0"
