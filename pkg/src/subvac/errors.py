"""Exception types shared across the package."""


class SubvacError(Exception):
    """Base class for all domain errors raised by subvac."""


class NotDiagonalizable(SubvacError):
    """Raised when A <= 2|B|, so no Bogoliubov transform diagonalizes T."""

    def __init__(self, ratio: float):
        self.ratio = ratio
        super().__init__(f"not diagonalizable: 2|B|/A = {ratio:.6g}")


class TruncationInsufficient(SubvacError):
    """Raised when the truncated Fock expansion misses too much norm."""

    def __init__(self, deficit: float, tol: float, n_max: int):
        self.deficit = deficit
        self.tol = tol
        self.n_max = n_max
        super().__init__(
            f"truncation at n_max={n_max} leaves norm deficit {deficit:.3e} > tol {tol:.1e}"
        )


class ConvergenceFailure(SubvacError):
    """Raised when an iterative eigensolver exceeds its iteration cap."""


class QuadratureFailure(SubvacError):
    """Raised when adaptive quadrature cannot reach the requested tolerance."""


class DegenerateWindow(SubvacError):
    """Raised when the vacuum-plus-two family produces no negativity window."""
