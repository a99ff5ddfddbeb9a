"""Closed-form algebra for single-mode quadratic operators.

The operator is ``T = A a^dag a + B a^2 + B* (a^dag)^2`` with ``A > 0`` real and
``B`` complex.  A Bogoliubov transform ``a = alpha b + beta b^dag`` brings it to
``T = Omega b^dag b + lambda0`` whenever ``A > 2|B|``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import NotDiagonalizable, TruncationInsufficient

DEFAULT_TRUNCATION_TOL = 1e-10


@dataclass(frozen=True)
class QuadraticOperator:
    """The pair (A, B) defining ``T = A a^dag a + B a^2 + B* (a^dag)^2``."""

    a_coeff: float
    b_coeff: complex = 0j

    def __post_init__(self):
        a = float(self.a_coeff)
        b = complex(self.b_coeff)
        if not math.isfinite(a) or a <= 0.0:
            raise ValueError(f"a_coeff must be finite and > 0, got {self.a_coeff!r}")
        if not (math.isfinite(b.real) and math.isfinite(b.imag)):
            raise ValueError(f"b_coeff must be finite, got {self.b_coeff!r}")
        object.__setattr__(self, "a_coeff", a)
        object.__setattr__(self, "b_coeff", b)

    @property
    def coupling_ratio(self) -> float:
        """2|B|/A; the operator is diagonalizable iff this is below 1."""
        return 2.0 * abs(self.b_coeff) / self.a_coeff

    @property
    def discriminant(self) -> float:
        return self.a_coeff**2 - 4.0 * abs(self.b_coeff) ** 2


@dataclass(frozen=True)
class BogoliubovTransform:
    """Coefficients of ``a = alpha b + beta b^dag`` with alpha real positive."""

    alpha: float
    beta: complex

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        if self.alpha < 1.0:
            raise ValueError(f"alpha must be >= 1, got {self.alpha}")
        defect = self.alpha**2 - abs(self.beta) ** 2 - 1.0
        if abs(defect) > 1e-12 * self.alpha**2:
            raise ValueError(f"alpha^2 - |beta|^2 = 1 violated by {defect:.3e}")

    @property
    def ratio(self) -> complex:
        """beta/alpha, the geometric ratio of the even Fock coefficients."""
        return self.beta / self.alpha


@dataclass(frozen=True)
class Spectrum:
    """Ladder ``lambda_n = n * omega + lambda0``."""

    omega: float
    lambda0: float

    def eigenvalue(self, n: int) -> float:
        return eigenvalue(self, n)


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized coefficients c_0..c_{n_max} in the truncated a-Fock basis.

    ``deficit`` records how much norm was missing over the truncated basis
    before renormalization (zero for states built exactly in the basis).
    """

    coeffs: np.ndarray
    n_max: int
    deficit: float = 0.0

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 1 or c.size != self.n_max + 1:
            raise ValueError(f"expected {self.n_max + 1} coefficients, got shape {c.shape}")
        norm2 = float(np.vdot(c, c).real)
        if abs(norm2 - 1.0) > 1e-10:
            raise ValueError(f"state not normalized: sum |c_n|^2 = {norm2!r}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def normalized(cls, coeffs, deficit: float = 0.0) -> "StateVector":
        c = np.asarray(coeffs, dtype=complex)
        norm = np.sqrt(np.vdot(c, c).real)
        if norm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return cls(c / norm, c.size - 1, deficit)

    @classmethod
    def fock(cls, n: int, n_max: int) -> "StateVector":
        c = np.zeros(n_max + 1, dtype=complex)
        c[n] = 1.0
        return cls(c, n_max)

    def padded(self, n_max: int) -> np.ndarray:
        """Coefficients zero-padded (never truncated) to length n_max + 1."""
        if n_max < self.n_max:
            raise ValueError("padding cannot shrink a state")
        out = np.zeros(n_max + 1, dtype=complex)
        out[: self.n_max + 1] = self.coeffs
        return out

    def overlap(self, other: "StateVector") -> complex:
        """<self|other> over the larger of the two truncations."""
        n = max(self.n_max, other.n_max)
        return complex(np.vdot(self.padded(n), other.padded(n)))

    def mean_photon_number(self) -> float:
        n = np.arange(self.n_max + 1)
        return float(np.sum(n * np.abs(self.coeffs) ** 2))


def _require_diagonalizable(op: QuadraticOperator) -> float:
    disc = op.discriminant
    # exact comparison: equality is the non-diagonalizable boundary
    if disc <= 0.0:
        raise NotDiagonalizable(op.coupling_ratio)
    return math.sqrt(disc)


def diagonalize(op: QuadraticOperator) -> tuple[BogoliubovTransform, Spectrum]:
    """Return the Bogoliubov transform and spectrum of ``op``.

    Uses the gauge with alpha real positive, so ``arg(beta) = pi - arg(B)``.
    Raises NotDiagonalizable when ``A <= 2|B|``.
    """
    omega = _require_diagonalizable(op)
    a = op.a_coeff
    b_abs = abs(op.b_coeff)
    if b_abs == 0.0:
        return BogoliubovTransform(1.0, 0j), Spectrum(omega=a, lambda0=0.0)
    # (A - Omega) rewritten as 4|B|^2 / (A + Omega) to avoid cancellation at small |B|
    beta_abs2 = 2.0 * b_abs**2 / (omega * (a + omega))
    beta = -math.sqrt(beta_abs2) * (op.b_coeff.conjugate() / b_abs)
    alpha = math.sqrt(1.0 + beta_abs2)
    lambda0 = -2.0 * b_abs**2 / (a + omega)
    return BogoliubovTransform(alpha, beta), Spectrum(omega=omega, lambda0=lambda0)


def eigenvalue(spec: Spectrum, n: int) -> float:
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    return n * spec.omega + spec.lambda0


def lowest_eigenstate(
    bt: BogoliubovTransform, n_max: int, tol: float = DEFAULT_TRUNCATION_TOL
) -> StateVector:
    """Fock expansion of the b-vacuum, truncated at ``n_max``.

    Only even levels are populated.  The double-factorial ratio
    (2n-1)!!/(2n)!! is accumulated as a running product so large ``n_max``
    never overflows.  Raises TruncationInsufficient if the norm missing from
    the truncated basis exceeds ``tol``.
    """
    if n_max < 2 or n_max % 2:
        raise ValueError(f"n_max must be even and >= 2, got {n_max}")
    ratio = bt.ratio
    if abs(ratio) >= 1.0:
        raise ValueError(f"|beta/alpha| must be < 1, got {abs(ratio)}")

    coeffs = np.zeros(n_max + 1, dtype=complex)
    c0 = 1.0 / math.sqrt(bt.alpha)
    coeffs[0] = c0
    dfact = 1.0
    power = 1.0 + 0j
    for n in range(1, n_max // 2 + 1):
        dfact *= (2 * n - 1) / (2 * n)
        power *= ratio
        coeffs[2 * n] = math.sqrt(dfact) * power * c0

    deficit = 1.0 - float(np.vdot(coeffs, coeffs).real)
    if deficit > tol:
        raise TruncationInsufficient(deficit, tol, n_max)
    return StateVector.normalized(coeffs, deficit=deficit)


def mean_photon_number(op: QuadraticOperator) -> float:
    """Mean photon number ``A/(2 Omega) - 1/2`` of the lowest eigenstate."""
    omega = _require_diagonalizable(op)
    b_abs2 = abs(op.b_coeff) ** 2
    return 2.0 * b_abs2 / (omega * (op.a_coeff + omega))


def qi_bound(op: QuadraticOperator) -> float:
    """Strict lower bound -A/2 on <T> over all single-mode states."""
    return -0.5 * op.a_coeff


def double_factorial_series(x: float, n_terms: int) -> float:
    """Partial sum ``1 + sum_{n=1}^{n_terms} (2n-1)!!/(2n)!! x^(2n)``.

    Converges to ``1/sqrt(1 - x^2)`` for ``|x| < 1``.
    """
    total = 1.0
    term = 1.0
    x2 = x * x
    for n in range(1, n_terms + 1):
        term *= x2 * (2 * n - 1) / (2 * n)
        total += term
    return total


def beta_phase(bt: BogoliubovTransform) -> float:
    return cmath.phase(bt.beta) if bt.beta != 0 else 0.0
