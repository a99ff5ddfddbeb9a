"""Explicit single-mode states and exact expectation values of T in them."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TRUNCATION_TOL,
    BogoliubovTransform,
    QuadraticOperator,
    StateVector,
    lowest_eigenstate,
)
from .errors import DegenerateWindow

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class SqueezeParameter:
    """zeta = r exp(i delta); delta is reduced into [0, 2 pi)."""

    r: float
    delta: float = 0.0

    def __post_init__(self):
        if not self.r >= 0.0:
            raise ValueError(f"squeeze magnitude must be >= 0, got {self.r}")
        object.__setattr__(self, "r", float(self.r))
        object.__setattr__(self, "delta", float(self.delta) % (2.0 * math.pi))

    @property
    def zeta(self) -> complex:
        return cmath.rect(self.r, self.delta)


@dataclass(frozen=True)
class VacuumPlusTwo:
    """(|0> + epsilon |2>)/sqrt(1 + epsilon^2) with real epsilon."""

    epsilon: float

    def __post_init__(self):
        if not math.isfinite(self.epsilon):
            raise ValueError(f"epsilon must be finite, got {self.epsilon}")
        object.__setattr__(self, "epsilon", float(self.epsilon))

    def coeffs(self, n_max: int = 2) -> StateVector:
        c = np.zeros(n_max + 1, dtype=complex)
        c[0] = 1.0
        c[2] = self.epsilon
        return StateVector.normalized(c)


def squeezed_vacuum_coeffs(
    sq: SqueezeParameter, n_max: int, tol: float = DEFAULT_TRUNCATION_TOL
) -> StateVector:
    """Fock expansion of S(zeta)|0>.

    The squeezed vacuum is the b-vacuum for alpha = cosh r and
    beta = -exp(i delta) sinh r, so this defers to ``lowest_eigenstate``.
    """
    bt = BogoliubovTransform(math.cosh(sq.r), -cmath.exp(1j * sq.delta) * math.sinh(sq.r))
    return lowest_eigenstate(bt, n_max, tol)


def mean_photons_squeezed(sq: SqueezeParameter) -> float:
    return math.sinh(sq.r) ** 2


def expect_squeezed(op: QuadraticOperator, sq: SqueezeParameter) -> float:
    sh, ch = math.sinh(sq.r), math.cosh(sq.r)
    cross = (op.b_coeff * cmath.exp(1j * sq.delta)).real
    return sh * (op.a_coeff * sh - 2.0 * ch * cross)


def expect_vacuum_plus_two(op: QuadraticOperator, st: VacuumPlusTwo) -> float:
    """Exact <T> from the matrix elements <0|a^2|2> = sqrt 2 and <2|a^dag a|2> = 2."""
    eps = st.epsilon
    norm2 = 1.0 + eps * eps
    number_part = op.a_coeff * 2.0 * eps * eps
    pair_part = 2.0 * (op.b_coeff * SQRT2 * eps).real
    return (number_part + pair_part) / norm2


def expect_vacuum_plus_two_as_printed(op: QuadraticOperator, st: VacuumPlusTwo) -> float:
    """The bracket ``eps/(1+eps^2) [sqrt2 (B + B*) + 4 eps A]`` as originally printed.

    Kept only for side-by-side comparison; it overstates the number term by a
    factor of two relative to ``expect_vacuum_plus_two``.
    """
    eps = st.epsilon
    return eps / (1.0 + eps * eps) * (SQRT2 * 2.0 * op.b_coeff.real + 4.0 * eps * op.a_coeff)


def mean_photons_vacuum_plus_two(st: VacuumPlusTwo) -> float:
    eps2 = st.epsilon**2
    return 2.0 * eps2 / (1.0 + eps2)


def expect_state(op: QuadraticOperator, psi: StateVector) -> float:
    """<psi|T|psi> over the truncated Fock basis."""
    c = psi.coeffs
    n = np.arange(c.size)
    number_part = op.a_coeff * float(np.sum(n * np.abs(c) ** 2))
    if c.size < 3:
        return number_part
    # <a^2> = sum_n conj(c_{n-2}) sqrt(n(n-1)) c_n
    a2 = np.sum(np.conj(c[:-2]) * np.sqrt(n[2:] * (n[2:] - 1.0)) * c[2:])
    return number_part + 2.0 * (op.b_coeff * a2).real


def negativity_window_epsilon(op: QuadraticOperator) -> tuple[float, float]:
    """Open epsilon interval on which ``expect_vacuum_plus_two`` is negative."""
    re_b = op.b_coeff.real
    if re_b == 0.0:
        raise DegenerateWindow("Re(B) = 0: the vacuum-plus-two family is never negative")
    edge = -SQRT2 * re_b / op.a_coeff
    return (edge, 0.0) if re_b > 0 else (0.0, edge)


def negativity_window_as_printed(op: QuadraticOperator) -> tuple[float, float]:
    """Window from the printed condition |eps| < sqrt2 |B + B*| / (4A)."""
    re_b = op.b_coeff.real
    if re_b == 0.0:
        raise DegenerateWindow("Re(B) = 0: the vacuum-plus-two family is never negative")
    half_width = SQRT2 * abs(2.0 * re_b) / (4.0 * op.a_coeff)
    return (-half_width, 0.0) if re_b > 0 else (0.0, half_width)
