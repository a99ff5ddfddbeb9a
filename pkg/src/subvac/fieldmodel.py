"""Squared electric field of one excited mode at a fixed point.

Units follow hbar = c = 1 (Lorentz-Heaviside); ``f_abs2`` sets the field^2
scale and every output here is linear in it.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .core import QuadraticOperator
from .errors import NotDiagonalizable
from .sampling import SamplingFunction, fourier_transform


@dataclass(frozen=True)
class ModeConfig:
    """Mode data at one spatial point: |f|^2, f.f and angular frequency."""

    f_abs2: float
    f_dot_f: complex
    omega: float

    def __post_init__(self):
        object.__setattr__(self, "f_abs2", float(self.f_abs2))
        object.__setattr__(self, "f_dot_f", complex(self.f_dot_f))
        object.__setattr__(self, "omega", float(self.omega))
        if self.f_abs2 < 0:
            raise ValueError(f"f_abs2 must be >= 0, got {self.f_abs2}")
        if not self.omega > 0:
            raise ValueError(f"omega must be > 0, got {self.omega}")
        # Cauchy-Schwarz: |f.f| <= |f|^2
        if abs(self.f_dot_f) > self.f_abs2 * (1.0 + 1e-12):
            raise ValueError(f"|f.f| = {abs(self.f_dot_f)} exceeds |f|^2 = {self.f_abs2}")

    @classmethod
    def real(cls, f2: float, omega: float) -> "ModeConfig":
        """A real mode function, for which f.f = |f|^2 = f^2."""
        return cls(f2, f2, omega)

    @property
    def is_real(self) -> bool:
        return self.f_dot_f.imag == 0.0 and math.isclose(self.f_dot_f.real, self.f_abs2, rel_tol=1e-12)


def _transform_at_double_frequency(mode: ModeConfig, g: SamplingFunction | float) -> float:
    if isinstance(g, SamplingFunction):
        return fourier_transform(g, 2.0 * mode.omega)
    return float(g)


def _require_real(mode: ModeConfig) -> float:
    if not mode.is_real:
        raise ValueError("this operation assumes a real mode function (f.f = |f|^2)")
    return mode.f_abs2


def build_averaged_operator(mode: ModeConfig, g: SamplingFunction | float) -> QuadraticOperator:
    """Time-averaged :E^2: as (A, B) = (2|f|^2, f.f ghat(2 omega)).

    ``g`` may be a sampling function or an already computed ghat(2 omega).
    """
    ghat = _transform_at_double_frequency(mode, g)
    return QuadraticOperator(2.0 * mode.f_abs2, mode.f_dot_f * ghat)


def instant_operator(mode: ModeConfig, t: float) -> QuadraticOperator:
    """:E^2(x, t): at a single instant, which always has A = 2|B| for real f."""
    return QuadraticOperator(2.0 * mode.f_abs2, mode.f_dot_f * cmath.exp(-2j * mode.omega * t))


def instant_e2_squeezed(mode: ModeConfig, r: float, t: float) -> float:
    """<:E^2(x, t):> in the squeezed vacuum with zero squeeze phase."""
    f2 = _require_real(mode)
    sh, ch = math.sinh(r), math.cosh(r)
    return 2.0 * f2 * sh * (sh - ch * math.cos(2.0 * mode.omega * t))


def negativity_interval(r: float, omega: float) -> tuple[float, float]:
    """Times |t| < arccos(tanh r)/(2 omega) where the instant field is negative."""
    if not r > 0:
        raise ValueError(f"r must be > 0, got {r}")
    half = math.acos(math.tanh(r)) / (2.0 * omega)
    return (-half, half)


class LimitRow(NamedTuple):
    r: float
    value: float
    bound_gap: float


def limit_sequence_instant(mode: ModeConfig, r_list: Sequence[float]) -> list[LimitRow]:
    """Instant field at t = 0 along increasing r and its gap above -f^2."""
    f2 = _require_real(mode)
    rs = [float(r) for r in r_list]
    if any(b <= a for a, b in zip(rs, rs[1:])):
        raise ValueError("r_list must be strictly increasing")
    return [LimitRow(r, f2 * math.expm1(-2.0 * r), f2 * math.exp(-2.0 * r)) for r in rs]


def maximal_subvacuum(mode: ModeConfig, g: SamplingFunction | float) -> float:
    """Lowest eigenvalue -f^2 (1 - sqrt(1 - ghat^2)) of the averaged field."""
    f2 = _require_real(mode)
    ghat = _transform_at_double_frequency(mode, g)
    if abs(ghat) >= 1.0:
        raise NotDiagonalizable(abs(ghat))
    g2 = ghat * ghat
    return -f2 * g2 / (1.0 + math.sqrt(1.0 - g2))
