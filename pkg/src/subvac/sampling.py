"""Real, even, unit-area sampling functions and their cosine transforms."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy import integrate as sp_integrate

from .errors import QuadratureFailure
from .quadrature import integrate

# quadrature stays this far inside the open support of the bump
_EDGE_INSET = 4.0 * np.finfo(float).eps


class Kind(str, enum.Enum):
    LORENTZIAN = "lorentzian"
    COMPACT_BUMP = "compact_bump"
    TABULATED_EVEN = "tabulated_even"


def _unit_bump(s: np.ndarray) -> np.ndarray:
    """exp(-1/(4 (1/2 + s)(1/2 - s))) on |s| < 1/2, zero elsewhere."""
    s = np.asarray(s, dtype=float)
    inside = np.abs(s) < 0.5
    prod = np.where(inside, (0.5 + s) * (0.5 - s), 1.0)
    return np.where(inside, np.exp(-0.25 / prod), 0.0)


@dataclass(frozen=True, eq=False)
class SamplingFunction:
    """A sampling profile g(t) of characteristic width ``width``.

    ``norm_constant`` is K for the compact bump and 1 otherwise.  Tabulated
    profiles carry their symmetrized, unit-area samples.
    """

    kind: Kind
    width: float
    norm_constant: float = 1.0
    samples_t: np.ndarray | None = field(default=None, repr=False)
    samples_g: np.ndarray | None = field(default=None, repr=False)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        tau = self.width
        if self.kind is Kind.LORENTZIAN:
            return tau / (math.pi * (t * t + tau * tau))
        if self.kind is Kind.COMPACT_BUMP:
            return self.norm_constant / tau * _unit_bump(np.abs(t) / tau)
        return np.interp(np.abs(t), self.samples_t, self.samples_g, right=0.0)

    def transform(self, omega: float) -> float:
        return fourier_transform(self, omega)


def lorentzian(tau: float) -> SamplingFunction:
    """g(t) = tau / (pi (t^2 + tau^2)), with transform exp(-|omega| tau)."""
    if not tau > 0:
        raise ValueError(f"tau must be > 0, got {tau}")
    return SamplingFunction(Kind.LORENTZIAN, float(tau))


def bump_constant() -> float:
    """K making the compact bump integrate to one (independent of tau)."""
    inset = _EDGE_INSET
    area, err = integrate(_unit_bump, -0.5 + inset, 0.5 - inset, abs_tol=1e-13, rel_tol=1e-12)
    if err > 1e-10 * area:
        raise QuadratureFailure(f"normalization integral error {err:.2e} too large")
    return 1.0 / area


def compact_bump(tau: float) -> SamplingFunction:
    """Smooth bump of duration tau: (K/tau) exp(-tau^2 / (4 (tau/2 + t)(tau/2 - t)))."""
    if not tau > 0:
        raise ValueError(f"tau must be > 0, got {tau}")
    return SamplingFunction(Kind.COMPACT_BUMP, float(tau), bump_constant())


def tabulated_even(t, g, width: float | None = None) -> SamplingFunction:
    """Profile from samples, symmetrized about t = 0 and rescaled to unit area.

    ``t`` must be strictly increasing.  The result is stored on |t| and is
    zero beyond the largest |t| given.
    """
    t = np.asarray(t, dtype=float)
    g = np.asarray(g, dtype=float)
    if t.ndim != 1 or t.shape != g.shape or t.size < 2:
        raise ValueError("need matching 1-d arrays with at least two samples")
    if np.any(np.diff(t) <= 0):
        raise ValueError("sample times must be strictly increasing")
    grid = np.unique(np.abs(t))
    if grid[0] != 0.0:
        grid = np.concatenate([[0.0], grid])
    lo, hi = t[0], t[-1]

    def sample(x):
        return np.where((x >= lo) & (x <= hi), np.interp(x, t, g), 0.0)

    # symmetrize; points covered from one side only take that side's value
    plus, minus = sample(grid), sample(-grid)
    both = (grid >= max(lo, -hi)) & (grid <= min(hi, -lo))
    sym = np.where(both, 0.5 * (plus + minus), plus + minus)
    area = 2.0 * np.trapezoid(sym, grid)
    if not area > 0:
        raise ValueError("tabulated profile has non-positive area")
    sym = sym / area
    return SamplingFunction(
        Kind.TABULATED_EVEN,
        float(width if width is not None else grid[-1]),
        1.0,
        grid,
        sym,
    )


def load_tabulated(path: str | Path, width: float | None = None) -> SamplingFunction:
    """Read two whitespace- or comma-separated columns (t, g)."""
    text = Path(path).read_text()
    data = np.loadtxt(text.replace(",", " ").splitlines(), ndmin=2)
    if data.shape[1] != 2:
        raise ValueError(f"expected two columns, got {data.shape[1]}")
    return tabulated_even(data[:, 0], data[:, 1], width)


def lorentzian_transform_by_quadrature(tau: float, omega: float) -> float:
    """Numeric cosine transform of the Lorentzian over the whole real line.

    Independent of the closed form; used to cross-check it.
    """
    omega = abs(omega)

    def half_profile(t):
        return tau / (math.pi * (t * t + tau * tau))

    if omega == 0.0:
        val, err = sp_integrate.quad(half_profile, 0.0, np.inf, epsabs=1e-13, epsrel=1e-13)
    else:
        val, err = sp_integrate.quad(half_profile, 0.0, np.inf, weight="cos", wvar=omega, epsabs=1e-13)
    if err > 1e-10:
        raise QuadratureFailure(f"Lorentzian transform error estimate {err:.2e}")
    return 2.0 * val


def fourier_transform(g: SamplingFunction, omega: float) -> float:
    """Cosine transform of ``g`` at ``omega``; exactly even in omega."""
    omega = abs(float(omega))
    tau = g.width
    if g.kind is Kind.LORENTZIAN:
        return math.exp(-omega * tau)
    if g.kind is Kind.COMPACT_BUMP:
        if omega == 0.0:
            return 1.0
        half = 0.5 * tau * (1.0 - _EDGE_INSET)
        # roughly one panel per half oscillation across the support
        panels = 2 * max(1, math.ceil(omega * tau / math.pi))

        def integrand(t):
            return g(t) * np.cos(omega * t)

        val, _ = integrate(integrand, -half, half, abs_tol=1e-10, panels=panels)
        return val
    t, gs = g.samples_t, g.samples_g
    return float(2.0 * np.trapezoid(gs * np.cos(omega * t), t))


def excess_photons(x: float) -> float:
    """1/(2 sqrt(1 - x)) - 1/2, written to stay accurate for tiny x."""
    if x >= 1.0:
        return math.inf
    s = math.sqrt(1.0 - x)
    return x / (2.0 * s * (1.0 + s))


def mean_photons_lorentzian(tau_over_T: float) -> tuple[float, float]:
    """Lowest-eigenstate photon number for Lorentzian averaging.

    Returns ``(paper_variant, derived_variant)``: the first uses ghat(2 omega)
    = exp(-4 pi tau/T) where the second, consistent with the operator's
    diagonalization, uses its square.
    """
    if not tau_over_T > 0:
        raise ValueError(f"tau_over_T must be > 0, got {tau_over_T}")
    ghat = math.exp(-4.0 * math.pi * tau_over_T)
    return excess_photons(ghat), excess_photons(ghat * ghat)
