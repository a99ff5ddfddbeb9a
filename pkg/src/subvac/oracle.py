"""Brute-force check of the closed forms via truncated Fock-space matrices.

T couples level n only to n +- 2, so it splits into an even and an odd block,
each tridiagonal.  The gauge a -> exp(i arg(B)/2) a makes both blocks real
symmetric.  Eigenvalues come from Sturm-sequence bisection and the ground
vector from shifted inverse iteration; nothing here uses the closed-form
diagonalization in ``core`` (``convergence_study`` uses it only to report
errors).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Literal, NamedTuple, Sequence

import numpy as np

from .config import DEFAULTS
from .core import QuadraticOperator, StateVector, diagonalize
from .errors import ConvergenceFailure

Parity = Literal["even", "odd"]

_EPS = np.finfo(float).eps
_TINY = np.finfo(float).tiny
# bisection halvings: 4*norm * 2**-100 is far below eps*norm
BISECTION_CAP = 100


@dataclass(frozen=True)
class FockMatrix:
    """T in the truncated basis |0>..|n_max>, stored as two diagonals.

    ``diag[n] = A n`` and ``lower[n] = B* sqrt((n+1)(n+2))`` is the entry
    <n+2|T|n>; the entry <n|T|n+2> is its conjugate.
    """

    dimension: int
    a_coeff: float
    b_coeff: complex

    @classmethod
    def from_operator(cls, op: QuadraticOperator, n_max: int) -> "FockMatrix":
        return cls(n_max + 1, op.a_coeff, op.b_coeff)

    @property
    def diag(self) -> np.ndarray:
        return self.a_coeff * np.arange(self.dimension, dtype=float)

    @property
    def lower(self) -> np.ndarray:
        n = np.arange(max(self.dimension - 2, 0), dtype=float)
        return self.b_coeff.conjugate() * np.sqrt((n + 1.0) * (n + 2.0))

    def dense(self) -> np.ndarray:
        m = np.diag(self.diag).astype(complex)
        low = self.lower
        idx = np.arange(low.size)
        m[idx + 2, idx] = low
        m[idx, idx + 2] = low.conjugate()
        return m


@dataclass(frozen=True, eq=False)
class SectorTridiagonal:
    """Real symmetric tridiagonal block of one parity, in the real gauge.

    ``levels`` are the Fock indices of the rows; ``gauge_angle`` is arg(B),
    needed to undo the gauge on eigenvectors.
    """

    parity: Parity
    diag: np.ndarray
    offdiag: np.ndarray
    levels: np.ndarray
    gauge_angle: float = 0.0

    @property
    def dimension(self) -> int:
        return self.diag.size

    @property
    def norm_bound(self) -> float:
        """Infinity-norm bound, used to scale tolerances."""
        e = np.abs(self.offdiag)
        row = np.abs(self.diag).copy()
        row[:-1] += e
        row[1:] += e
        return float(row.max()) if row.size else 0.0

    def matvec(self, x: np.ndarray) -> np.ndarray:
        y = self.diag * x
        y[:-1] += self.offdiag * x[1:]
        y[1:] += self.offdiag * x[:-1]
        return y


def build_sector(op: QuadraticOperator, parity: Parity, n_max: int) -> SectorTridiagonal:
    """Even or odd block of T over Fock levels 0..n_max."""
    if parity not in ("even", "odd"):
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    first = 0 if parity == "even" else 1
    if n_max < first:
        raise ValueError(f"n_max={n_max} leaves the {parity} sector empty")
    levels = np.arange(first, n_max + 1, 2)
    diag = op.a_coeff * levels.astype(float)
    lv = levels[:-1].astype(float)
    offdiag = abs(op.b_coeff) * np.sqrt((lv + 1.0) * (lv + 2.0))
    angle = cmath.phase(op.b_coeff) if op.b_coeff != 0 else 0.0
    return SectorTridiagonal(parity, diag, offdiag, levels, angle)


def _sturm_counts(diag: np.ndarray, off2: np.ndarray, x: np.ndarray, pivmin: float) -> np.ndarray:
    """Number of eigenvalues strictly below each shift in ``x``."""
    q = diag[0] - x
    q = np.where(np.abs(q) < pivmin, -pivmin, q)
    count = (q < 0).astype(int)
    for i in range(1, diag.size):
        q = (diag[i] - x) - off2[i - 1] / q
        q = np.where(np.abs(q) < pivmin, -pivmin, q)
        count += q < 0
    return count


def solve_spectrum(t: SectorTridiagonal, k: int, max_iter: int = BISECTION_CAP) -> list[float]:
    """The ``k`` smallest eigenvalues of ``t``, ascending, by bisection."""
    n = t.dimension
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n}, got {k}")
    if n == 1 or not np.any(t.offdiag):
        return [float(v) for v in np.sort(t.diag)[:k]]
    e = np.abs(t.offdiag)
    radius = np.zeros(n)
    radius[:-1] += e
    radius[1:] += e
    lo_bound = float(np.min(t.diag - radius))
    hi_bound = float(np.max(t.diag + radius))
    norm = max(abs(lo_bound), abs(hi_bound), _TINY)
    off2 = e * e
    pivmin = _TINY * max(1.0, float(off2.max(initial=0.0)))
    abstol = 2.0 * _EPS * norm

    want = np.arange(k)
    lo = np.full(k, lo_bound - abstol)
    hi = np.full(k, hi_bound + abstol)
    for _ in range(max_iter):
        active = (hi - lo) > abstol
        if not active.any():
            break
        mid = 0.5 * (lo + hi)
        above = _sturm_counts(t.diag, off2, mid, pivmin) > want
        hi = np.where(active & above, mid, hi)
        lo = np.where(active & ~above, mid, lo)
    else:
        if ((hi - lo) > abstol).any():
            raise ConvergenceFailure(f"bisection did not converge in {max_iter} steps")
    return [float(v) for v in 0.5 * (lo + hi)]


def _ldl_solve(diag: np.ndarray, off: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Solve a positive-definite symmetric tridiagonal system via LDL^T."""
    n = diag.size
    d = np.empty(n)
    ell = np.empty(max(n - 1, 0))
    d[0] = diag[0]
    for i in range(n - 1):
        if d[i] <= 0.0:
            raise ConvergenceFailure("inverse-iteration shift is not below the spectrum")
        ell[i] = off[i] / d[i]
        d[i + 1] = diag[i + 1] - ell[i] * off[i]
    if d[-1] <= 0.0:
        raise ConvergenceFailure("inverse-iteration shift is not below the spectrum")
    z = rhs.astype(float).copy()
    for i in range(1, n):
        z[i] -= ell[i - 1] * z[i - 1]
    z /= d
    for i in range(n - 2, -1, -1):
        z[i] -= ell[i] * z[i + 1]
    return z


def _ground_real(t: SectorTridiagonal, max_iter: int) -> np.ndarray:
    lam = solve_spectrum(t, 1)[0]
    norm = max(t.norm_bound, 1.0)
    shift = lam - 1e-10 * norm
    shifted = t.diag - shift
    v = np.ones(t.dimension) / math.sqrt(t.dimension)
    for _ in range(max_iter):
        v = _ldl_solve(shifted, t.offdiag, v)
        v /= np.linalg.norm(v)
        rho = float(v @ t.matvec(v))
        residual = float(np.linalg.norm(t.matvec(v) - rho * v))
        if residual <= 1e-12 * norm:
            break
    else:
        raise ConvergenceFailure(f"inverse iteration did not converge in {max_iter} steps")
    if v[0] < 0:
        v = -v
    return v


def ground_vector(t: SectorTridiagonal, max_iter: int = DEFAULTS.max_iter) -> StateVector:
    """Normalized lowest eigenvector of ``t`` in full Fock indexing.

    The gauge phase exp(-i n arg(B)/2) is restored on level n and the overall
    sign is fixed so the first populated level has a positive coefficient.
    """
    if t.dimension < 2:
        raise ValueError("ground_vector needs a sector of dimension >= 2")
    v = _ground_real(t, max_iter)
    n_max = int(t.levels[-1])
    coeffs = np.zeros(n_max + 1, dtype=complex)
    coeffs[t.levels] = v * np.exp(-0.5j * t.levels * t.gauge_angle)
    return StateVector.normalized(coeffs)


def lowest_eigenvalue(op: QuadraticOperator, n_max: int) -> float:
    """Oracle estimate of lambda0: bottom of the even sector over levels 0..n_max."""
    return solve_spectrum(build_sector(op, "even", n_max), 1)[0]


def ladder(op: QuadraticOperator, n_max: int, k: int) -> list[float]:
    """First ``k`` eigenvalues of each sector, merged and sorted."""
    even = solve_spectrum(build_sector(op, "even", n_max), k)
    odd = solve_spectrum(build_sector(op, "odd", n_max + 1), k)
    return sorted(even + odd)


class ConvergenceRow(NamedTuple):
    n_max: int
    estimate: float
    error: float


def convergence_study(op: QuadraticOperator, n_max_list: Sequence[int]) -> list[ConvergenceRow]:
    """Oracle lambda0 versus truncation; error is estimate minus closed form."""
    exact = diagonalize(op)[1].lambda0
    rows = []
    for n_max in n_max_list:
        est = lowest_eigenvalue(op, int(n_max))
        rows.append(ConvergenceRow(int(n_max), est, est - exact))
    return rows


def required_n_max(op: QuadraticOperator, accuracy: float = 1e-6, limit: int = 1 << 16) -> int:
    """Smallest even n_max whose oracle lambda0 is within ``accuracy`` of exact.

    Relies on the variational monotonicity of the truncated estimate.
    """
    exact = diagonalize(op)[1].lambda0

    def ok(n_max: int) -> bool:
        return abs(lowest_eigenvalue(op, n_max) - exact) < accuracy

    lo, hi = 0, 2
    while not ok(hi):
        lo, hi = hi, 2 * hi
        if hi > limit:
            raise ConvergenceFailure(f"accuracy {accuracy} not reached by n_max={limit}")
    # invariant: lo fails (or is 0), hi succeeds; both even
    while hi - lo > 2:
        mid = (lo + hi) // 4 * 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi
