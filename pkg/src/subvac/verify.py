"""Cross-check of every closed form against the Fock-matrix oracle."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import oracle
from .config import DEFAULTS
from .core import (
    QuadraticOperator,
    StateVector,
    diagonalize,
    double_factorial_series,
    lowest_eigenstate,
    mean_photon_number,
)
from .errors import SubvacError
from .fieldmodel import ModeConfig, build_averaged_operator
from .sampling import excess_photons
from .states import (
    SqueezeParameter,
    VacuumPlusTwo,
    expect_squeezed,
    expect_state,
    expect_vacuum_plus_two,
    expect_vacuum_plus_two_as_printed,
    negativity_window_as_printed,
    negativity_window_epsilon,
    squeezed_vacuum_coeffs,
)

LAMBDA0_TOL = 1e-8  # relative to A
OVERLAP_TOL = 1e-8
LINEARITY_TOL = 1e-6
N0_REL_TOL = 1e-12
SERIES_REL_TOL = 1e-12
EXPECT_TOL = 1e-8
BOUND_TOL = 1e-9
DISCREPANCY_TOL = 1e-8


@dataclass
class Check:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks] + [f"NOTE {n}" for n in self.notes]


def operator_grid(max_ratio: float, points: int, seed: int) -> list[QuadraticOperator]:
    """Operators with 2|B|/A evenly spread on [0, max_ratio], random A and arg(B)."""
    rng = np.random.default_rng(seed)
    ratios = np.linspace(0.0, max_ratio, points)
    a_vals = rng.uniform(0.5, 5.0, points)
    phases = rng.uniform(0.0, 2.0 * math.pi, points)
    return [
        QuadraticOperator(a, 0.5 * x * a * cmath.exp(1j * p))
        for x, a, p in zip(ratios, a_vals, phases)
    ]


def random_states(n_max: int, count: int, seed: int) -> list[StateVector]:
    rng = np.random.default_rng(seed)
    raw = rng.normal(size=(count, n_max + 1)) + 1j * rng.normal(size=(count, n_max + 1))
    return [StateVector.normalized(row) for row in raw]


def _guard(name: str, fn) -> Check:
    try:
        return fn()
    except SubvacError as exc:
        return Check(name, False, f"{type(exc).__name__}: {exc}")


def check_lambda0(ops: list[QuadraticOperator], n_max: int | None) -> Check:
    worst = 0.0
    above_bound = True
    for op in ops:
        nm = n_max if n_max is not None else DEFAULTS.n_max_for(op.coupling_ratio)
        exact = diagonalize(op)[1].lambda0
        est = oracle.lowest_eigenvalue(op, nm)
        worst = max(worst, abs(exact - est) / op.a_coeff)
        above_bound &= exact > -0.5 * op.a_coeff
    ok = worst < LAMBDA0_TOL and above_bound
    return Check(
        "lambda0_oracle",
        ok,
        f"max |closed - oracle|/A = {worst:.3e} (tol {LAMBDA0_TOL:g}) over {len(ops)} operators; "
        f"lambda0 > -A/2 everywhere: {above_bound}",
    )


def check_overlap(max_ratio: float, n_max: int) -> Check:
    ratios = [x for x in (0.1, 0.5, 0.9) if x <= max_ratio] or [max_ratio]
    cases = [QuadraticOperator(2.0, 0.5 * 2.0 * x) for x in ratios]
    cases.append(QuadraticOperator(2.0, 0.5 * 2.0 * ratios[-1] * cmath.exp(1.1j)))
    worst = 0.0
    for op in cases:
        bt, _ = diagonalize(op)
        closed = lowest_eigenstate(bt, n_max)
        brute = oracle.ground_vector(oracle.build_sector(op, "even", n_max))
        # complex overlap, so a wrong gauge phase would show up here
        worst = max(worst, 1.0 - abs(closed.overlap(brute)))
    return Check(
        "eigenstate_overlap",
        worst < OVERLAP_TOL,
        f"max 1 - |<closed|oracle>| = {worst:.3e} (tol {OVERLAP_TOL:g}) over {len(cases)} cases at n_max={n_max}",
    )


def check_linearity(max_ratio: float, n_max: int, count: int = 8) -> Check:
    op = QuadraticOperator(2.0, min(0.5, max_ratio))
    spec = diagonalize(op)[1]
    even_t = oracle.build_sector(op, "even", n_max)
    odd_t = oracle.build_sector(op, "odd", n_max + 1)
    if min(even_t.dimension, odd_t.dimension) < count:
        return Check("spectrum_linearity", False, f"n_max={n_max} holds fewer than {count} levels per sector")
    even = oracle.solve_spectrum(even_t, count)
    odd = oracle.solve_spectrum(odd_t, count)
    dev = max(
        max(abs(v - (spec.lambda0 + 2 * m * spec.omega)) for m, v in enumerate(even)),
        max(abs(v - (spec.lambda0 + (2 * m + 1) * spec.omega)) for m, v in enumerate(odd)),
    )
    return Check(
        "spectrum_linearity",
        dev < LINEARITY_TOL,
        f"max |oracle - (n Omega + lambda0)| = {dev:.3e} (tol {LINEARITY_TOL:g}) first {count} per sector at n_max={n_max}",
    )


def check_photon_number(ops: list[QuadraticOperator]) -> Check:
    worst = 0.0
    for op in ops:
        bt, _ = diagonalize(op)
        n0 = mean_photon_number(op)
        b2 = abs(bt.beta) ** 2
        if n0 or b2:
            worst = max(worst, abs(n0 - b2) / max(abs(n0), abs(b2)))
    return Check("n0_equals_beta2", worst < N0_REL_TOL, f"max relative deviation {worst:.3e}")


def check_series() -> Check:
    worst = 0.0
    for x in (0.1, 0.3, 0.5, 0.7, 0.9):
        partial = double_factorial_series(x, 2000)
        worst = max(worst, abs(partial - 1.0 / math.sqrt(1.0 - x * x)) * math.sqrt(1.0 - x * x))
    return Check("normalization_identity", worst < SERIES_REL_TOL, f"max relative deviation {worst:.3e}")


def check_expectations(n_max: int) -> Check:
    op = QuadraticOperator(2.0, 0.7 * cmath.exp(0.4j))
    worst = 0.0
    for r in (0.25, 0.5, 1.0, 1.5):
        for delta in (0.0, 1.0, 2.5):
            sq = SqueezeParameter(r, delta)
            psi = squeezed_vacuum_coeffs(sq, n_max)
            worst = max(worst, abs(expect_squeezed(op, sq) - expect_state(op, psi)))
    for op2 in (QuadraticOperator(2.0, 0.5), QuadraticOperator(3.0, 1.2j)):
        bt, spec = diagonalize(op2)
        worst = max(worst, abs(expect_state(op2, lowest_eigenstate(bt, n_max)) - spec.lambda0))
    return Check(
        "expectation_consistency",
        worst < EXPECT_TOL,
        f"max |closed - coefficient sum| = {worst:.3e} (tol {EXPECT_TOL:g}) at n_max={n_max}",
    )


def check_bound(samples: int, seed: int) -> Check:
    op = QuadraticOperator(2.0, 0.9)
    lam0 = diagonalize(op)[1].lambda0
    margin = min(expect_state(op, psi) - lam0 for psi in random_states(60, samples, seed))
    return Check(
        "qi_bound_random_states",
        margin >= -BOUND_TOL,
        f"min <T> - lambda0 over {samples} random states = {margin:.3e}",
    )


def photon_number_discrepancy(ghat: float = 0.5, n_max: int = 200) -> tuple[Check, str]:
    """Compare both closed forms for n0 under a real-mode averaged field with the oracle."""
    op = build_averaged_operator(ModeConfig.real(1.0, 1.0), ghat)
    brute = oracle.ground_vector(oracle.build_sector(op, "even", n_max)).mean_photon_number()
    printed = excess_photons(ghat)
    derived = excess_photons(ghat * ghat)
    dev = abs(brute - derived)
    check = Check(
        "n0_variant_resolution",
        dev < DISCREPANCY_TOL,
        f"ghat={ghat}: oracle n0 = {brute:.12f} matches 1/(2 sqrt(1 - ghat^2)) - 1/2 = {derived:.12f} "
        f"(|diff| {dev:.2e}, tol {DISCREPANCY_TOL:g})",
    )
    note = (
        f"n0 formula with ghat instead of ghat^2 gives {printed:.12f} at ghat={ghat}, "
        f"off from the oracle by {abs(printed - brute):.3e}"
    )
    return check, note


def vacuum_plus_two_discrepancy(a: float = 2.0, b: complex = 1.0, eps: float = -0.1) -> tuple[Check, list[str]]:
    op = QuadraticOperator(a, b)
    st = VacuumPlusTwo(eps)
    exact = expect_vacuum_plus_two(op, st)
    printed = expect_vacuum_plus_two_as_printed(op, st)
    c = st.coeffs(4).coeffs
    brute = float(np.vdot(c, oracle.FockMatrix.from_operator(op, 4).dense() @ c).real)
    win = negativity_window_epsilon(op)
    win_p = negativity_window_as_printed(op)
    check = Check(
        "vacuum_plus_two_exact",
        abs(exact - brute) < 1e-12,
        f"A={a}, B={b}, eps={eps}: exact {exact:.12f} vs matrix {brute:.12f}",
    )
    notes = [
        f"vacuum-plus-two <T> with the 4 eps A bracket gives {printed:.12f} (exact {exact:.12f})",
        f"negativity window in eps: exact ({win[0]:.6f}, {win[1]:.6f}), "
        f"bracket condition ({win_p[0]:.6f}, {win_p[1]:.6f})",
    ]
    return check, notes


def run(
    n_max: int | None = None,
    grid_max_ratio: float = 0.9,
    grid_points: int = 50,
    seed: int = 2024,
    samples: int = 1000,
) -> Report:
    """Run the full suite; ``n_max=None`` picks truncations from DEFAULTS."""
    report = Report()
    ops = operator_grid(grid_max_ratio, grid_points, seed)
    nm = n_max if n_max is not None else DEFAULTS.n_max
    report.checks.append(_guard("lambda0_oracle", lambda: check_lambda0(ops, n_max)))
    report.checks.append(_guard("eigenstate_overlap", lambda: check_overlap(grid_max_ratio, nm)))
    report.checks.append(_guard("spectrum_linearity", lambda: check_linearity(grid_max_ratio, 2 * nm)))
    report.checks.append(_guard("n0_equals_beta2", lambda: check_photon_number(ops)))
    report.checks.append(check_series())
    report.checks.append(_guard("expectation_consistency", lambda: check_expectations(2 * nm)))
    report.checks.append(_guard("qi_bound_random_states", lambda: check_bound(samples, seed)))
    check, note = photon_number_discrepancy(0.5, max(nm, 2))
    report.checks.append(check)
    report.notes.append(note)
    check, notes = vacuum_plus_two_discrepancy()
    report.checks.append(check)
    report.notes.extend(notes)
    return report
