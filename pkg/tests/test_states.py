import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subvac.core import QuadraticOperator, StateVector, diagonalize
from subvac.errors import DegenerateWindow, TruncationInsufficient
from subvac.oracle import FockMatrix
from subvac.states import (
    SqueezeParameter,
    VacuumPlusTwo,
    expect_squeezed,
    expect_state,
    expect_vacuum_plus_two,
    expect_vacuum_plus_two_as_printed,
    mean_photons_squeezed,
    mean_photons_vacuum_plus_two,
    negativity_window_as_printed,
    negativity_window_epsilon,
    squeezed_vacuum_coeffs,
)


def matrix_expectation(op, psi):
    """<psi|M|psi> with the dense truncated matrix, independent of expect_state."""
    m = FockMatrix.from_operator(op, psi.n_max).dense()
    return float(np.vdot(psi.coeffs, m @ psi.coeffs).real)


def test_squeeze_parameter_validation():
    with pytest.raises(ValueError):
        SqueezeParameter(-0.1)
    assert SqueezeParameter(1.0, 2 * math.pi + 0.5).delta == pytest.approx(0.5)


@pytest.mark.parametrize("delta", [0.0, 1.0, 4.0])
def test_squeezed_vacuum_r_zero_is_vacuum(delta):
    psi = squeezed_vacuum_coeffs(SqueezeParameter(0.0, delta), 10)
    np.testing.assert_allclose(psi.coeffs, np.eye(11)[0], atol=0)


def test_squeezed_vacuum_small_r_ratio():
    psi = squeezed_vacuum_coeffs(SqueezeParameter(0.2, 0.0), 20)
    ratio = (psi.coeffs[2] / psi.coeffs[0]).real
    assert ratio == pytest.approx(-0.139565427369895941362, rel=1e-13)
    # vacuum-plus-two with |epsilon| ~ r/sqrt2
    assert abs(ratio) == pytest.approx(0.2 / math.sqrt(2), abs=0.2**2)
    assert np.all(psi.coeffs[1::2] == 0)


def test_squeezed_vacuum_photon_sum():
    sq = SqueezeParameter(1.0, math.pi / 3)
    # 60 levels miss ~7e-9 of the norm at r = 1; the photon sum is off by ~1e-6
    psi = squeezed_vacuum_coeffs(sq, 60, tol=1e-8)
    assert psi.mean_photon_number() == pytest.approx(1.38109784554181572978, abs=2e-6)
    assert squeezed_vacuum_coeffs(sq, 200).mean_photon_number() == pytest.approx(1.38109784554181572978, rel=1e-12)


def test_squeezed_vacuum_against_fock_formula():
    """Compare with the textbook expansion using explicit factorials."""
    r, delta = 0.7, 1.3
    psi = squeezed_vacuum_coeffs(SqueezeParameter(r, delta), 40)
    t = -cmath.exp(1j * delta) * math.tanh(r)
    ref = np.zeros(41, dtype=complex)
    for n in range(21):
        ref[2 * n] = t**n * math.sqrt(math.factorial(2 * n)) / (2**n * math.factorial(n)) / math.sqrt(math.cosh(r))
    np.testing.assert_allclose(psi.coeffs, ref / np.linalg.norm(ref), atol=1e-14)


def test_squeezed_truncation_error_propagates():
    with pytest.raises(TruncationInsufficient):
        squeezed_vacuum_coeffs(SqueezeParameter(1.5), 120)


@pytest.mark.parametrize("r, expected", [(0.0, 0.0), (1.0, 1.38109784554181572978), (0.2, 0.0405361859192274046423)])
def test_mean_photons_squeezed(r, expected):
    assert mean_photons_squeezed(SqueezeParameter(r)) == pytest.approx(expected, rel=1e-14)


def test_mean_photons_squeezed_matches_coefficients():
    sq = SqueezeParameter(0.2)
    assert squeezed_vacuum_coeffs(sq, 40).mean_photon_number() == pytest.approx(mean_photons_squeezed(sq), rel=1e-12)


def test_expect_squeezed_values():
    op = QuadraticOperator(2.0, 1.0)
    assert expect_squeezed(QuadraticOperator(3.0, 0.4j), SqueezeParameter(0.0)) == 0.0
    assert expect_squeezed(op, SqueezeParameter(1.0, 0.0)) == pytest.approx(-0.864664716763387308106, rel=1e-14)
    assert expect_squeezed(op, SqueezeParameter(1.0, math.pi / 2)) == pytest.approx(2.76219569108363145956, rel=1e-14)
    assert math.expm1(-2.0) == pytest.approx(expect_squeezed(op, SqueezeParameter(1.0, 0.0)), rel=1e-14)


def test_expect_squeezed_matches_coefficients_at_nmax_80():
    op = QuadraticOperator(2.0, 1.0)
    sq = SqueezeParameter(1.0, 0.0)
    psi = squeezed_vacuum_coeffs(sq, 80)
    assert expect_state(op, psi) == pytest.approx(expect_squeezed(op, sq), abs=5e-9)


@pytest.mark.parametrize("r", [0.1, 0.5, 1.0, 1.25, 1.5])
@pytest.mark.parametrize("delta", [0.0, 0.9, 3.5])
def test_expect_squeezed_matches_coefficients(r, delta):
    op = QuadraticOperator(1.7, 0.6 * cmath.exp(0.3j))
    sq = SqueezeParameter(r, delta)
    # 120 levels leave ~1e-6 of the norm out at r = 1.5, so use 400
    psi = squeezed_vacuum_coeffs(sq, 400)
    assert expect_state(op, psi) == pytest.approx(expect_squeezed(op, sq), abs=1e-8)


def test_expect_vacuum_plus_two_values():
    op = QuadraticOperator(2.0, 1.0)
    assert expect_vacuum_plus_two(op, VacuumPlusTwo(0.0)) == 0.0
    exact = expect_vacuum_plus_two(op, VacuumPlusTwo(-0.1))
    assert exact == pytest.approx(-0.240438329182791098773, rel=1e-14)
    assert exact == pytest.approx(matrix_expectation(op, VacuumPlusTwo(-0.1).coeffs(6)), rel=1e-14)
    assert expect_vacuum_plus_two(op, VacuumPlusTwo(0.1)) > 0


def test_printed_bracket_differs():
    op = QuadraticOperator(2.0, 1.0)
    printed = expect_vacuum_plus_two_as_printed(op, VacuumPlusTwo(-0.1))
    assert printed == pytest.approx(-0.200834368786751494812, rel=1e-14)
    assert printed != pytest.approx(expect_vacuum_plus_two(op, VacuumPlusTwo(-0.1)), rel=1e-3)


@given(
    st.floats(0.1, 10.0),
    st.floats(-3.0, 3.0),
    st.floats(-3.0, 3.0),
    st.floats(-5.0, 5.0),
)
def test_vacuum_plus_two_agrees_with_matrix(a, b_re, b_im, eps):
    op = QuadraticOperator(a, complex(b_re, b_im))
    st_ = VacuumPlusTwo(eps)
    assert expect_vacuum_plus_two(op, st_) == pytest.approx(matrix_expectation(op, st_.coeffs(4)), abs=1e-12 * (a + 3))
    assert expect_state(op, st_.coeffs(4)) == pytest.approx(expect_vacuum_plus_two(op, st_), abs=1e-12 * (a + 3))


@given(st.floats(0.1, 10.0), st.floats(-3.0, 3.0), st.floats(-5.0, 5.0))
def test_vacuum_plus_two_joint_flip_parity(a, b, eps):
    plus = expect_vacuum_plus_two(QuadraticOperator(a, b), VacuumPlusTwo(eps))
    flipped = expect_vacuum_plus_two(QuadraticOperator(a, -b), VacuumPlusTwo(-eps))
    assert flipped == pytest.approx(plus, rel=1e-14, abs=1e-300)


@pytest.mark.parametrize("eps, expected", [(0.0, 0.0), (1.0, 1.0), (0.1, 0.0198019801980198019802)])
def test_mean_photons_vacuum_plus_two(eps, expected):
    assert mean_photons_vacuum_plus_two(VacuumPlusTwo(eps)) == pytest.approx(expected, rel=1e-14)
    assert VacuumPlusTwo(eps).coeffs(4).mean_photon_number() == pytest.approx(expected, rel=1e-14)


def test_expect_state_basic():
    op = QuadraticOperator(2.0, 0.5)
    assert expect_state(op, StateVector.fock(0, 10)) == 0.0
    assert expect_state(op, StateVector.fock(1, 10)) == 2.0
    bt, spec = diagonalize(op)
    from subvac.core import lowest_eigenstate

    assert expect_state(op, lowest_eigenstate(bt, 100)) == pytest.approx(-0.133974596215561353236, abs=1e-9)


def test_negativity_window():
    lo, hi = negativity_window_epsilon(QuadraticOperator(2.0, 1.0))
    assert (lo, hi) == (pytest.approx(-0.707106781186547524), 0.0)
    lo, hi = negativity_window_epsilon(QuadraticOperator(2.0, -1.0))
    assert (lo, hi) == (0.0, pytest.approx(0.707106781186547524))
    with pytest.raises(DegenerateWindow):
        negativity_window_epsilon(QuadraticOperator(2.0, 1j))
    with pytest.raises(DegenerateWindow):
        negativity_window_as_printed(QuadraticOperator(2.0, 1j))


@given(st.floats(0.1, 10.0), st.floats(-3.0, 3.0).filter(lambda b: abs(b) > 1e-3), st.floats(0.001, 0.999))
def test_negativity_window_is_exact(a, b, frac):
    op = QuadraticOperator(a, b)
    lo, hi = negativity_window_epsilon(op)
    inside = lo + frac * (hi - lo)
    assert expect_vacuum_plus_two(op, VacuumPlusTwo(inside)) < 0
    edge = lo if b > 0 else hi
    assert expect_vacuum_plus_two(op, VacuumPlusTwo(edge * 1.01)) > 0


def test_printed_window_is_half_the_exact_one():
    op = QuadraticOperator(2.0, 1.0)
    assert negativity_window_as_printed(op)[0] == pytest.approx(0.5 * negativity_window_epsilon(op)[0])


@settings(max_examples=30)
@given(st.floats(0.1, 5.0), st.floats(0.0, 0.9), st.integers(0, 2**32 - 1))
def test_expectation_never_below_lambda0(a, x, seed):
    op = QuadraticOperator(a, 0.5 * a * x)
    lam0 = diagonalize(op)[1].lambda0
    rng = np.random.default_rng(seed)
    c = rng.normal(size=41) + 1j * rng.normal(size=41)
    # bias toward low levels, where the negative region lives
    c *= np.exp(-np.arange(41) * rng.uniform(0.1, 2.0))
    assert expect_state(op, StateVector.normalized(c)) >= lam0 - 1e-9 * a


@pytest.mark.parametrize("r", [0.05, 0.1])
def test_small_r_correspondence_with_vacuum_plus_two(r):
    # squeeze phase pi makes c2/c0 = +tanh(r)/sqrt2, matching epsilon = +r/sqrt2
    sq = squeezed_vacuum_coeffs(SqueezeParameter(r, math.pi), 20)
    vp2 = VacuumPlusTwo(r / math.sqrt(2)).coeffs(20)
    assert abs(sq.overlap(vp2)) > 1 - r**4
    # with delta = 0 the matching epsilon is -r/sqrt2
    sq0 = squeezed_vacuum_coeffs(SqueezeParameter(r, 0.0), 20)
    assert abs(sq0.overlap(VacuumPlusTwo(-r / math.sqrt(2)).coeffs(20))) > 1 - r**4
    assert abs(sq0.overlap(vp2)) < 1 - r**2 / 2
