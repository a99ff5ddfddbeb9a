import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate as sp_integrate

from subvac.sampling import (
    Kind,
    bump_constant,
    compact_bump,
    excess_photons,
    fourier_transform,
    load_tabulated,
    lorentzian,
    lorentzian_transform_by_quadrature,
    mean_photons_lorentzian,
    tabulated_even,
)

# frozen from scipy.quad / mpmath evaluations
K = 4.504567242087163
GHAT_F = {1.0: 0.980373269571483, 2 * math.pi: 0.406548218726182, 4 * math.pi: -0.0965273328701918}


def bump_ft_reference(tau, omega):
    """Independent cosine transform of the bump with scipy's QUADPACK."""
    g = compact_bump(tau)
    val, _ = sp_integrate.quad(lambda t: g(t) * math.cos(omega * t), -tau / 2, tau / 2, limit=400, epsabs=1e-13)
    return val


def test_lorentzian_basics():
    g = lorentzian(0.7)
    assert g.kind is Kind.LORENTZIAN
    assert float(g(0.0)) == pytest.approx(1 / (math.pi * 0.7), rel=1e-15)
    assert g.transform(0.0) == 1.0
    assert g.transform(2.0 / 0.7) == pytest.approx(math.exp(-2.0), rel=1e-15)
    with pytest.raises(ValueError):
        lorentzian(0.0)


def test_bump_constant_value():
    assert bump_constant() == pytest.approx(4.50457, abs=1e-4)
    assert compact_bump(3.0).norm_constant == pytest.approx(K, rel=1e-12)


def test_bump_constant_against_scipy():
    area, _ = sp_integrate.quad(lambda s: math.exp(-0.25 / ((0.5 + s) * (0.5 - s))), -0.5, 0.5, epsabs=1e-14, epsrel=1e-13)
    assert bump_constant() == pytest.approx(1 / area, rel=1e-11)


@pytest.mark.parametrize("tau", [0.1, 1.0, 5.0])
def test_bump_peak_and_support(tau):
    g = compact_bump(tau)
    assert float(g(0.0)) * tau == pytest.approx(K / math.e, rel=1e-14)
    assert float(g(0.0)) * tau == pytest.approx(1.65714, abs=1e-5)
    out = g(np.array([-tau, -tau / 2, tau / 2, 0.51 * tau, 10 * tau]))
    assert np.all(out == 0.0)


def test_bump_smooth_at_edges():
    tau = 1.0
    g = compact_bump(tau)
    h = 1e-3
    edge = tau / 2
    # one-sided differences of orders 1..3 from inside the support vanish to
    # far below the O(1) a finite derivative jump would give
    pts = g(edge - h * np.arange(4))
    for order in (1, 2, 3):
        assert abs(np.diff(pts, order)[0]) / h**order < 1e-20
    pts = g(-edge + h * np.arange(4))
    for order in (1, 2, 3):
        assert abs(np.diff(pts, order)[0]) / h**order < 1e-20


@pytest.mark.parametrize("tau", [0.2, 1.0, 4.0])
def test_bump_normalization_round_trip(tau):
    g = compact_bump(tau)
    area, _ = sp_integrate.quad(g, -tau / 2, tau / 2, epsabs=1e-13)
    assert area == pytest.approx(1.0, abs=1e-8)


@given(st.floats(-5.0, 5.0))
def test_profiles_are_even(t):
    for g in (lorentzian(0.8), compact_bump(2.0)):
        assert float(g(t)) == float(g(-t))


@given(st.floats(0.0, 40.0))
def test_transform_even_in_omega(w):
    for g in (lorentzian(0.5), compact_bump(1.0)):
        assert fourier_transform(g, w) == fourier_transform(g, -w)


@pytest.mark.parametrize("w, expected", list(GHAT_F.items()))
def test_bump_transform_values(w, expected):
    assert compact_bump(1.0).transform(w) == pytest.approx(expected, abs=1e-10)
    assert bump_ft_reference(1.0, w) == pytest.approx(expected, abs=1e-10)


@pytest.mark.parametrize("tau, w", [(0.5, 3.0), (2.0, 9.0), (1.0, 20.0), (0.3, 60.0)])
def test_bump_transform_against_scipy(tau, w):
    assert compact_bump(tau).transform(w) == pytest.approx(bump_ft_reference(tau, w), abs=1e-10)


def test_transform_bounds_on_grid():
    wt = np.linspace(0.0, 20.0, 201)[1:]
    lor = np.array([lorentzian(1.0).transform(x) for x in wt])
    bump = np.array([compact_bump(1.0).transform(x) for x in wt])
    assert np.all((lor > 0) & (lor < 1))
    assert np.all(np.diff(lor) < 0)
    # the bump's transform dips below zero, so only |ghat| < 1 is asserted for it
    assert np.all(np.abs(bump) < 1)
    assert bump.min() < 0


@pytest.mark.parametrize("wt", [0.25, 1.0, 4.0, 0.0])
def test_lorentzian_quadrature_matches_closed_form(wt):
    assert lorentzian_transform_by_quadrature(1.0, 2 * wt) == pytest.approx(math.exp(-2 * wt), abs=1e-8)


def test_excess_photons_stable():
    assert excess_photons(0.0) == 0.0
    assert excess_photons(1e-20) == pytest.approx(2.5e-21, rel=1e-12)
    assert excess_photons(0.75) == pytest.approx(0.5, rel=1e-15)
    assert excess_photons(1.0) == math.inf


@pytest.mark.parametrize(
    "x, printed, derived",
    [
        (0.05, 0.232046446776379, 0.0911510062364629),
        (0.5, 0.000467515578848695, 8.71837869350759e-07),
        (2.0, 3.04038917738006e-12, 3.69758653990447e-23),
    ],
)
def test_mean_photons_lorentzian(x, printed, derived):
    p, d = mean_photons_lorentzian(x)
    assert p == pytest.approx(printed, rel=1e-12)
    assert d == pytest.approx(derived, rel=1e-12)
    assert d <= p


def test_mean_photons_lorentzian_rejects_nonpositive():
    with pytest.raises(ValueError):
        mean_photons_lorentzian(0.0)


def test_tabulated_matches_bump():
    ref = compact_bump(1.0)
    t = np.linspace(-0.5, 0.5, 4001)
    tab = tabulated_even(t, ref(t))
    assert tab.kind is Kind.TABULATED_EVEN
    assert tab.transform(0.0) == pytest.approx(1.0, abs=1e-12)
    assert tab.transform(2 * math.pi) == pytest.approx(GHAT_F[2 * math.pi], abs=1e-6)


def test_tabulated_symmetrizes():
    t = np.array([-1.0, 0.0, 1.0])
    tab = tabulated_even(t, np.array([0.0, 1.0, 2.0]))
    assert float(tab(0.5)) == float(tab(-0.5))
    # mean of 0 and 2 is 1 at |t| = 1; the flat profile has area 2
    assert float(tab(1.0)) == pytest.approx(0.5)
    one_sided = tabulated_even([0.0, 1.0], [1.0, 1.0])
    assert one_sided.transform(0.0) == pytest.approx(1.0)


def test_tabulated_validation():
    with pytest.raises(ValueError):
        tabulated_even([0.0, 0.0, 1.0], [1.0, 1.0, 1.0])
    with pytest.raises(ValueError):
        tabulated_even([0.0, 1.0], [0.0, 0.0])


def test_load_tabulated(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("-1,0\n0,1\n1,0\n")
    g = load_tabulated(p, width=1.0)
    assert g.width == 1.0
    assert float(g(0.0)) == pytest.approx(1.0)
    bad = tmp_path / "bad.txt"
    bad.write_text("0 1 2\n1 2 3\n")
    with pytest.raises(ValueError):
        load_tabulated(bad)
