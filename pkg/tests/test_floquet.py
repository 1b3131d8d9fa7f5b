import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import linalg

from magchain.floquet import (BandSet, SpectrumKind, bands_bloch_oracle, bands_nondegenerate,
                              blocks_degenerate, discriminant, hausdorff_distance, monodromy,
                              periodic_window, profile_spectrum)
from magchain.jacobi import eigenvalues, norm_bound, truncate
from magchain.profiles import CoefficientWindow, Linear, PeriodicList, ProfileError, evaluate_profile

SQRT3 = math.sqrt(3.0)


def window(alpha, theta=0):
    return periodic_window(Linear(alpha, theta))


def test_monodromy_single_site():
    w = CoefficientWindow(np.array([2.0, 2.0]), period=1)
    for lam in (-3.0, 0.4, 2.5):
        assert monodromy(w, lam).trace == pytest.approx(lam / 2, abs=1e-15)


def test_monodromy_third_flux_at_zero():
    M = monodromy(window(Fraction(1, 3)), 0.0)
    np.testing.assert_allclose(M.matrix, [[0.0, 0.5], [-2.0, 0.0]], atol=1e-14)
    assert M.trace == pytest.approx(0.0, abs=1e-14)
    assert M.det == pytest.approx(1.0, abs=1e-12)


def test_monodromy_rejects_zero_coefficient():
    with pytest.raises(ProfileError):
        monodromy(window(Fraction(1, 2), Fraction(1, 2)), 0.3)


@settings(max_examples=50)
@given(st.integers(0, 12), st.integers(1, 13), st.integers(1, 99), st.floats(-4, 4))
def test_monodromy_unimodular(p, q, t, lam):
    prof = Linear(Fraction(p, q), Fraction(t, 100) + Fraction(1, 1000))
    w = periodic_window(prof)
    if np.any(w.one_period() == 0):
        return
    M = monodromy(w, lam)
    # the determinant of a computed product carries roundoff of order eps * |M|^2
    scale = max(1.0, float(np.sum(M.matrix ** 2)))
    assert abs(M.det - 1.0) < 1e-12 * scale


@pytest.mark.parametrize("alpha", [Fraction(0), Fraction(1, 3), Fraction(1, 2)])
def test_monodromy_unimodular_on_band_range(alpha):
    # periods whose couplings stay away from zero keep |M| moderate
    w = window(alpha, 0.123)
    for lam in np.linspace(-4.0, 4.0, 81):
        assert abs(monodromy(w, lam).det - 1.0) < 1e-12


@pytest.mark.parametrize("theta", [0.0, 0.3, 0.5 - 1e-3])
def test_single_band_formula(theta):
    b = bands_nondegenerate(window(Fraction(0), theta))
    edge = 4 * abs(math.cos(math.pi * theta))
    np.testing.assert_allclose(b.intervals, [[-edge, edge]], atol=1e-9)


def test_third_flux_bands_closed_form():
    # the Bloch matrix at kappa = 0, pi factorises with roots 2, 1 +- sqrt3, sqrt3 - 1 ...
    b = bands_nondegenerate(window(Fraction(1, 3)))
    expected = [[-1 - SQRT3, -2.0], [1 - SQRT3, SQRT3 - 1], [2.0, 1 + SQRT3]]
    np.testing.assert_allclose(b.intervals, expected, atol=1e-10)
    assert b.contains(0.0)[0]


def test_third_flux_band_edges_are_bloch_eigenvalues():
    # independent check: edges are eigenvalues of the periodic (kappa=0) or
    # antiperiodic (kappa=pi) q x q matrices
    a = window(Fraction(1, 3)).one_period()
    ends = []
    for sign in (1.0, -1.0):
        H = np.diag(a[:-1], 1) + np.diag(a[:-1], -1)
        H[0, -1] = H[-1, 0] = sign * a[-1]
        ends.extend(linalg.eigvalsh(H))
    b = bands_nondegenerate(window(Fraction(1, 3)))
    np.testing.assert_allclose(np.sort(ends), np.sort(b.intervals.ravel()), atol=1e-10)


def test_period_doubled_constant_touching():
    w = CoefficientWindow(np.array([1.0, 1.0, 1.0, 1.0]), period=2)
    b = bands_nondegenerate(w)
    np.testing.assert_allclose(b.intervals, [[-2.0, 0.0], [0.0, 2.0]], atol=1e-9)
    assert b.touching == (0,)
    oracle = bands_bloch_oracle(w, 1001)
    assert hausdorff_distance(b, oracle) < 1e-5


def test_quarter_offset_touching():
    b = profile_spectrum(Linear(Fraction(1, 2), Fraction(1, 4)))
    r = 2 * math.sqrt(2)
    np.testing.assert_allclose(b.intervals, [[-r, 0.0], [0.0, r]], atol=1e-9)
    assert b.touching == (0,)


def test_bloch_oracle_single_band():
    b = bands_bloch_oracle(window(Fraction(0)), 1001)
    np.testing.assert_allclose(b.intervals, [[-4.0, 4.0]], atol=1e-5)


@pytest.mark.parametrize("alpha", [Fraction(1, 3), Fraction(2, 5), Fraction(3, 7), Fraction(5, 8),
                                   Fraction(8, 13), Fraction(13, 21)])
def test_bloch_oracle_agrees(alpha):
    w = window(alpha, 0.123)
    assert hausdorff_distance(bands_nondegenerate(w), bands_bloch_oracle(w, 2001)) <= 1e-6


def test_half_flux_points():
    b = blocks_degenerate(window(Fraction(1, 2), Fraction(1, 2)))
    assert b.kind is SpectrumKind.PURE_POINT
    np.testing.assert_allclose(b.points, [-2.0, 2.0], atol=1e-10)


def test_integer_flux_half_offset_is_zero_point():
    b = profile_spectrum(Linear(Fraction(3), Fraction(1, 2)))
    assert b.kind is SpectrumKind.PURE_POINT
    np.testing.assert_allclose(b.points, [0.0], atol=1e-12)


def test_quarter_flux_points():
    b = profile_spectrum(Linear(Fraction(1, 4), Fraction(1, 4)))
    pts = b.points
    assert pts.size == 4
    np.testing.assert_allclose(pts, -pts[::-1], atol=1e-10)
    block = truncate(evaluate_profile(Linear(Fraction(1, 4), Fraction(1, 4)), 2, 5), 2, 5)
    np.testing.assert_allclose(pts, eigenvalues(block), atol=1e-10)


def test_blocks_need_a_zero():
    with pytest.raises(ProfileError):
        blocks_degenerate(window(Fraction(1, 3)))


def test_blocks_inconsistent_window():
    w = CoefficientWindow(np.array([0.0, 1.0, 1.5, 0.0, 2.0, 1.5]), period=3)
    with pytest.raises(ProfileError):
        blocks_degenerate(w)


def rational_cases():
    for q in range(1, 9):
        for p in range(q + 1):
            if math.gcd(p, q) == 1:
                yield Fraction(p, q)


@pytest.mark.parametrize("alpha", list(rational_cases()))
def test_band_and_point_counts(alpha):
    for theta in (Fraction(0), Fraction(1, 7), Fraction(1, 2), 0.123):
        b = profile_spectrum(Linear(alpha, theta))
        assert len(b) == alpha.denominator
        if b.kind is SpectrumKind.PURE_POINT:
            assert np.all(np.diff(b.points) > 1e-9)


@pytest.mark.parametrize("alpha", list(rational_cases()))
def test_spectrum_symmetric(alpha):
    b = profile_spectrum(Linear(alpha, 0.123))
    np.testing.assert_allclose(b.intervals, -b.intervals[::-1, ::-1], atol=1e-10)
    bound = norm_bound(periodic_window(Linear(alpha, 0.123)))
    assert np.max(np.abs(b.intervals)) <= bound + 1e-10


@pytest.mark.parametrize("alpha", [Fraction(2, 5), Fraction(3, 7)])
def test_discriminant_start_index(alpha):
    prof = Linear(alpha, 0.123)
    q = alpha.denominator
    lam = np.linspace(-3.5, 3.5, 41)
    base = discriminant(evaluate_profile(prof, 0, 2 * q - 1), lam)
    for start in range(1, q):
        w = evaluate_profile(prof, start, start + 2 * q - 1)
        # for odd p the shifted period is a sign-gauge image: Delta may flip sign
        np.testing.assert_allclose(np.abs(discriminant(w, lam)), np.abs(base), rtol=1e-10,
                                   atol=1e-10)
        np.testing.assert_allclose(bands_nondegenerate(w).intervals,
                                   bands_nondegenerate(window(alpha, 0.123)).intervals,
                                   atol=1e-10)


def test_periodic_list_bands():
    prof = PeriodicList((Fraction(0), Fraction(1, 3), Fraction(1, 5)))
    w = periodic_window(prof)
    b = bands_nondegenerate(w)
    assert len(b) == 3
    assert hausdorff_distance(b, bands_bloch_oracle(w, 2001)) <= 1e-6


@pytest.mark.parametrize("alpha", [Fraction(1, 3), Fraction(2, 5), Fraction(3, 7), Fraction(5, 8)])
def test_truncation_density_lower_bound(alpha):
    n = 2000
    prof = Linear(alpha, 0.123)
    ev = eigenvalues(truncate(evaluate_profile(prof, 0, n - 1), 0, n - 1))
    for lo, hi in profile_spectrum(prof).intervals:
        length = hi - lo
        if length > 0.05:
            inside = np.sum((ev >= lo) & (ev <= hi))
            assert inside >= math.floor(n * length / (2 * math.pi * 4)) / 2


@pytest.mark.parametrize("alpha", [Fraction(1, 3), Fraction(2, 5), Fraction(3, 7)])
def test_truncation_outliers_are_end_states(alpha):
    # eigenvalues of the hard-cut section that fall in gaps belong to
    # eigenvectors concentrated on the first or last sites of the section
    n = 400
    prof = Linear(alpha, 0.123)
    w = evaluate_profile(prof, 0, n - 1)
    vals, vecs = linalg.eigh_tridiagonal(np.zeros(n), truncate(w, 0, n - 1).off_diagonal)
    d = profile_spectrum(prof).distance(vals)
    far = d > 1e-2
    assert far.any()
    edge = np.r_[0:40, n - 40:n]
    mass = np.sum(vecs[edge][:, far] ** 2, axis=0)
    assert np.all(mass > 0.99)


def test_bandset_distance_and_hausdorff():
    A = BandSet(np.array([[0.0, 1.0], [2.0, 3.0]]), SpectrumKind.ABSOLUTELY_CONTINUOUS)
    B = BandSet(np.array([[0.0, 3.0]]), SpectrumKind.ABSOLUTELY_CONTINUOUS)
    np.testing.assert_allclose(A.distance([1.5, -1.0, 2.5]), [0.5, 1.0, 0.0])
    assert hausdorff_distance(A, B) == pytest.approx(0.5)
    assert hausdorff_distance(A, A) == 0.0
