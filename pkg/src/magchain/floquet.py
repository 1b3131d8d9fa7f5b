"""Spectra of periodic zero-diagonal Jacobi operators.

Two regimes, following the zero pattern of the coefficients over a period:

* no zeros -- absolutely continuous bands ``{lambda : |Delta(lambda)| <= 2}``
  where ``Delta`` is the trace of the one-period transfer matrix;
* some zeros -- the operator splits into identical finite blocks and the
  spectrum is a finite set of infinitely degenerate eigenvalues.

The periodic extension of the first period of a window is used throughout.
For ``alpha = p/q`` with ``p`` odd this differs from the true sequence by a
sign pattern only, which leaves the spectrum unchanged.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from .jacobi import TruncatedJacobi, eigenvalues, norm_bound
from .profiles import CoefficientWindow, FieldProfile, ProfileError, evaluate_profile, profile_period

ROOT_TOL = 1e-10
TOUCH_TOL = 1e-9
POINT_TOL = 1e-9


class BracketingError(RuntimeError):
    """Band-edge search could not isolate the expected number of roots."""


class SpectrumKind(enum.Enum):
    ABSOLUTELY_CONTINUOUS = "band"
    PURE_POINT = "point"


@dataclass
class TransferMatrix:
    matrix: np.ndarray
    j: int = 0

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix))

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.matrix))


@dataclass
class BandSet:
    """Sorted closed intervals; point spectra are stored as ``[x, x]``.

    ``touching`` lists indices ``i`` for which band ``i`` and ``i+1`` share
    an endpoint.
    """

    intervals: np.ndarray
    kind: SpectrumKind
    touching: tuple = field(default=())

    def __post_init__(self):
        iv = np.asarray(self.intervals, dtype=float).reshape(-1, 2)
        self.intervals = iv[np.argsort(iv[:, 0], kind="stable")]

    @classmethod
    def from_points(cls, points) -> "BandSet":
        pts = np.sort(np.asarray(points, dtype=float))
        return cls(np.column_stack((pts, pts)), SpectrumKind.PURE_POINT)

    @property
    def points(self) -> np.ndarray:
        if self.kind is not SpectrumKind.PURE_POINT:
            raise ValueError("band spectrum has no point list")
        return self.intervals[:, 0].copy()

    def __len__(self) -> int:
        return self.intervals.shape[0]

    @property
    def measure(self) -> float:
        if self.kind is SpectrumKind.PURE_POINT:
            return 0.0
        return float(np.sum(self.intervals[:, 1] - self.intervals[:, 0]))

    def distance(self, x) -> np.ndarray:
        """Distance of each ``x`` to the union of intervals."""
        x = np.atleast_1d(np.asarray(x, dtype=float))[:, None]
        lo, hi = self.intervals[:, 0], self.intervals[:, 1]
        d = np.maximum(np.maximum(lo - x, x - hi), 0.0)
        return d.min(axis=1)

    def contains(self, x, tol: float = 0.0) -> np.ndarray:
        return self.distance(x) <= tol


def hausdorff_distance(A: BandSet, B: BandSet) -> float:
    """Hausdorff distance between two finite unions of closed intervals."""

    def directed(X: BandSet, Y: BandSet) -> float:
        cand = [X.intervals.ravel()]
        # the farthest point of an X-interval from Y sits at an endpoint or
        # at the middle of a Y-gap lying inside it
        gaps_lo = Y.intervals[:-1, 1]
        gaps_hi = Y.intervals[1:, 0]
        mids = 0.5 * (gaps_lo + gaps_hi)[gaps_hi > gaps_lo]
        for lo, hi in X.intervals:
            cand.append(mids[(mids > lo) & (mids < hi)])
        return float(np.max(Y.distance(np.concatenate(cand))))

    return max(directed(A, B), directed(B, A))


# -- transfer matrices ----------------------------------------------------------

def _period_coefficients(window: CoefficientWindow) -> np.ndarray:
    a = window.one_period()
    if np.any(a == 0.0):
        raise ProfileError("zero coefficient inside the period; use the block decomposition")
    return a


def _trace_and_derivative(a: np.ndarray, lam) -> tuple[np.ndarray, np.ndarray]:
    """Trace of ``T_{q-1}...T_0`` and its lambda-derivative, vectorised in lambda."""
    lam = np.asarray(lam, dtype=float)
    one = np.ones_like(lam)
    zero = np.zeros_like(lam)
    m11, m12, m21, m22 = one, zero, zero, one
    d11, d12, d21, d22 = zero, zero, zero, zero
    a_prev = a[-1]
    for aj in a:
        t11 = lam / aj
        t12 = -a_prev / aj
        # new = T @ M,  dnew = T' @ M + T @ dM with T' = [[1/aj, 0], [0, 0]]
        n11 = t11 * m11 + t12 * m21
        n12 = t11 * m12 + t12 * m22
        e11 = m11 / aj + t11 * d11 + t12 * d21
        e12 = m12 / aj + t11 * d12 + t12 * d22
        m21, m22, d21, d22 = m11, m12, d11, d12
        m11, m12, d11, d12 = n11, n12, e11, e12
        a_prev = aj
    return m11 + m22, d11 + d22


def discriminant(window: CoefficientWindow, lam) -> np.ndarray:
    return _trace_and_derivative(_period_coefficients(window), lam)[0]


def monodromy(window: CoefficientWindow, lam: float) -> TransferMatrix:
    """One-period transfer matrix ``T_{q-1}(lam) ... T_0(lam)``.

    ``T_j = [[lam/a_j, -a_{j-1}/a_j], [1, 0]]`` maps ``(phi_j, phi_{j-1})`` to
    ``(phi_{j+1}, phi_j)``.  Its determinant telescopes to 1.
    """
    a = _period_coefficients(window)
    M = np.eye(2)
    a_prev = a[-1]
    for aj in a:
        M = np.array([[lam / aj, -a_prev / aj], [1.0, 0.0]]) @ M
        a_prev = aj
    return TransferMatrix(M, window.j_lo)


def _critical_points(a: np.ndarray, lo: float, hi: float) -> np.ndarray:
    """The ``q - 1`` zeros of ``Delta'`` in ``[lo, hi]``, grid refined until isolated."""
    q = a.size
    if q == 1:
        return np.empty(0)
    deriv = lambda x: _trace_and_derivative(a, x)[1]
    n = 64 * q
    while n <= 2 ** 22:
        # even point count keeps a symmetric grid off lambda = 0
        x = np.linspace(lo, hi, 2 * (n // 2))
        s = np.sign(deriv(x))
        exact = x[s == 0]
        brackets = np.flatnonzero(s[:-1] * s[1:] < 0)
        if exact.size + brackets.size == q - 1:
            roots = [optimize.brentq(deriv, x[i], x[i + 1], xtol=1e-15, rtol=1e-15)
                     for i in brackets]
            return np.sort(np.concatenate((exact, roots)))
        n *= 2
    raise BracketingError(f"could not isolate {q - 1} critical points of the discriminant")


def bands_nondegenerate(window: CoefficientWindow) -> BandSet:
    """Band spectrum ``closure{lam : |Delta(lam)| <= 2}`` of a nondegenerate period.

    ``Delta`` is monotone between consecutive critical points, so each of the
    ``q`` pieces holds exactly one band whose edges solve ``Delta = +-2``
    (found by Brent bracketing).  A touching pair of bands is a critical
    point where ``|Delta| = 2``; such edges are shared, never merged.
    """
    a = _period_coefficients(window)
    q = a.size
    bound = norm_bound(window)
    margin = 1e-3 * (1.0 + bound)
    lo, hi = -bound - margin, bound + margin
    crit = _critical_points(a, lo, hi)
    nodes = np.concatenate(([lo], crit, [hi]))
    disc = lambda x: _trace_and_derivative(a, x)[0]
    dvals = disc(nodes)
    if np.any(np.abs(dvals[[0, -1]]) <= 2):
        raise BracketingError("discriminant does not exceed 2 outside the norm bound")

    bands = np.empty((q, 2))
    for i in range(q):
        x0, x1 = nodes[i], nodes[i + 1]
        f0, f1 = dvals[i], dvals[i + 1]
        edges = []
        for target in (2.0, -2.0):
            g0, g1 = f0 - target, f1 - target
            if g0 * g1 <= 0:
                if g0 == 0:
                    edges.append(x0)
                elif g1 == 0:
                    edges.append(x1)
                else:
                    edges.append(optimize.brentq(lambda x: disc(x) - target, x0, x1,
                                                 xtol=1e-14, rtol=1e-15))
            else:
                # Delta tangent to the target: the edge is the critical point itself
                k = 0 if abs(g0) < abs(g1) else 1
                if min(abs(g0), abs(g1)) > TOUCH_TOL * max(1.0, abs(target)):
                    raise BracketingError(
                        f"piece {i} of the discriminant does not reach {target:+.0f}"
                    )
                edges.append((x0, x1)[k])
        bands[i] = sorted(edges)

    touching = []
    for i in range(q - 1):
        if abs(bands[i + 1, 0] - bands[i, 1]) <= TOUCH_TOL:
            m = 0.5 * (bands[i + 1, 0] + bands[i, 1])
            bands[i, 1] = bands[i + 1, 0] = m
            touching.append(i)
    if np.any(np.diff(bands.ravel()) < -TOUCH_TOL):
        raise BracketingError("band edges are not ordered")
    return BandSet(bands, SpectrumKind.ABSOLUTELY_CONTINUOUS, tuple(touching))


def bloch_matrices(a: np.ndarray, kappa: np.ndarray) -> np.ndarray:
    """Stack of ``q x q`` Bloch matrices, corner couplings carry ``e^{+-i kappa}``."""
    q = a.size
    kappa = np.asarray(kappa, dtype=float)
    H = np.zeros((kappa.size, q, q), dtype=complex)
    phase = np.exp(1j * kappa)
    for j in range(q):
        k = (j + 1) % q
        c = a[j] * (phase if k <= j else 1.0)
        H[:, k, j] += c
        H[:, j, k] += np.conj(c)
    return H


def bands_bloch_oracle(window: CoefficientWindow, n_kappa: int = 2001) -> BandSet:
    """Bands as ranges of the sorted Bloch eigenvalues over ``kappa in [0, pi]``."""
    a = _period_coefficients(window)
    kappa = np.linspace(0.0, np.pi, n_kappa)
    ev = np.linalg.eigvalsh(bloch_matrices(a, kappa))
    bands = np.column_stack((ev.min(axis=0), ev.max(axis=0)))
    touching = tuple(i for i in range(len(bands) - 1)
                     if abs(bands[i + 1, 0] - bands[i, 1]) <= TOUCH_TOL)
    return BandSet(bands, SpectrumKind.ABSOLUTELY_CONTINUOUS, touching)


def _block_spectra(a: np.ndarray, start: int) -> np.ndarray:
    """Eigenvalues of the blocks between consecutive zeros, one period from ``start``."""
    q = a.size
    zeros = [z for z in range(start, start + q) if a[z % q] == 0.0]
    pts = []
    for i, z in enumerate(zeros):
        z_next = zeros[i + 1] if i + 1 < len(zeros) else zeros[0] + q
        off = a[[j % q for j in range(z + 1, z_next)]]
        pts.append(eigenvalues(TruncatedJacobi(off)))
    return _dedupe(np.concatenate(pts))


def _dedupe(x: np.ndarray, tol: float = POINT_TOL) -> np.ndarray:
    x = np.sort(x)
    keep = np.concatenate(([True], np.diff(x) > tol))
    return x[keep]


def blocks_degenerate(window: CoefficientWindow) -> BandSet:
    """Point spectrum of a period containing zero couplings.

    Each pair of neighbouring zeros ``j < k`` cuts out the finite block on
    sites ``j+1..k``; the spectrum is the union of the block spectra.
    """
    q = window.period
    a = window.one_period()
    if not np.any(a == 0.0):
        raise ProfileError("no zero coefficient in the period; use the band path")
    pts = _block_spectra(a, 0)
    if len(window) >= 2 * q:
        # a second period read from the window itself (true signs)
        other = _block_spectra(window.a[q: 2 * q], 0)
        if other.size != pts.size or np.max(np.abs(other - pts)) > POINT_TOL:
            raise ProfileError("block spectra differ between periods; zeros misclassified")
    return BandSet.from_points(pts)


def discrete_spectrum(window: CoefficientWindow) -> BandSet:
    """Spectrum of the periodic Jacobi operator, band or point type as appropriate."""
    if window.period is None:
        raise ProfileError("periodic spectrum needs a window with a period")
    if np.any(window.one_period() == 0.0):
        return blocks_degenerate(window)
    return bands_nondegenerate(window)


def periodic_window(profile: FieldProfile, periods: int = 2) -> CoefficientWindow:
    """Coefficient window over ``periods`` full periods starting at ``j = 0``."""
    q = profile_period(profile)
    if q is None:
        raise ProfileError("profile is not periodic (irrational slope or explicit window)")
    return evaluate_profile(profile, 0, periods * q - 1)


def profile_spectrum(profile: FieldProfile) -> BandSet:
    return discrete_spectrum(periodic_window(profile))
