"""Finite sections of the zero-diagonal Jacobi operator.

``(L phi)_j = a_j phi_{j+1} + a_{j-1} phi_{j-1}``.  Sections are hard
(Dirichlet) truncations; eigenvalues come from Sturm-sequence bisection,
which also gives eigenvalue counts in intervals for free.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import linalg

from .profiles import CoefficientWindow, ProfileError

EIG_TOL = 1e-10


@dataclass
class TruncatedJacobi:
    """Zero-diagonal symmetric tridiagonal matrix on sites ``j_lo..j_lo+n-1``."""

    off_diagonal: np.ndarray
    j_lo: int = 0

    def __post_init__(self):
        self.off_diagonal = np.asarray(self.off_diagonal, dtype=float).ravel()

    @property
    def n(self) -> int:
        return self.off_diagonal.size + 1

    @property
    def j_hi(self) -> int:
        return self.j_lo + self.n - 1

    def to_dense(self) -> np.ndarray:
        b = self.off_diagonal
        return np.diag(b, 1) + np.diag(b, -1)

    def gershgorin(self) -> float:
        b = np.abs(self.off_diagonal)
        if b.size == 0:
            return 0.0
        return float(np.max(np.concatenate(([0.0], b)) + np.concatenate((b, [0.0]))))


@dataclass
class SignGauge:
    """Diagonal unitary ``(U phi)_j = u_j phi_j`` with ``u_0 = 1``."""

    u: np.ndarray

    def matrix(self) -> np.ndarray:
        return np.diag(self.u)


def truncate(window: CoefficientWindow, j_lo: int, j_hi: int) -> TruncatedJacobi:
    """Section on sites ``j_lo..j_hi``; couplings leaving the box are dropped."""
    if j_lo > j_hi:
        raise ProfileError(f"empty truncation range [{j_lo}, {j_hi}]")
    if not window.covers(j_lo, j_hi):
        raise ProfileError(
            f"window [{window.j_lo}, {window.j_hi}] does not cover [{j_lo}, {j_hi}]"
        )
    start = j_lo - window.j_lo
    return TruncatedJacobi(window.a[start: start + (j_hi - j_lo)].copy(), j_lo)


def sturm_count(off_diagonal: np.ndarray, x) -> np.ndarray:
    """Number of eigenvalues strictly below each ``x`` (vectorised over ``x``).

    Only ``b_i**2`` enters the recurrence, so the count is blind to the
    signs of the off-diagonal.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    b2 = np.asarray(off_diagonal, dtype=float) ** 2
    scale = max(1.0, float(np.sqrt(b2.max()))) if b2.size else 1.0
    pivmin = np.finfo(float).tiny * 1e4 * scale * scale
    d = -x.copy()
    d[np.abs(d) < pivmin] = -pivmin
    count = (d < 0).astype(np.int64)
    for bb in b2:
        d = -x - bb / d
        d[np.abs(d) < pivmin] = -pivmin
        count += d < 0
    return count


def count_in_interval(T: TruncatedJacobi, lo: float, hi: float) -> int:
    """Eigenvalues in the half-open interval ``[lo, hi)``."""
    c = sturm_count(T.off_diagonal, [lo, hi])
    return int(c[1] - c[0])


def _bisection_eigenvalues(b: np.ndarray, tol: float) -> np.ndarray:
    n = b.size + 1
    r = TruncatedJacobi(b).gershgorin()
    r = r * (1 + 1e-12) + 1e-300
    k = np.arange(n)
    lo = np.full(n, -r)
    hi = np.full(n, r)
    # invariant: count(lo) <= k < count(hi)
    for _ in range(int(np.ceil(np.log2(2 * r / tol))) + 1):
        mid = 0.5 * (lo + hi)
        below = sturm_count(b, mid) <= k
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return 0.5 * (lo + hi)


def eigenvalues(T: TruncatedJacobi, method: str = "bisection") -> np.ndarray:
    """All eigenvalues in ascending order.

    ``method="bisection"`` is the Sturm-sequence reference path; ``"lapack"``
    uses LAPACK's tridiagonal solver.  Both meet an absolute accuracy of
    ``1e-10 * max(1, spectral radius)``.
    """
    b = T.off_diagonal
    if T.n == 1:
        return np.zeros(1)
    if method == "lapack":
        return linalg.eigvalsh_tridiagonal(np.zeros(T.n), b)
    if method != "bisection":
        raise ValueError(f"unknown method {method!r}")
    tol = 1e-3 * EIG_TOL * max(1.0, T.gershgorin())
    return _bisection_eigenvalues(b, tol)


def sign_gauge(original: np.ndarray, target: np.ndarray) -> SignGauge:
    """Gauge ``u`` with ``L_target = U L_original U^{-1}``.

    ``u_{j+1} = s_j u_j`` where ``s_j = -1`` exactly when the sign of the
    coupling between sites ``j`` and ``j+1`` flips.
    """
    original = np.asarray(original, dtype=float)
    target = np.asarray(target, dtype=float)
    if original.shape != target.shape:
        raise ValueError("coupling sequences differ in length")
    if not np.allclose(np.abs(original), np.abs(target), rtol=0, atol=1e-14):
        raise ValueError("sign gauge needs |a_j| = |a~_j|")
    s = np.where(np.sign(original) * np.sign(target) < 0, -1.0, 1.0)
    return SignGauge(np.concatenate(([1.0], np.cumprod(s))))


def apply_sign_gauge(T: TruncatedJacobi, target_signs) -> TruncatedJacobi:
    """Same moduli ``|a_j|``, signs replaced by ``target_signs``; isospectral to ``T``."""
    signs = np.asarray(target_signs, dtype=float).ravel()
    if signs.size != T.off_diagonal.size:
        raise ValueError(
            f"expected {T.off_diagonal.size} signs, got {signs.size}"
        )
    if not np.all(np.abs(signs) == 1.0):
        raise ValueError("target signs must be +1 or -1")
    return TruncatedJacobi(np.abs(T.off_diagonal) * signs, T.j_lo)


def norm_bound(window: CoefficientWindow) -> float:
    """``sup_j (|a_{j-1}| + |a_j|)``; the spectrum lies in ``[-bound, bound]``.

    Periodic windows are wrapped around one period, so ``a_{-1}`` is taken
    as ``a_{q-1}`` (equal in modulus).
    """
    if window.period is not None and len(window) >= window.period:
        a = np.abs(window.one_period())
        return float(np.max(np.roll(a, 1) + a))
    a = np.abs(window.a)
    if a.size == 1:
        return float(2 * a[0])
    return float(np.max(a[:-1] + a[1:]))
