"""Spectrum of the magnetic chain graph assembled from the dual operator.

The graph spectrum is the Dirichlet set ``{n^2 : n >= 1}`` together with
the parts ``sigma_n = eta^{-1}(sigma(L)) intersected with I_n``.  Because
``eta`` is monotone on each branch, bands map to bands and points to points.

Also here: measure and box-counting estimates used as Cantor-set evidence
along rational approximants, and the Hofstadter-style sweep over ``p/q``.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from .eta import BranchInterval, branch_intervals, eta_prime, preimage_on_branch
from .floquet import BandSet, SpectrumKind, periodic_window, profile_spectrum
from .jacobi import norm_bound
from .profiles import FieldProfile, Linear, Real, degenerate_flux_check

GAP_TOUCH_TOL = 1e-9


@dataclass
class SpectralPart:
    """``sigma_n`` in graph-energy coordinates."""

    n: int
    intervals: np.ndarray
    kind: SpectrumKind

    @property
    def hull(self) -> tuple[float, float]:
        return float(self.intervals[:, 0].min()), float(self.intervals[:, 1].max())

    @property
    def measure(self) -> float:
        if self.kind is SpectrumKind.PURE_POINT:
            return 0.0
        return float(np.sum(self.intervals[:, 1] - self.intervals[:, 0]))


@dataclass
class Gap:
    """Open interval between the hulls of ``sigma_{n-1}`` and ``sigma_n``."""

    n: int
    lo: float
    hi: float
    touching: bool

    @property
    def length(self) -> float:
        return max(0.0, self.hi - self.lo)

    def contains_dirichlet(self) -> bool:
        return self.lo < self.n ** 2 < self.hi


@dataclass
class GraphSpectrum:
    gamma: float
    profile: FieldProfile | None
    n_max: int
    discrete: BandSet
    branches: list[BranchInterval]
    parts: list[SpectralPart]
    gaps: list[Gap] = field(default_factory=list)

    @property
    def dirichlet_points(self) -> np.ndarray:
        return np.arange(1, self.n_max + 1, dtype=float) ** 2

    @property
    def kind(self) -> SpectrumKind:
        return self.discrete.kind

    def distance(self, z) -> np.ndarray:
        """Distance from each ``z`` to the union of all parts and Dirichlet points."""
        z = np.atleast_1d(np.asarray(z, dtype=float))
        iv = np.vstack([p.intervals for p in self.parts]
                       + [np.column_stack((self.dirichlet_points,) * 2)])
        zz = z[:, None]
        d = np.maximum(np.maximum(iv[:, 0] - zz, zz - iv[:, 1]), 0.0)
        return d.min(axis=1)

    def contains(self, z, tol: float = 0.0) -> np.ndarray:
        return self.distance(z) <= tol

    def nearest_part(self, z: float) -> str:
        """Label of the closest component: branch index or ``"D"`` for Dirichlet."""
        best, label = math.inf, "D"
        for p in self.parts:
            lo, hi = p.intervals[:, 0], p.intervals[:, 1]
            d = float(np.min(np.maximum(np.maximum(lo - z, z - hi), 0.0)))
            if d < best:
                best, label = d, str(p.n)
        dd = float(np.min(np.abs(self.dirichlet_points - z))) if self.n_max else math.inf
        return "D" if dd < best else label


def map_to_branch(discrete: BandSet, gamma: float, branch: BranchInterval) -> SpectralPart:
    """Pull ``discrete`` back through ``eta`` restricted to one branch."""
    flat = discrete.intervals.ravel()
    z = np.empty_like(flat)
    for i, lam in enumerate(flat):
        zi = preimage_on_branch(float(lam), gamma, branch)
        if zi is None:
            raise ValueError(f"lambda = {lam} has no preimage in I_{branch.n}")
        z[i] = zi
    z = z.reshape(-1, 2)
    z.sort(axis=1)
    return SpectralPart(branch.n, z[np.argsort(z[:, 0])], discrete.kind)


def _gaps(parts: list[SpectralPart]) -> list[Gap]:
    gaps = []
    for prev, cur in zip(parts, parts[1:]):
        lo, hi = prev.hull[1], cur.hull[0]
        touching = hi - lo <= GAP_TOUCH_TOL
        gaps.append(Gap(cur.n, lo, max(lo, hi) if touching else hi, touching))
    return gaps


def assemble_from_discrete(discrete: BandSet, gamma: float, n_max: int,
                           profile: FieldProfile | None = None) -> GraphSpectrum:
    branches = branch_intervals(gamma, n_max)
    parts = [map_to_branch(discrete, gamma, b) for b in branches]
    return GraphSpectrum(gamma, profile, n_max, discrete, branches, parts, _gaps(parts))


def assemble(profile: FieldProfile, gamma: float, n_max: int) -> GraphSpectrum:
    """Graph spectrum below ``(n_max + 1)^2`` for a periodic profile."""
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    return assemble_from_discrete(profile_spectrum(profile), gamma, n_max, profile)


def total_measure(S: GraphSpectrum | BandSet) -> float:
    """Lebesgue measure: discrete bands, or the sum over parts in graph coordinates."""
    if isinstance(S, BandSet):
        return S.measure
    return float(sum(p.measure for p in S.parts))


def inverse_lipschitz(part: SpectralPart, gamma: float, samples: int = 256) -> float:
    """Sampled ``max |1 / eta'|`` over the hull of a part."""
    lo, hi = part.hull
    z = np.linspace(lo, hi, samples)
    return float(np.max(1.0 / np.abs(eta_prime(z, gamma))))


# -- box counting -----------------------------------------------------------------

@dataclass
class DimensionEstimate:
    dimension: float
    residual: float
    scales: np.ndarray
    counts: np.ndarray

    def __float__(self) -> float:
        return self.dimension


def box_count(intervals: np.ndarray, width: float) -> int:
    """Number of grid cells ``[k w, (k+1) w)`` meeting the union of intervals."""
    iv = np.asarray(intervals, dtype=float).reshape(-1, 2)
    first = np.floor(iv[:, 0] / width).astype(np.int64)
    last = np.floor(iv[:, 1] / width).astype(np.int64)
    order = np.argsort(first)
    first, last = first[order], last[order]
    total, cur_lo, cur_hi = 0, first[0], last[0]
    for f, l in zip(first[1:], last[1:]):
        if f > cur_hi:
            total += cur_hi - cur_lo + 1
            cur_lo, cur_hi = f, l
        else:
            cur_hi = max(cur_hi, l)
    return int(total + cur_hi - cur_lo + 1)


def box_dimension_estimate(S: BandSet | GraphSpectrum, scales) -> DimensionEstimate:
    """Least-squares slope of ``log N(w)`` against ``log(1/w)``.

    Needs at least 4 scales spanning two decades.  A constant count is a
    valid fit (slope 0, e.g. a finite point set at fine scales); an empty
    set is not.
    """
    scales = np.sort(np.asarray(scales, dtype=float))[::-1]
    if scales.size < 4 or np.any(scales <= 0):
        raise ValueError("need at least 4 positive box widths")
    if scales[0] / scales[-1] < 100 * (1 - 1e-12):
        raise ValueError("box widths must span at least two decades")
    if isinstance(S, GraphSpectrum):
        iv = np.vstack([p.intervals for p in S.parts])
    else:
        iv = S.intervals
    if iv.size == 0:
        raise ValueError("cannot estimate the dimension of an empty set")
    counts = np.array([box_count(iv, w) for w in scales], dtype=float)
    if np.all(counts == counts[0]):
        return DimensionEstimate(0.0, 0.0, scales, counts.astype(int))
    x, y = np.log(1.0 / scales), np.log(counts)
    (slope, icpt), res, *_ = np.polyfit(x, y, 1, full=True)
    resid = float(np.sqrt(res[0] / x.size)) if res.size else 0.0
    return DimensionEstimate(float(slope), resid, scales, counts.astype(int))


# -- rational approximants ---------------------------------------------------------

def continued_fraction(x: Real, depth: int) -> list[int]:
    """First ``depth`` partial quotients of ``x``."""
    out = []
    x = Fraction(x) if isinstance(x, (int, Fraction)) else x
    for _ in range(depth):
        a = math.floor(x)
        out.append(int(a))
        frac = x - a
        if frac == 0 or (not isinstance(frac, Fraction) and frac < 1e-15):
            break
        x = 1 / frac
    return out


def convergents(x: Real, depth: int) -> list[Fraction]:
    h0, h1, k0, k1 = 0, 1, 1, 0
    out = []
    for a in continued_fraction(x, depth):
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        out.append(Fraction(h1, k1))
    return out


def golden_convergents(depth: int) -> list[Fraction]:
    """``F_k / F_{k+1}`` for ``q = 2, 3, 5, 8, ...`` (approximants of ``1/phi``)."""
    out = []
    p, q = 1, 2
    for _ in range(depth):
        out.append(Fraction(p, q))
        p, q = q, p + q
    return out


# -- butterfly ---------------------------------------------------------------------

@dataclass(frozen=True)
class ButterflyRow:
    p: int
    q: int
    theta: Real
    n: int  # -1 for rows in discrete (Jacobi) coordinates
    lo: float
    hi: float
    kind: str


def farey_fractions(q_max: int) -> list[Fraction]:
    """Reduced ``p/q`` in ``[0, 1]`` with ``q <= q_max``; ``0/1`` and ``1/1`` included."""
    fr = [Fraction(0), Fraction(1)]
    fr += [Fraction(p, q) for q in range(2, q_max + 1) for p in range(1, q)
           if math.gcd(p, q) == 1]
    return sorted(fr)


def _butterfly_rows(args) -> list[ButterflyRow]:
    alpha, theta, gamma, coordinates, n_max = args
    prof = Linear(alpha, theta)
    spec = profile_spectrum(prof)
    kind = spec.kind.value
    p, q = alpha.numerator, alpha.denominator
    if coordinates == "discrete":
        return [ButterflyRow(p, q, theta, -1, float(lo), float(hi), kind)
                for lo, hi in spec.intervals]
    g = assemble_from_discrete(spec, gamma, n_max, prof)
    return [ButterflyRow(p, q, theta, part.n, float(lo), float(hi), kind)
            for part in g.parts for lo, hi in part.intervals]


def butterfly(q_max: int, theta: Real = Fraction(0), gamma: float = 0.0,
              coordinates: str = "discrete", n_max: int = 3,
              theta_sweep: int | None = None, workers: int = 1) -> list[ButterflyRow]:
    """Spectra of ``L_{p/q, theta}`` for all reduced ``p/q`` in ``[0, 1]``, ``q <= q_max``.

    ``coordinates="graph"`` maps every row through ``eta`` into ``I_0..I_{n_max}``.
    ``theta_sweep=k`` replaces the single ``theta`` by ``0, 1/k, ..., (k-1)/k``.
    """
    if q_max < 1:
        raise ValueError("q_max must be at least 1")
    if coordinates not in ("discrete", "graph"):
        raise ValueError(f"unknown coordinates {coordinates!r}")
    thetas = [Fraction(i, theta_sweep) for i in range(theta_sweep)] if theta_sweep else [theta]
    jobs = [(alpha, th, gamma, coordinates, n_max)
            for alpha in farey_fractions(q_max) for th in thetas]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            chunks = list(ex.map(_butterfly_rows, jobs))
    else:
        chunks = [_butterfly_rows(j) for j in jobs]
    rows = [r for c in chunks for r in c]
    rows.sort(key=lambda r: (Fraction(r.p, r.q), r.theta, r.n, r.lo))
    return rows


def expected_butterfly_rows(q_max: int, n_branches: int = 1, n_theta: int = 1) -> int:
    """Row count of a sweep: each reduced ``p/q`` contributes ``q`` rows per branch."""
    return n_theta * n_branches * sum(f.denominator for f in farey_fractions(q_max))


# -- convergent sweeps -------------------------------------------------------------

@dataclass
class MeasureRow:
    p: int
    q: int
    total_measure: float
    box_dimension: float


DEFAULT_SCALES = np.logspace(0, -4, 9)


def measure_sweep(alphas: Iterable[Fraction], theta: Real = 0.123,
                  scales=DEFAULT_SCALES) -> list[MeasureRow]:
    """Discrete measure and box-dimension estimate for each rational slope."""
    rows = []
    for alpha in alphas:
        spec = profile_spectrum(Linear(alpha, theta))
        dim = box_dimension_estimate(spec, scales).dimension
        rows.append(MeasureRow(alpha.numerator, alpha.denominator, spec.measure, dim))
    return rows


def dichotomy_matches(alpha: Fraction, theta: Real) -> bool:
    """Assembled kind agrees with the arithmetic degeneracy test."""
    degenerate = degenerate_flux_check(Linear(alpha, theta)) is not None
    kind = profile_spectrum(Linear(alpha, theta)).kind
    return degenerate == (kind is SpectrumKind.PURE_POINT)


def zero_in_spectrum(profile: FieldProfile, gamma: float,
                     tol: float = 1e-12) -> tuple[bool, bool]:
    """``(0 in graph spectrum, gamma*pi + 4 in sigma(L))``; equal by duality."""
    g = assemble(profile, gamma, 0)
    lhs = bool(g.distance(0.0)[0] <= tol)
    rhs = bool(g.discrete.contains(gamma * math.pi + 4.0, tol)[0])
    return lhs, rhs


def window_norm_bound(profile: FieldProfile) -> float:
    return norm_bound(periodic_window(profile))
