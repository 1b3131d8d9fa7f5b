"""Finite-difference model of the gauge-transformed chain Hamiltonian.

The magnetic potential is gauged onto the vertices: each semicircle carries
the free operator ``-d^2/dx^2`` on ``(0, pi)`` and the phases
``exp(+-i pi A_j)`` appear only where an edge of ring ``j`` enters vertex
``j+1``.  Unknowns are the vertex values ``Phi_j`` (``j = 0..R``) and ``M``
interior points on each of the ``2R`` edges.

The scheme comes from the discrete quadratic form

    sum_edges sum_m |psi_{m+1} - psi_m|^2 / h + gamma sum_j |Phi_j|^2

with lumped mass ``h`` per edge node and ``deg(v) * h / 2`` per vertex.  The
vertex rows then encode the delta condition with one-sided differences; the
symmetric scaling ``W^{-1/2} K W^{-1/2}`` makes the matrix itself Hermitian.
End vertices have degree 2 (exterior edges dropped).

The open ends of the truncated chain carry boundary states whose energies
sit inside spectral gaps and do not move as ``M`` or ``R`` grows;
:func:`boundary_weight` measures how much of an eigenvector lives near the
ends so such states can be told apart from bulk states.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import linalg

from .profiles import FieldProfile, Linear, ProfileError, is_half_integer, is_integer
from .spectrum import GraphSpectrum

@dataclass
class DiscretizedChain:
    """Assembled Hermitian matrix plus the bookkeeping needed to read it."""

    rings: int
    points_per_edge: int
    gamma: float
    potentials: np.ndarray
    matrix: np.ndarray
    vertex_scaling: dict = field(default_factory=dict)

    @property
    def h(self) -> float:
        return math.pi / (self.points_per_edge + 1)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def edge_slice(self, ring: int, upper: bool) -> slice:
        M = self.points_per_edge
        start = self.rings + 1 + (2 * ring + (0 if upper else 1)) * M
        return slice(start, start + M)

    def hermiticity_residual(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)))


def _potentials(profile: FieldProfile, R: int) -> np.ndarray:
    return np.array([float(profile.potential(j)) for j in range(R)])


def _phase(a, upper: bool) -> complex:
    """``exp(+-i pi a)``, exact when ``a`` is an integer or a half-integer."""
    if is_integer(a):
        return complex(1 - 2 * (round(a) % 2))
    if is_half_integer(a):
        sign = 1 - 2 * (math.floor(a) % 2)
        return complex(0.0, sign if upper else -sign)
    return complex(np.exp((1j if upper else -1j) * math.pi * float(a)))


def _forms(profile: FieldProfile, gamma: float, R: int, M: int):
    """Stiffness matrix ``K`` and lumped mass diagonal ``w``."""
    h = math.pi / (M + 1)
    n = (R + 1) + 2 * R * M
    K = np.zeros((n, n), dtype=complex)
    w = np.zeros(n)
    A = _potentials(profile, R)
    exact = [profile.potential(j) for j in range(R)]

    for j in range(R):
        for upper in (True, False):
            phase = _phase(exact[j], upper)
            first = R + 1 + (2 * j + (0 if upper else 1)) * M
            # node chain Phi_j, psi_1..psi_M, then Phi_{j+1} seen through the phase
            nodes = [j, *range(first, first + M), j + 1]
            coef = [1.0] * (M + 1) + [phase]
            for k in range(M + 1):
                u, v = nodes[k], nodes[k + 1]
                cu, cv = coef[k], coef[k + 1]
                # cell energy |cv x_v - cu x_u|^2 / h
                K[u, u] += 1.0 / h
                K[v, v] += 1.0 / h
                K[u, v] -= np.conj(cu) * cv / h
                K[v, u] -= np.conj(cv) * cu / h
                w[u] += 0.5 * h
                w[v] += 0.5 * h
    K[np.arange(R + 1), np.arange(R + 1)] += gamma
    return K, w, A


def assemble_fd(profile: FieldProfile, gamma: float, R: int, M: int) -> DiscretizedChain:
    """Discretise ``R`` rings with ``M`` interior points per semicircle.

    Rows are scaled by ``w^{-1/2}`` on both sides, where ``w`` is the lumped
    mass (``h`` on edges, ``deg * h / 2`` on vertices); the scaling factors
    are kept in ``vertex_scaling``.
    """
    if R < 2 or M < 8:
        raise ValueError("need R >= 2 rings and M >= 8 points per edge")
    K, w, A = _forms(profile, gamma, R, M)
    s = 1.0 / np.sqrt(w)
    H = s[:, None] * K * s[None, :]
    H = 0.5 * (H + H.conj().T)
    scaling = {"interior_vertex": float(s[1]), "end_vertex": float(s[0]),
               "edge": float(s[R + 1])}
    return DiscretizedChain(R, M, gamma, A, H, scaling)


def fd_eigenvalues(chain: DiscretizedChain, e_max: float) -> np.ndarray:
    """Eigenvalues ``<= e_max`` in ascending order."""
    if e_max <= 0:
        raise ValueError("e_max must be positive")
    H = chain.matrix
    if np.all(H.imag == 0):
        H = H.real
    return linalg.eigh(H, eigvals_only=True, subset_by_value=(-np.inf, e_max))


@dataclass
class VerificationReport:
    max_distance: float
    mean_distance: float
    n_eigs: int
    per_branch_counts: dict
    passed: bool
    params: dict
    distances: list = field(default_factory=list, repr=False)

    def to_json(self) -> str:
        d = {"max_distance": self.max_distance, "mean_distance": self.mean_distance,
             "n_eigs": self.n_eigs, "per_branch_counts": self.per_branch_counts,
             "pass": self.passed, "params": self.params}
        return json.dumps(d, indent=2, sort_keys=True)


def compare_to_prediction(eigs, predicted: GraphSpectrum, tol: float,
                          params: dict | None = None) -> VerificationReport:
    """Distance of each oracle eigenvalue to ``union sigma_n  union  {n^2}``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    eigs = np.asarray(eigs, dtype=float)
    if eigs.size == 0:
        raise ValueError("no eigenvalues to compare")
    d = predicted.distance(eigs)
    counts: dict = {}
    for z in eigs:
        label = predicted.nearest_part(float(z))
        counts[label] = counts.get(label, 0) + 1
    mx = float(d.max())
    return VerificationReport(mx, float(d.mean()), int(eigs.size), counts,
                              bool(mx <= tol), dict(params or {}), d.tolist())


# -- eigenfunctions supported on one or two rings ---------------------------------

@dataclass
class ResidualReport:
    continuity: float
    balance: float
    ode: float
    norm: float

    @property
    def max(self) -> float:
        return max(self.continuity, self.balance, self.ode)


def _s(x, k):
    return np.sin(k * x) / k


def _ds(x, k):
    return np.cos(k * x)


def _d2s(x, k):
    return -k * np.sin(k * x)


def loop_eigenfunction(k: int, case: str, j: int, profile: FieldProfile,
                       tol_zero: float = 1e-12) -> dict:
    """Coefficients of the compact eigenfunction for ``k^2``.

    Returns ``{(ring, "U"|"L"): (c, shift)}``: on that edge
    ``psi(x) = c * s(x - shift; k^2)`` with ``s(x; k^2) = sin(kx)/k``.
    ``case="integer"`` needs ``A_j`` integral and lives on ring ``j``;
    ``case="generic"`` needs ``A_{j-1}, A_j`` non-integral and lives on
    rings ``j-1`` and ``j``.
    """
    Aj = profile.potential(j)
    if case == "integer":
        if not is_integer(Aj, tol_zero):
            raise ProfileError(f"A_{j} = {Aj} is not an integer")
        return {(j, "U"): (1.0, 0.0), (j, "L"): (-1.0, 0.0)}
    if case == "generic":
        Ajm = profile.potential(j - 1)
        if is_integer(Aj, tol_zero) or is_integer(Ajm, tol_zero):
            raise ProfileError(f"A_{j - 1} or A_{j} is an integer")
        sj, sjm = math.sin(math.pi * float(Aj)), math.sin(math.pi * float(Ajm))
        e = np.exp(1j * math.pi * float(Aj))
        return {(j - 1, "U"): (sj, 0.0), (j - 1, "L"): (-sj, 0.0),
                (j, "U"): (-sjm * e, math.pi), (j, "L"): (sjm * np.conj(e), math.pi)}
    raise ValueError(f"unknown case {case!r}")


def loop_state_residual(k: int, case: str, j: int, profile: FieldProfile,
                          gamma: float, samples: int = 64) -> ResidualReport:
    """Check the vertex conditions and the ODE for a compact eigenfunction.

    Both vertex conditions are evaluated at every vertex touching the
    support (``j-1 .. j+2``); the ODE residual ``-psi'' - k^2 psi`` is sampled
    on every supporting edge.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    coeffs = loop_eigenfunction(k, case, j, profile)
    rings = sorted({r for r, _ in coeffs})

    def edge(r, side):
        return coeffs.get((r, side), (0.0, 0.0))

    def val(r, side, x):
        c, sh = edge(r, side)
        return c * _s(x - sh, k)

    def der(r, side, x):
        c, sh = edge(r, side)
        return c * _ds(x - sh, k)

    cont, bal = 0.0, 0.0
    for v in range(rings[0], rings[-1] + 2):
        Ap = math.pi * float(profile.potential(v - 1))
        vals = [val(v, "U", 0.0), val(v, "L", 0.0),
                np.exp(-1j * Ap) * val(v - 1, "U", math.pi),
                np.exp(1j * Ap) * val(v - 1, "L", math.pi)]
        cont = max(cont, max(abs(a - b) for a in vals for b in vals))
        lhs = (-np.exp(-1j * Ap) * der(v - 1, "U", math.pi)
               - np.exp(1j * Ap) * der(v - 1, "L", math.pi)
               + der(v, "U", 0.0) + der(v, "L", 0.0))
        bal = max(bal, abs(lhs - gamma * vals[0]))

    x = np.linspace(0.0, math.pi, samples)
    ode, norm2 = 0.0, 0.0
    for (r, side), (c, sh) in coeffs.items():
        psi = c * _s(x - sh, k)
        ode = max(ode, float(np.max(np.abs(-c * _d2s(x - sh, k) - k * k * psi))))
        norm2 += float(np.trapezoid(np.abs(psi) ** 2, x))
    return ResidualReport(float(cont), float(bal), ode, math.sqrt(norm2))


def verify(profile: FieldProfile, gamma: float, R: int, M: int, e_max: float,
           tol: float) -> VerificationReport:
    """Full oracle run: assemble, diagonalise, compare with the dual prediction."""
    from .spectrum import assemble

    n_max = max(0, math.ceil(math.sqrt(max(e_max, 0.0))))
    predicted = assemble(profile, gamma, n_max)
    chain = assemble_fd(profile, gamma, R, M)
    eigs = fd_eigenvalues(chain, e_max)
    params = {"gamma": gamma, "rings": R, "points": M, "emax": e_max, "tol": tol,
              "profile": _profile_label(profile),
              "vertex_scaling": chain.vertex_scaling}
    return compare_to_prediction(eigs, predicted, tol, params)


def boundary_weight(chain: DiscretizedChain, e_max: float, end_rings: int = 2):
    """Eigenvalues ``<= e_max`` and the squared eigenvector mass on the end rings.

    The mass counts the first and last ``end_rings`` rings together with their
    vertices; a value near 1 marks a state bound to the chain ends.
    """
    H = chain.matrix
    vals, vecs = linalg.eigh(H, subset_by_value=(-np.inf, e_max))
    R, k = chain.rings, end_rings
    rows = list(range(0, k + 1)) + list(range(R - k, R + 1))
    for ring in list(range(k)) + list(range(R - k, R)):
        for upper in (True, False):
            sl = chain.edge_slice(ring, upper)
            rows.extend(range(sl.start, sl.stop))
    weight = np.sum(np.abs(vecs[sorted(set(rows))]) ** 2, axis=0)
    return vals, weight


def _profile_label(profile: FieldProfile) -> str:
    if isinstance(profile, Linear):
        return f"linear alpha={profile.alpha} theta={profile.theta}"
    return repr(profile)
