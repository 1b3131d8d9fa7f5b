"""The entire function linking graph energies to the dual Jacobi spectrum.

    eta(z) = gamma * sin(pi sqrt z) / sqrt z + 4 cos(pi sqrt z)

with the hyperbolic continuation for ``z < 0`` and ``eta(0) = gamma*pi + 4``.
A graph energy ``z`` off the Dirichlet set ``{n^2}`` is in the spectrum iff
``eta(z)`` is in the spectrum of the Jacobi operator.  The preimage of
``[-4, 4]`` splits into branch intervals ``I_n`` on which ``eta`` is monotone.

Endpoint equations ``eta = +-4`` are solved in factored form, e.g. for
``z = (n + u)^2``::

    (-1)^n eta - 4 = sin(pi u) * (gamma / (n + u) - 4 tan(pi u / 2))

which removes the cancellation near ``n^2`` and leaves a single monotone
equation per endpoint.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

ROOT_TOL = 1e-10
SERIES_RADIUS = 1e-8
ENDPOINT_SLACK = 1e-12
GAMMA_CRIT = 8.0 / math.pi
# eta'(0) = -pi^2 (gamma pi / 6 + 2): the minimum of eta on (-inf, 1) sits at
# z >= 0 exactly when gamma >= -12/pi
GAMMA_TURN = 12.0 / math.pi


class MonotonicityError(RuntimeError):
    """``eta`` failed the monotonicity check on a branch interval."""


def eta(z, gamma: float):
    """Evaluate ``eta`` at real ``z`` (scalar or array)."""
    z_arr = np.asarray(z, dtype=float)
    out = np.empty_like(z_arr)
    pos = z_arr >= SERIES_RADIUS
    neg = z_arr <= -SERIES_RADIUS
    small = ~(pos | neg)

    w = np.sqrt(z_arr[pos])
    out[pos] = gamma * np.sin(np.pi * w) / w + 4.0 * np.cos(np.pi * w)

    k = np.sqrt(-z_arr[neg])
    out[neg] = gamma * np.sinh(np.pi * k) / k + 4.0 * np.cosh(np.pi * k)

    # sin(pi w)/w = pi (1 - x/6 + x^2/120),  cos(pi w) = 1 - x/2 + x^2/24,  x = pi^2 z
    x = np.pi ** 2 * z_arr[small]
    out[small] = (gamma * np.pi * (1.0 - x / 6.0 + x * x / 120.0)
                  + 4.0 * (1.0 - x / 2.0 + x * x / 24.0))
    if np.ndim(z) == 0:
        return float(out)
    return out


def eta_prime(z, gamma: float):
    """Central-difference derivative, step ``1e-6 * max(1, |z|)``; used for signs."""
    z = np.asarray(z, dtype=float)
    h = 1e-6 * np.maximum(1.0, np.abs(z))
    d = (eta(z + h, gamma) - eta(z - h, gamma)) / (2 * h)
    return float(d) if np.ndim(d) == 0 else d


@dataclass(frozen=True)
class BranchInterval:
    """``I_n`` with endpoint kinds; ``direction`` is the sign of ``eta'`` inside."""

    n: int
    lo: float
    hi: float
    lo_closed: bool
    hi_closed: bool
    direction: int

    def __contains__(self, z) -> bool:
        # numerical set operations treat every branch as closed
        return self.lo <= z <= self.hi

    def eta_range(self, gamma: float) -> tuple[float, float]:
        e0, e1 = eta(self.lo, gamma), eta(self.hi, gamma)
        return (min(e0, e1), max(e0, e1))


def _increasing_root(f, x0: float, x1: float, xtol: float = 1e-15) -> float:
    # f is increasing; a root within rounding of a bracket end is that end
    if f(x0) >= 0:
        return x0
    if f(x1) <= 0:
        return x1
    return optimize.brentq(f, x0, x1, xtol=xtol, rtol=1e-15, maxiter=500)


def _branch_n(n: int, gamma: float) -> BranchInterval:
    # eta((n+u)^2) runs from 4(-1)^n at u=0 to 4(-1)^(n+1) at u=1
    direction = -1 if n % 2 == 0 else 1
    lo, hi = float(n * n), float((n + 1) ** 2)
    if gamma > 0:
        # (n+u) tan(pi u/2) = gamma/4, increasing in u from 0 to infinity
        f = lambda u: (n + u) * math.tan(0.5 * math.pi * u) - gamma / 4.0
        u = _increasing_root(f, 0.0, 1.0 - 1e-16)
        return BranchInterval(n, (n + u) ** 2, hi, True, False, direction)
    if gamma < 0:
        # (n+u) cot(pi u/2) = |gamma|/4, decreasing in u from infinity to 0
        f = lambda u: abs(gamma) / 4.0 - (n + u) / math.tan(0.5 * math.pi * u)
        u = _increasing_root(f, 1e-300, 1.0)
        return BranchInterval(n, lo, (n + u) ** 2, False, True, direction)
    return BranchInterval(n, lo, hi, False, False, direction)


def _doubling_bracket(f, start: float = 1.0, cap: float = 1e6) -> float:
    # f increasing with f(0) < 0; double until f > 0
    x = min(start, cap)
    while f(x) <= 0:
        if x >= cap:
            raise MonotonicityError("no sign change found in downward scan")
        x = min(2.0 * x, cap)
    return x


def _branch_0(gamma: float) -> BranchInterval:
    """``I_0 = eta^{-1}([-4, 4]) intersected with (-inf, 1)``."""
    g4 = gamma / 4.0
    # left end: eta = 4, eta decreasing through it
    if gamma > 0:
        # z = w^2 in (0,1):  w tan(pi w/2) = gamma/4
        f = lambda w: w * math.tan(0.5 * math.pi * w) - g4
        # small gamma: w ~ sqrt(2 g4 / pi); bracket around it so tiny roots keep relative accuracy
        w_est = math.sqrt(2.0 * g4 / math.pi)
        lo, hi = 0.5 * w_est, 2.0 * w_est
        if hi < 1.0 and f(lo) < 0 < f(hi):
            a0 = _increasing_root(f, lo, hi, xtol=1e-300) ** 2
        else:
            a0 = _increasing_root(f, 0.0, 1.0 - 1e-16) ** 2
    elif gamma < 0:
        # z = -k^2:  k tanh(pi k/2) = |gamma|/4; scan bounded by (4+|gamma|)
        f = lambda k: k * math.tanh(0.5 * math.pi * k) + g4
        k = _increasing_root(f, 0.0, _doubling_bracket(f, 1.0, 4.0 + abs(gamma)))
        a0 = -k * k
    else:
        a0 = 0.0
    # right end: eta = -4, only for gamma < 0; otherwise the branch runs up to z = 1
    if gamma >= 0:
        return BranchInterval(0, a0, 1.0, True, False, -1)
    if abs(gamma) < GAMMA_CRIT:
        # w cot(pi w/2) = |gamma|/4, decreasing from 2/pi to 0 on (0,1)
        f = lambda w: abs(g4) - w / math.tan(0.5 * math.pi * w)
        b0 = _increasing_root(f, 1e-300, 1.0) ** 2
    elif gamma == -GAMMA_CRIT:
        b0 = 0.0
    else:
        # z = -k^2:  k coth(pi k/2) = |gamma|/4, increasing from 2/pi
        f = lambda k: k / math.tanh(0.5 * math.pi * k) - abs(g4)
        b0 = -_increasing_root(f, 1e-300, _doubling_bracket(f, 1.0, 4.0 + abs(gamma))) ** 2
    return BranchInterval(0, a0, b0, True, True, -1)


def check_monotone(branch: BranchInterval, gamma: float, samples: int = 128) -> None:
    """Sample ``eta'`` at interior points; raise unless the sign is constant."""
    if branch.hi <= branch.lo:
        return
    t = (np.arange(samples) + 0.5) / samples
    z = branch.lo + t * (branch.hi - branch.lo)
    s = np.sign(eta_prime(z, gamma))
    if not np.all(s == branch.direction):
        raise MonotonicityError(
            f"eta is not monotone on I_{branch.n} = [{branch.lo}, {branch.hi}]"
        )


def check_regime(i0: BranchInterval, gamma: float) -> None:
    """Assert the shape rules for ``I_0`` and the location of the turning point."""
    zero_inside = i0.lo <= 0.0 <= i0.hi
    # for subnormal gamma the endpoint gamma / (2 pi) underflows to 0
    resolvable = gamma <= 0.0 or gamma >= 1e3 * np.finfo(float).tiny
    if resolvable and zero_inside != (-GAMMA_CRIT <= gamma <= 0.0):
        raise MonotonicityError(f"0 in I_0 is {zero_inside} for gamma = {gamma}")
    if gamma < 0 and abs(gamma + GAMMA_TURN) > 1e-6:
        expected = -1.0 if gamma > -GAMMA_TURN else 1.0
        if np.sign(eta_prime(0.0, gamma)) != expected:
            raise MonotonicityError(f"turning point of eta misplaced for gamma = {gamma}")


def branch_intervals(gamma: float, n_max: int, check: bool = True) -> list[BranchInterval]:
    """``I_0, ..., I_{n_max}`` with endpoints where ``eta = +-4``."""
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    out = [_branch_0(gamma)] + [_branch_n(n, gamma) for n in range(1, n_max + 1)]
    if check:
        check_regime(out[0], gamma)
        for b in out:
            check_monotone(b, gamma)
    return out


def preimage_on_branch(lam: float, gamma: float, branch: BranchInterval) -> float | None:
    """The unique ``z`` in the (closed) branch with ``eta(z) = lam``, or ``None``."""
    f = lambda z: eta(z, gamma) - lam
    f0, f1 = f(branch.lo), f(branch.hi)
    # endpoints carry eta = +-4 only up to rounding
    if abs(f0) <= ENDPOINT_SLACK:
        return branch.lo
    if abs(f1) <= ENDPOINT_SLACK:
        return branch.hi
    if f0 * f1 > 0:
        return None
    return optimize.brentq(f, branch.lo, branch.hi, xtol=1e-14, rtol=1e-15, maxiter=500)


def preimage(lam: float, gamma: float, n_max: int,
             branches: list[BranchInterval] | None = None) -> list[tuple[int, float]]:
    """``[(n, z), ...]`` with ``z`` in ``I_n`` and ``eta(z) = lam``, sorted by ``n``."""
    if not -4.0 <= lam <= 4.0:
        raise ValueError(f"lambda = {lam} outside [-4, 4]")
    if branches is None:
        branches = branch_intervals(gamma, n_max)
    out = []
    for b in branches[: n_max + 1]:
        z = preimage_on_branch(lam, gamma, b)
        if z is not None:
            out.append((b.n, z))
    return out
