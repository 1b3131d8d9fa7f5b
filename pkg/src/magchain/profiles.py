"""Magnetic vector-potential profiles and the Jacobi coefficients they induce.

A profile is a rule for the per-ring vector potential ``A_j``.  The dual
Jacobi operator only sees ``a_j = 2 cos(pi A_j)``, and whether some ``a_j``
vanishes (``A_j`` a half-integer) decides between band and point spectra.
That decision is arithmetic, so rational inputs are kept as
:class:`fractions.Fraction` and tested exactly; floats are treated as real
numbers and classified with ``tol_zero``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence, Union

import numpy as np

TOL_ZERO = 1e-12

Real = Union[int, Fraction, float]


class ProfileError(ValueError):
    """Invalid profile definition or query."""


def _exact(x: Real) -> Real:
    # ints become Fractions so that all exact arithmetic goes through one type
    if isinstance(x, bool):
        raise ProfileError("boolean is not a valid potential value")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, (Fraction, float)):
        return x
    if isinstance(x, np.integer):
        return Fraction(int(x))
    if isinstance(x, np.floating):
        return float(x)
    raise ProfileError(f"unsupported number type {type(x).__name__}")


def is_exact(x: Real) -> bool:
    return isinstance(x, Fraction)


@dataclass(frozen=True)
class Linear:
    """Linear growth ``A_j = alpha * j + theta``.

    Rational ``alpha`` (a ``Fraction`` or ``int``) is stored reduced, which
    ``Fraction`` guarantees, so ``p`` and ``q`` are coprime with ``q >= 1``.
    """

    alpha: Real
    theta: Real = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "alpha", _exact(self.alpha))
        object.__setattr__(self, "theta", _exact(self.theta))

    @property
    def rational(self) -> bool:
        return is_exact(self.alpha)

    @property
    def p(self) -> int:
        if not self.rational:
            raise ProfileError("alpha is not rational")
        return self.alpha.numerator

    @property
    def q(self) -> int:
        if not self.rational:
            raise ProfileError("alpha is not rational")
        return self.alpha.denominator

    def potential(self, j: int) -> Real:
        return self.alpha * j + self.theta


@dataclass(frozen=True)
class PeriodicList:
    """Periodic potential ``A_j = values[j mod N]``."""

    values: tuple

    def __post_init__(self):
        vals = tuple(_exact(v) for v in self.values)
        if len(vals) < 1:
            raise ProfileError("periodic profile needs at least one value")
        object.__setattr__(self, "values", vals)

    def potential(self, j: int) -> Real:
        return self.values[j % len(self.values)]


@dataclass(frozen=True)
class Explicit:
    """Finite window of potentials, ``values[k]`` is ``A_{j_lo + k}``.

    Anything computed from an explicit profile is a truncation of the
    bi-infinite operator.
    """

    j_lo: int
    values: tuple

    def __post_init__(self):
        vals = tuple(_exact(v) for v in self.values)
        if len(vals) < 1:
            raise ProfileError("explicit profile needs a non-empty window")
        object.__setattr__(self, "values", vals)

    @property
    def j_hi(self) -> int:
        return self.j_lo + len(self.values) - 1

    def potential(self, j: int) -> Real:
        if not self.j_lo <= j <= self.j_hi:
            raise ProfileError(
                f"index {j} outside the declared range [{self.j_lo}, {self.j_hi}]"
            )
        return self.values[j - self.j_lo]


FieldProfile = Union[Linear, PeriodicList, Explicit]


def profile_period(profile: FieldProfile) -> int | None:
    if isinstance(profile, Linear):
        return profile.q if profile.rational else None
    if isinstance(profile, PeriodicList):
        return len(profile.values)
    return None


def is_half_integer(x: Real, tol_zero: float = TOL_ZERO) -> bool:
    """True when ``x + 1/2`` is an integer, i.e. ``2 cos(pi x) = 0``."""
    if is_exact(x):
        return (x + Fraction(1, 2)).denominator == 1
    return abs(2.0 * math.cos(math.pi * _mod2(x))) <= tol_zero


def is_integer(x: Real, tol_zero: float = TOL_ZERO) -> bool:
    if is_exact(x):
        return x.denominator == 1
    return abs(x - round(x)) <= tol_zero


def _mod2(x: Real) -> float:
    # reduce before converting so large |A_j| keep their fractional part
    if is_exact(x):
        return float(x % 2)
    return math.fmod(x, 2.0)


def coefficient(x: Real, tol_zero: float = TOL_ZERO) -> float:
    """``2 cos(pi x)`` with exact zeros and exact +-2 at (half-)integers."""
    if is_exact(x):
        r = x % 2
        if r.denominator == 1:
            return 2.0 if r == 0 else -2.0
        if r.denominator == 2:
            return 0.0
        return 2.0 * math.cos(math.pi * float(r))
    a = 2.0 * math.cos(math.pi * _mod2(x))
    return 0.0 if abs(a) <= tol_zero else a


@dataclass
class CoefficientWindow:
    """Jacobi coefficients ``a_j`` for ``j`` in ``[j_lo, j_lo + len(a) - 1]``."""

    a: np.ndarray
    j_lo: int = 0
    period: int | None = None
    zero_positions: tuple = field(default=())

    def __post_init__(self):
        self.a = np.asarray(self.a, dtype=float)
        if self.a.ndim != 1 or self.a.size == 0:
            raise ProfileError("coefficient window must be a non-empty 1-d sequence")
        if np.any(np.abs(self.a) > 2.0):
            raise ProfileError("coefficients must lie in [-2, 2]")
        if self.period is not None and self.period < 1:
            raise ProfileError("period must be a positive integer")

    @classmethod
    def from_coefficients(cls, a: Sequence[float], j_lo: int = 0,
                          period: int | None = None,
                          tol_zero: float = TOL_ZERO) -> "CoefficientWindow":
        """Window built directly from coefficient values (not potentials)."""
        a = np.array(a, dtype=float)
        a[np.abs(a) <= tol_zero] = 0.0
        zeros = tuple(int(j_lo + k) for k in np.flatnonzero(a == 0.0))
        return cls(a, j_lo, period, zeros)

    @property
    def j_hi(self) -> int:
        return self.j_lo + self.a.size - 1

    def __len__(self) -> int:
        return self.a.size

    def covers(self, j_lo: int, j_hi: int) -> bool:
        return self.j_lo <= j_lo and j_hi <= self.j_hi

    def coeff(self, j: int) -> float:
        if not self.j_lo <= j <= self.j_hi:
            raise ProfileError(f"index {j} outside window [{self.j_lo}, {self.j_hi}]")
        return float(self.a[j - self.j_lo])

    def one_period(self) -> np.ndarray:
        """The first full period of coefficients, starting at ``j_lo``."""
        if self.period is None:
            raise ProfileError("window carries no period")
        if self.a.size < self.period:
            raise ProfileError(
                f"window of length {self.a.size} does not cover a period of {self.period}"
            )
        return self.a[: self.period].copy()


def evaluate_profile(profile: FieldProfile, j_lo: int, j_hi: int,
                     tol_zero: float = TOL_ZERO) -> CoefficientWindow:
    """Coefficients ``a_j = 2 cos(pi A_j)`` for ``j_lo <= j <= j_hi``.

    Zeros are decided exactly whenever ``A_j`` is a ``Fraction``; otherwise
    ``|a_j| <= tol_zero`` counts as zero and is stored as an exact ``0.0``.
    """
    if j_lo > j_hi:
        raise ProfileError(f"invalid index range [{j_lo}, {j_hi}]")
    js = range(j_lo, j_hi + 1)
    pots = [profile.potential(j) for j in js]
    a = np.array([coefficient(x, tol_zero) for x in pots])
    zeros = tuple(j for j, x in zip(js, pots) if is_half_integer(x, tol_zero))
    # the two zero tests agree for exact inputs; for floats keep them consistent
    a[[j - j_lo for j in zeros]] = 0.0
    return CoefficientWindow(a, j_lo, profile_period(profile), zeros)


def degenerate_flux_check(profile: FieldProfile,
                          tol_zero: float = TOL_ZERO) -> int | None:
    """Residue ``j0 mod q`` with ``alpha*j0 + theta + 1/2`` an integer, if any.

    For ``alpha = p/q`` in lowest terms the residue is unique.  Exact when
    ``theta`` is rational, tolerance based when it is a float.
    """
    if not isinstance(profile, Linear):
        raise ProfileError("degenerate flux check needs a linear profile")
    if not profile.rational:
        raise ProfileError("degenerate flux check needs a rational slope")
    p, q = profile.p, profile.q
    theta = profile.theta
    if is_exact(theta):
        r = theta + Fraction(1, 2)
        # p*j/q + r in Z  <=>  p*j + r*q = 0 (mod q), with r*q integral
        rq = r * q
        if rq.denominator != 1:
            return None
        if q == 1:
            return 0
        return (-int(rq) * pow(p, -1, q)) % q
    hits = [j for j in range(q) if is_half_integer(profile.potential(j), tol_zero)]
    return hits[0] if hits else None


# -- textual profile specifications -------------------------------------------

def parse_exact(text: str) -> Real:
    """``p/q`` or a decimal literal, parsed as an exact ``Fraction``."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ProfileError(f"cannot parse number {text!r}") from exc


def parse_alpha(text: str) -> Real:
    """Flux slope: ``p/q`` or an integer is exact, other decimals are reals."""
    text = text.strip()
    if "/" in text or text.lstrip("+-").isdigit():
        return parse_exact(text)
    try:
        return float(text)
    except ValueError as exc:
        raise ProfileError(f"cannot parse alpha {text!r}") from exc


def read_profile_file(path: str | Path) -> Explicit:
    """Read an explicit profile: header ``# range lo hi`` then one ``A_j`` per line."""
    lines = Path(path).read_text().splitlines()
    rng = None
    values = []
    for line in lines:
        s = line.strip()
        if not s:
            continue
        if s.startswith("#"):
            parts = s[1:].split()
            if parts and parts[0] == "range":
                if len(parts) != 3:
                    raise ProfileError("range header must be '# range lo hi'")
                rng = (int(parts[1]), int(parts[2]))
            continue
        values.append(parse_exact(s) if "/" in s else float(s))
    if rng is None:
        raise ProfileError(f"{path}: missing '# range lo hi' header")
    lo, hi = rng
    if hi - lo + 1 != len(values):
        raise ProfileError(
            f"{path}: range [{lo}, {hi}] declares {hi - lo + 1} values, found {len(values)}"
        )
    return Explicit(lo, tuple(values))


def parse_profile(spec: str | None = None, alpha: str | None = None,
                  theta: str | None = None) -> FieldProfile:
    """Build a profile from CLI-style strings.

    ``spec`` is ``periodic:v1,v2,...`` or ``file:<path>``; otherwise
    ``alpha``/``theta`` describe a linear profile.
    """
    if spec is not None:
        kind, _, rest = spec.partition(":")
        if kind == "periodic":
            vals = [parse_exact(v) if "/" in v else float(v) for v in rest.split(",") if v]
            return PeriodicList(tuple(vals))
        if kind == "file":
            return read_profile_file(rest)
        raise ProfileError(f"unknown profile kind {kind!r}")
    if alpha is None:
        raise ProfileError("a linear profile needs alpha")
    th = parse_exact(theta) if theta is not None else Fraction(0)
    return Linear(parse_alpha(alpha), th)
