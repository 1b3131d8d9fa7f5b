"""``magchain`` command line: band tables, butterfly sweeps, measure sweeps,
finite-difference verification and preimages of the energy map.

Exit codes: 0 success, 1 bad arguments, 2 numerical bracketing failure,
3 verification failed.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import csvio
from .eta import MonotonicityError, preimage
from .floquet import ROOT_TOL, BracketingError, SpectrumKind
from .oracle_fd import verify
from .profiles import TOL_ZERO, ProfileError, parse_alpha, parse_exact, parse_profile
from .spectrum import (DEFAULT_SCALES, assemble, butterfly, golden_convergents,
                       measure_sweep, total_measure)

EXIT_OK, EXIT_USAGE, EXIT_BRACKETING, EXIT_FAIL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _header(args) -> str:
    parts = [f"gamma={args.gamma:g}"]
    if getattr(args, "profile", None):
        parts.append(f"profile={args.profile}")
    else:
        parts.append(f"alpha={getattr(args, 'alpha', None)} theta={args.theta}")
    if hasattr(args, "nmax"):
        parts.append(f"n_max={args.nmax}")
    parts += [f"tol_zero={TOL_ZERO:g}", f"root_tol={ROOT_TOL:g}"]
    return "# " + " ".join(parts)


def _emit(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text)
    else:
        csvio.write_text(out, text)


def _fills_half_line(g) -> bool:
    """Every part is its whole branch and consecutive parts touch."""
    if g.kind is not SpectrumKind.ABSOLUTELY_CONTINUOUS or not g.parts:
        return False
    if any(len(p.intervals) != 1 for p in g.parts) or not all(gap.touching for gap in g.gaps):
        return False
    first = g.parts[0].intervals[0]
    return abs(first[0]) <= 1e-12 and abs(g.parts[-1].intervals[0][1] - (g.n_max + 1) ** 2) <= 1e-9


def cmd_bands(args) -> int:
    profile = parse_profile(args.profile, args.alpha, args.theta)
    g = assemble(profile, args.gamma, args.nmax)
    _emit(csvio.bands_csv(g), args.out)
    log = sys.stderr if args.out == "-" else sys.stdout
    print(_header(args), file=log)
    print(f"kind={g.kind.value} discrete parts={len(g.discrete)}", file=log)
    for p in g.parts:
        print(f"sigma_{p.n}: {len(p.intervals)} {g.kind.value}(s), measure={csvio.fmt(p.measure)}",
              file=log)
    for gap in g.gaps:
        place = "inside" if gap.contains_dirichlet() else "outside"
        flag = " touching" if gap.touching else ""
        print(f"gap {gap.n}: ({csvio.fmt(gap.lo)}, {csvio.fmt(gap.hi)}) "
              f"length={csvio.fmt(gap.length)}{flag}; {gap.n ** 2} {place}", file=log)
    if _fills_half_line(g):
        print("union = [0,inf)", file=log)
    else:
        print(f"total measure below {(g.n_max + 1) ** 2} = {csvio.fmt(total_measure(g))}", file=log)
    return EXIT_OK


def cmd_butterfly(args) -> int:
    rows = butterfly(args.qmax, parse_exact(args.theta), args.gamma, args.coords,
                     args.nmax, args.theta_sweep, args.workers)
    _emit(csvio.butterfly_csv(rows), args.out)
    return EXIT_OK


def _alphas(args) -> list[Fraction]:
    if args.alphas:
        out = [parse_alpha(a) for a in args.alphas.split(",") if a]
        if not all(isinstance(a, Fraction) for a in out):
            raise UsageError("--alphas entries must be rational (p/q)")
        return out
    if args.convergents == "golden":
        if args.depth is None or args.depth < 1:
            raise UsageError("--convergents golden needs --depth k with k >= 1")
        return golden_convergents(args.depth)
    raise UsageError("give --alphas or --convergents golden --depth k")


def cmd_measure(args) -> int:
    rows = measure_sweep(_alphas(args), parse_exact(args.theta), DEFAULT_SCALES)
    _emit(csvio.measure_csv(rows), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    profile = parse_profile(args.profile, args.alpha, args.theta)
    report = verify(profile, args.gamma, args.rings, args.points, args.emax, args.tol)
    text = report.to_json() + "\n"
    sys.stdout.write(text)
    if args.out:
        csvio.write_text(args.out, text)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_preimage(args) -> int:
    for n, z in preimage(args.lam, args.gamma, args.nmax):
        print(f"{n} {csvio.fmt(z)}")
    return EXIT_OK


def _profile_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", help="flux slope: integer or p/q (decimals are floats)")
    p.add_argument("--theta", default="0", help="flux offset (exact decimal or p/q), default 0")
    p.add_argument("--profile", help="periodic:v1,v2,... or file:<path> instead of --alpha")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="magchain", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bands", help="graph spectrum below (nmax+1)^2 as bands.csv")
    _profile_flags(p)
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--nmax", type=int, default=3)
    p.add_argument("--out", default="bands.csv", help="output CSV, '-' for standard output")
    p.set_defaults(func=cmd_bands)

    p = sub.add_parser("butterfly", help="spectra over all p/q with q <= qmax")
    p.add_argument("--qmax", type=int, required=True)
    p.add_argument("--theta", default="0")
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--coords", choices=("discrete", "graph"), default="discrete")
    p.add_argument("--nmax", type=int, default=3)
    p.add_argument("--theta-sweep", type=int, default=None, metavar="K")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default="butterfly.csv")
    p.set_defaults(func=cmd_butterfly)

    p = sub.add_parser("measure", help="band measure and box dimension along approximants")
    p.add_argument("--convergents", choices=("golden",))
    p.add_argument("--depth", type=int)
    p.add_argument("--alphas", help="comma separated p/q list")
    p.add_argument("--theta", default="0")
    p.add_argument("--out", default="measure.csv")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("verify", help="finite-difference check of the predicted spectrum")
    _profile_flags(p)
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--rings", type=int, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--emax", type=float, required=True)
    p.add_argument("--tol", type=float, required=True)
    p.add_argument("--out", help="also write the JSON report here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("preimage", help="solutions of eta(z) = lambda on I_0..I_nmax")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--nmax", type=int, default=3)
    p.set_defaults(func=cmd_preimage)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (BracketingError, MonotonicityError) as exc:
        print(f"magchain: numerical failure: {exc}", file=sys.stderr)
        return EXIT_BRACKETING
    except (UsageError, ProfileError, ValueError) as exc:
        print(f"magchain: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
