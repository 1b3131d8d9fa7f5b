"""CSV tables written by the command line tools, and readers for them.

Floats carry 12 significant digits and never depend on the locale.
"""
from __future__ import annotations

import csv
import io
from pathlib import Path

from .spectrum import ButterflyRow, GraphSpectrum, MeasureRow

BANDS_HEADER = ("n", "kind", "lo", "hi")
BUTTERFLY_HEADER = ("p", "q", "theta", "n", "lo", "hi", "kind")
MEASURE_HEADER = ("p", "q", "total_measure", "box_dimension")


def fmt(x) -> str:
    return format(float(x), ".12g")


def _render(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def bands_rows(g: GraphSpectrum) -> list[tuple]:
    kind = g.kind.value
    return [(p.n, kind, fmt(lo), fmt(hi)) for p in g.parts for lo, hi in p.intervals]


def bands_csv(g: GraphSpectrum) -> str:
    return _render(BANDS_HEADER, bands_rows(g))


def butterfly_csv(rows: list[ButterflyRow]) -> str:
    return _render(BUTTERFLY_HEADER, [(r.p, r.q, fmt(r.theta), r.n, fmt(r.lo), fmt(r.hi), r.kind)
                                      for r in rows])


def measure_csv(rows: list[MeasureRow]) -> str:
    return _render(MEASURE_HEADER, [(r.p, r.q, fmt(r.total_measure), fmt(r.box_dimension))
                                    for r in rows])


def write_text(path: str | Path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8", newline="")


def _read(text: str, header: tuple) -> list[dict]:
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != header:
        raise ValueError(f"expected columns {','.join(header)}, got {reader.fieldnames}")
    return list(reader)


def read_bands(text: str) -> list[dict]:
    """Rows of a bands table with numeric fields converted."""
    rows = _read(text, BANDS_HEADER)
    return [{"n": int(r["n"]), "kind": r["kind"], "lo": float(r["lo"]), "hi": float(r["hi"])}
            for r in rows]


def read_butterfly(text: str) -> list[dict]:
    rows = _read(text, BUTTERFLY_HEADER)
    return [{"p": int(r["p"]), "q": int(r["q"]), "theta": float(r["theta"]), "n": int(r["n"]),
             "lo": float(r["lo"]), "hi": float(r["hi"]), "kind": r["kind"]} for r in rows]


def read_measure(text: str) -> list[dict]:
    rows = _read(text, MEASURE_HEADER)
    return [{"p": int(r["p"]), "q": int(r["q"]), "total_measure": float(r["total_measure"]),
             "box_dimension": float(r["box_dimension"])} for r in rows]
