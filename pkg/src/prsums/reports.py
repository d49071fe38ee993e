"""Right-hand sides of the explicit bounds, exponent fitting, and the
CSV/JSON record schema every scan and ratio table serializes through.

All logarithms are natural.  Quantities with an unspecified implied
constant (the averaged-sum power reference, the known T_d estimate) are
reported as ratios, never asserted; the explicit constants (the classical
single-sum bound) are asserted strictly by the verification suites.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .numtheory import euler_phi

#: exponent of the reference power curve the scan ratios divide by
REFERENCE_EXPONENT = 23.0 / 24.0

CSV_FIELDS = ("p", "quantity", "max_abs", "mordell_rhs", "theorem1_ref", "ratio", "samples", "seed")

_INT_FIELDS = {"p", "samples", "seed"}


def mordell_rhs(p: int) -> float:
    """2*sqrt(p)*ln(p) + 2*sqrt(p) + 1: the explicit single-sum bound."""
    if p < 3:
        raise ValueError(f"p must be an odd prime >= 3, got {p}")
    return 2.0 * math.sqrt(p) * math.log(p) + 2.0 * math.sqrt(p) + 1.0


def stoneham_ratio(p: int, max_abs: float) -> float:
    """max_abs / (sqrt(p)*ln(p)); reported only (unknown implied constant)."""
    return max_abs / (math.sqrt(p) * math.log(p))


def reference_power(p: int) -> float:
    """p^(23/24), the epsilon-free reference curve for averaged-sum scans."""
    if p < 2:
        raise ValueError(f"p must be >= 2, got {p}")
    return float(p) ** REFERENCE_EXPONENT


def phi_ratio(p: int) -> float:
    """phi(p-1) * ln(ln(p)) / p, reporting the totient lower estimate."""
    if p < 5:
        raise ValueError(f"phi_ratio needs p >= 5, got {p}")
    return euler_phi(p - 1) * math.log(math.log(p)) / p


@dataclass(frozen=True)
class ScanRecord:
    """One emitted row: invariantly ratio = max_abs / p^(23/24)."""

    p: int
    quantity: str
    max_abs: float
    mordell_rhs: float
    theorem1_ref: float
    ratio: float
    samples: int
    seed: int


def make_record(p: int, quantity: str, max_abs: float, samples: int, seed: int) -> ScanRecord:
    if max_abs < 0:
        raise ValueError(f"max_abs must be >= 0, got {max_abs}")
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    ref = reference_power(p)
    return ScanRecord(p, quantity, float(max_abs), mordell_rhs(p), ref, float(max_abs) / ref, samples, seed)


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    residual: float  # RMS residual of the log-log fit
    n_points: int


def fit_exponent(points) -> FitResult:
    """Least-squares slope of ln(max_abs) against ln(p).

    points: iterable of (p, max_abs) with max_abs > 0; needs >= 3 points.
    """
    pts = [(float(p), float(m)) for p, m in points]
    if len(pts) < 3:
        raise ValueError(f"fit needs at least 3 points, got {len(pts)}")
    if any(m <= 0 for _, m in pts):
        raise ValueError("fit needs strictly positive max_abs values")
    lx = np.log([p for p, _ in pts])
    ly = np.log([m for _, m in pts])
    A = np.vstack([lx, np.ones_like(lx)]).T
    (slope, intercept), *_ = np.linalg.lstsq(A, ly, rcond=None)
    resid = float(np.sqrt(np.mean((ly - (slope * lx + intercept)) ** 2)))
    return FitResult(float(slope), float(intercept), resid, len(pts))


def _fmt(v) -> str:
    return format(float(v), ".12g")


def emit(records, fmt: str, destination) -> None:
    """Write records as CSV (fixed header, 12 significant digits, LF line
    endings) or as a JSON array of objects with identical field names.

    destination: a path or an open text stream.  I/O failures are re-raised
    with the path attached.
    """
    import csv

    if fmt not in ("csv", "json"):
        raise ValueError(f"format must be 'csv' or 'json', got {fmt!r}")

    def write(stream):
        if fmt == "csv":
            w = csv.writer(stream, lineterminator="\n")
            w.writerow(CSV_FIELDS)
            for r in records:
                d = asdict(r)
                w.writerow([d[f] if f in _INT_FIELDS or f == "quantity" else _fmt(d[f]) for f in CSV_FIELDS])
        else:
            json.dump([asdict(r) for r in records], stream, indent=1)
            stream.write("\n")

    if isinstance(destination, (str, Path)):
        try:
            with open(destination, "w", encoding="utf-8", newline="") as fh:
                write(fh)
        except OSError as e:
            raise OSError(f"cannot write {destination}: {e}") from e
    else:
        write(destination)


def read_records(source, fmt: str | None = None) -> list[ScanRecord]:
    """Parse records back from a CSV/JSON file or text stream.

    fmt defaults to sniffing the extension (then the first character).
    """
    import csv

    if isinstance(source, (str, Path)):
        path = str(source)
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as e:
            raise OSError(f"cannot read {source}: {e}") from e
    else:
        path = "<stream>"
        text = source.read()
    if fmt is None:
        if path.endswith(".json"):
            fmt = "json"
        elif path.endswith(".csv"):
            fmt = "csv"
        else:
            fmt = "json" if text.lstrip()[:1] in ("[", "{") else "csv"
    out = []
    if fmt == "json":
        for d in json.loads(text):
            out.append(ScanRecord(**{**d, "p": int(d["p"]), "samples": int(d["samples"]), "seed": int(d["seed"])}))
    elif fmt == "csv":
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or tuple(rows[0]) != CSV_FIELDS:
            raise ValueError(f"unexpected CSV header in {path}: {rows[:1]}")
        for row in rows[1:]:
            d = dict(zip(CSV_FIELDS, row))
            out.append(
                ScanRecord(
                    p=int(d["p"]),
                    quantity=d["quantity"],
                    max_abs=float(d["max_abs"]),
                    mordell_rhs=float(d["mordell_rhs"]),
                    theorem1_ref=float(d["theorem1_ref"]),
                    ratio=float(d["ratio"]),
                    samples=int(d["samples"]),
                    seed=int(d["seed"]),
                )
            )
    else:
        raise ValueError(f"format must be 'csv' or 'json', got {fmt!r}")
    return out


def chain_to_records(p: int, report, quantity_prefix: str, seed: int = 0) -> list[ScanRecord]:
    """Serialize ChainRows through the fixed record schema: the lhs goes in
    max_abs and the rhs rides along in the quantity label (the schema has no
    free numeric column for it).
    """
    out = []
    for row in report:
        out.append(
            make_record(
                p, f"{quantity_prefix}:{row.label}:rhs={_fmt(row.rhs)}", row.lhs, 1, seed
            )
        )
    return out
