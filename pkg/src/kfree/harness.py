"""Experiment orchestration: error scans, the end-to-end interval pipeline,
the shortest-vector report, and deterministic CSV/JSON output."""

from __future__ import annotations

import csv
import dataclasses
import json
import logging
import math
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .constants import euler_product_ck
from .detmethod import (
    BoxAnalysis,
    choose_degrees,
    choose_M,
    delta1_check,
    evaluation_matrix,
    find_aux_polynomial,
    monomial_basis,
    rank_and_nullvector,
    verify_vanishing,
)
from .dioph import Box, Quadruple, count_N, iroot
from .lattice import cover_intervals, dyadic_anchor, dyadic_bucket, gauss_reduce, interval_solutions, make_lattice
from .sieve import consecutive_counts_at

log = logging.getLogger(__name__)

SCAN_COLUMNS = ("Z", "k", "A", "ck_lo", "ck_hi", "E_lo", "E_hi", "log_ratio")


@dataclass(frozen=True)
class ScanRow:
    """One scan point; ck_lo/ck_hi enclose c_k * Z and E = A - c_k * Z."""

    Z: int
    k: int
    A: int
    ck_lo: Decimal
    ck_hi: Decimal
    E_lo: Decimal
    E_hi: Decimal
    log_ratio: float

    @property
    def E_mid(self) -> Decimal:
        return (self.E_lo + self.E_hi) / 2

    @property
    def flagged(self) -> bool:
        """The c_k enclosure is too wide to pin down the sign and size of E."""
        return self.E_hi - self.E_lo >= abs(self.E_mid)

    @classmethod
    def from_record(cls, rec: dict) -> "ScanRow":
        return cls(
            int(rec["Z"]),
            int(rec["k"]),
            int(rec["A"]),
            *(Decimal(rec[c]) for c in ("ck_lo", "ck_hi", "E_lo", "E_hi")),
            float(rec["log_ratio"]),
        )


def geometric_grid(Z_min: int, Z_max: int, points: Optional[int] = None, ratio: float = 2.0) -> list[int]:
    if Z_min > Z_max:
        raise ValueError("Z_min must not exceed Z_max")
    if Z_min == Z_max:
        return [Z_min]
    if points is None:
        n = int(math.floor(math.log(Z_max / Z_min, ratio) + 1e-9))
        grid = [round(Z_min * ratio**i) for i in range(n + 1)] + [Z_max]
    else:
        if points < 2:
            raise ValueError("need at least two points for distinct endpoints")
        grid = [round(Z_min * (Z_max / Z_min) ** (i / (points - 1))) for i in range(points)]
        grid[-1] = Z_max
    return sorted(set(int(z) for z in grid))


def default_cutoff(Z_max: int) -> int:
    # enclosure width ~ 2c_k/P times Z must stay well below |E| ~ Z^0.2 at desk scale
    return int(min(10**8, max(10**6, Z_max)))


def scan_error(
    k: int,
    Z_min: int,
    Z_max: int,
    points: Optional[int] = None,
    cutoff: Optional[int] = None,
    ratio: float = 2.0,
) -> list[ScanRow]:
    if Z_min < 10:
        raise ValueError("Z_min must be at least 10")
    grid = geometric_grid(Z_min, Z_max, points, ratio)
    enc = euler_product_ck(k, cutoff or default_cutoff(Z_max))
    counts = consecutive_counts_at(grid, k)
    rows = []
    for Z, A in zip(grid, counts):
        lo, hi = enc.lower * Z, enc.upper * Z
        e_lo, e_hi = A - hi, A - lo
        mid = abs((e_lo + e_hi) / 2)
        ratio_ = math.log(float(mid)) / math.log(Z) if mid > 0 else float("-inf")
        row = ScanRow(Z, k, A, lo, hi, e_lo, e_hi, ratio_)
        if row.flagged:
            log.warning("Z=%d: c_k enclosure too wide relative to |E|=%s", Z, mid)
        rows.append(row)
    return rows


def fit_exponent(rows: Sequence[ScanRow]) -> float:
    """Least-squares slope of log|E| against log Z over rows with a resolved E."""
    usable = [r for r in rows if not r.flagged and r.E_mid != 0]
    if len(usable) < 3:
        raise ValueError(f"need at least 3 usable rows, got {len(usable)}")
    x = np.log([float(r.Z) for r in usable])
    y = np.log([abs(float(r.E_mid)) for r in usable])
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


# -- determinant-method pipeline ----------------------------------------------


@dataclass(frozen=True)
class IntervalRecord:
    z: int
    L1: Fraction
    solutions: int
    H: int
    rank: int
    height: Optional[int]
    kappa: Optional[float]
    vanishing: Optional[bool]
    delta1: Optional[int]
    N_I: int


@dataclass
class PipelineReport:
    box: Box
    M: int
    clamped: bool
    delta: Fraction
    d: int
    e: int
    interval_count: int
    intervals: list[IntervalRecord] = field(default_factory=list)
    total: int = 0
    direct_count: int = 0
    envelope: float = 0.0
    failures: list[int] = field(default_factory=list)

    @property
    def envelope_ratio(self) -> float:
        return self.total / self.envelope if self.envelope else 0.0

    @property
    def partition_ok(self) -> bool:
        return self.total == self.direct_count


def check_assumptions(box: Box) -> None:
    """max(X, Y) <= 2(2Z)^(1/k) and XY >= Z^(1/k), compared exactly."""
    k, Z = box.k, box.Z
    big = max(box.X, box.Y)
    if big**k > 2**k * 2 * Z:
        raise ValueError(f"max(X, Y) = {big} exceeds 2(2Z)^(1/k)")
    if (box.X * box.Y) ** k < Z:
        raise ValueError(f"XY = {box.X * box.Y} is below Z^(1/k)")


def _interval_algebra(spec, sols: list[Quadruple], basis_de, Z: int, L1) -> IntervalRecord:
    d, e = basis_de
    basis = monomial_basis(d, e)
    if not sols:
        return IntervalRecord(spec.z, L1, 0, basis.H, 0, 1, 0.0, True, None, 0)
    r, vec = rank_and_nullvector(evaluation_matrix(sols, basis))
    height = kappa = vanishing = delta1 = None
    if vec is not None:
        B = find_aux_polynomial(sols, d, e, Z)
        height, kappa, vanishing = B.height, B.kappa_measured, verify_vanishing(B, sols)
    if len(sols) >= basis.H:
        delta1 = delta1_check(sols[: basis.H], basis)
    return IntervalRecord(spec.z, L1, len(sols), basis.H, r, height, kappa, vanishing, delta1, len(sols))


def run_pipeline(box: Box, d: int = 2, delta=Fraction(1, 10), d_max: int = 6) -> PipelineReport:
    """Count N(X, Y, Z) interval by interval and attach the algebraic certificates.

    When X > Y the mirrored box (sign flipped, X and Y exchanged) is processed.
    The degree d is raised up to d_max while some interval has a full-rank
    evaluation matrix.
    """
    check_assumptions(box)
    work = box if box.X <= box.Y else box.swapped()
    analysis = BoxAnalysis.of(work)
    choice = choose_M(analysis, work.k, delta)
    # the cover needs M >= 2Y/X
    M = max(choice.M, math.ceil(2 * work.Y / work.X))
    specs = cover_intervals(work.X, work.Y, M)
    per_interval = []
    for spec in specs:
        basis = gauss_reduce(make_lattice(spec))
        per_interval.append((spec, basis.L1, interval_solutions(spec, work, basis)))

    while True:
        de = choose_degrees(analysis, d)
        records = [_interval_algebra(spec, sols, de, work.Z, L1) for spec, L1, sols in per_interval if sols]
        failures = [r.z for r in records if r.rank >= r.H]
        if not failures or d >= d_max:
            break
        d += 1

    report = PipelineReport(
        box=work,
        M=M,
        clamped=choice.clamped,
        delta=Fraction(delta),
        d=de[0],
        e=de[1],
        interval_count=len(specs),
        intervals=records,
        failures=failures,
    )
    report.total = sum(r.N_I for r in records)
    report.direct_count = count_N(work)
    report.envelope = float(work.X) * math.sqrt(M) + float(work.Y)
    if failures:
        log.warning("full-rank intervals at d=%d: z in %s", d, failures[:10])
    return report


# -- shortest-vector statistics --------------------------------------------------


@dataclass(frozen=True)
class BucketRow:
    L: Fraction
    count: int
    bound: Fraction
    ratio: Fraction


@dataclass(frozen=True)
class ShortestVectorReport:
    X: Fraction
    Y: Fraction
    M: int
    intervals: int
    L1_min: Fraction
    L1_max: Fraction
    L1_in_range: bool
    buckets: tuple[BucketRow, ...]

    @property
    def max_ratio(self) -> Fraction:
        return max(b.ratio for b in self.buckets)


def verify_lemma3(X, Y, M: int) -> ShortestVectorReport:
    """Histogram of L1 over the cover, against Y/L + XY/L^2 per dyadic bucket."""
    X, Y = Fraction(X), Fraction(Y)
    anchor = dyadic_anchor(Y, M)
    L1s = [gauss_reduce(make_lattice(spec)).L1 for spec in cover_intervals(X, Y, M)]
    hist: dict[Fraction, int] = {}
    for L in L1s:
        b = dyadic_bucket(L, anchor)
        hist[b] = hist.get(b, 0) + 1
    buckets = []
    for L, c in sorted(hist.items()):
        bound = Y / L + X * Y / L**2
        buckets.append(BucketRow(L, c, bound, c / bound))
    lo, hi = min(L1s), max(L1s)
    # Y/(2 sqrt M) <= lo  <=>  Y^2 <= 4 M lo^2
    in_range = Y * Y <= 4 * M * lo * lo and hi <= 4 * Y
    return ShortestVectorReport(X, Y, M, len(L1s), lo, hi, in_range, tuple(buckets))


# -- serialization ------------------------------------------------------------------


def _plain(value):
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, Decimal):
        return str(value)
    if isinstance(value, float):
        return value if math.isfinite(value) else str(value)
    if dataclasses.is_dataclass(value):
        return {f.name: _plain(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, dict):
        return {str(_plain(k)): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def to_record(obj) -> dict:
    return _plain(obj)


def parse_fraction(text: str) -> Fraction:
    return Fraction(text)


def emit(results, fmt: str, path, row_type=ScanRow) -> None:
    """Write dataclass results as CSV (one row each, flat fields) or JSON."""
    path = Path(path)
    if dataclasses.is_dataclass(results) and not isinstance(results, type):
        results = [results]
    results = list(results)
    if results:
        row_type = type(results[0])
    try:
        if fmt == "json":
            with path.open("w") as fh:
                json.dump([to_record(r) for r in results], fh, indent=2)
                fh.write("\n")
        elif fmt == "csv":
            columns = [f.name for f in dataclasses.fields(row_type)]
            with path.open("w", newline="") as fh:
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(columns)
                for r in results:
                    rec = to_record(r)
                    writer.writerow([_csv_cell(rec[c]) for c in columns])
        else:
            raise ValueError(f"unknown format {fmt!r}")
    except OSError as exc:
        raise OSError(f"failed to write {path}: {exc}") from exc


def _csv_cell(value):
    if isinstance(value, (dict, list)):
        return json.dumps(value, separators=(",", ":"))
    if value is None:
        return ""
    return value
