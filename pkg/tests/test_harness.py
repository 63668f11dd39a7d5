import csv
import json
import math
from decimal import Decimal
from fractions import Fraction

import pytest

from kfree.dioph import Box, count_N
from kfree.harness import (
    SCAN_COLUMNS,
    IntervalRecord,
    ScanRow,
    check_assumptions,
    emit,
    fit_exponent,
    geometric_grid,
    run_pipeline,
    scan_error,
    to_record,
    verify_lemma3,
)


def synthetic(Zs, f):
    rows = []
    for Z in Zs:
        E = Decimal(f(Z))
        rows.append(ScanRow(Z, 2, 0, Decimal(0), Decimal(0), E, E, 0.0))
    return rows


def test_scan_single_point():
    (row,) = scan_error(2, 10, 10, cutoff=10**5)
    assert row.A == 5
    assert abs(row.ck_lo - Decimal("3.2263")) < Decimal("1e-3")
    assert abs(row.E_mid - Decimal("1.7737")) < Decimal("1e-3")
    assert row.E_lo <= row.E_hi and not row.flagged


def test_scan_rows_monotone():
    rows = scan_error(2, 100, 10**5, points=7, cutoff=10**5)
    assert [r.Z for r in rows] == sorted(r.Z for r in rows)
    assert rows[0].Z == 100 and rows[-1].Z == 10**5
    with pytest.raises(ValueError):
        scan_error(2, 5, 100)


def test_geometric_grid():
    assert geometric_grid(10, 10) == [10]
    assert geometric_grid(10, 80) == [10, 20, 40, 80]
    assert geometric_grid(10, 1000, points=3) == [10, 100, 1000]
    with pytest.raises(ValueError):
        geometric_grid(10, 5)


def test_fit_exponent_synthetic():
    Zs = [10**i for i in range(3, 9)]
    assert fit_exponent(synthetic(Zs, lambda Z: math.sqrt(Z))) == pytest.approx(0.5)
    assert fit_exponent(synthetic(Zs, lambda Z: 7)) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(ValueError):
        fit_exponent(synthetic(Zs[:2], lambda Z: Z))


def test_pipeline_example():
    box = Box(8, 8, 4096, 2)
    rep = run_pipeline(box, d=2)
    assert rep.partition_ok and rep.total == count_N(box) > 0
    assert not rep.failures
    for r in rep.intervals:
        assert r.rank < r.H and r.vanishing
    assert rep.total <= 16 * (float(box.X) * math.sqrt(rep.M) + float(box.Y))


def test_pipeline_without_solutions():
    box = Box(Fraction(1, 2), 2048, 10**6, 2)
    rep = run_pipeline(box)
    assert rep.total == 0 == rep.direct_count and rep.intervals == []


def test_pipeline_swaps_when_X_exceeds_Y():
    box = Box(32, 8, 4096, 2)
    rep = run_pipeline(box)
    assert rep.box == box.swapped() and rep.partition_ok


def test_check_assumptions():
    check_assumptions(Box(8, 8, 4096, 2))
    with pytest.raises(ValueError, match="exceeds"):
        check_assumptions(Box(8, 256, 4096, 2))
    with pytest.raises(ValueError, match="below"):
        check_assumptions(Box(1, 2, 4096, 2))


def test_shortest_vector_report():
    rep = verify_lemma3(64, 64, 256)
    assert rep.L1_in_range and rep.max_ratio <= 64
    assert sum(b.count for b in rep.buckets) == rep.intervals
    # the smallest admissible M yields a single bucket
    rep = verify_lemma3(64, 64, 2)
    assert len(rep.buckets) == 1


def test_emit_csv_schema_and_header_only(tmp_path):
    path = tmp_path / "scan.csv"
    emit(scan_error(2, 10, 40, cutoff=10**5), "csv", path)
    with path.open() as fh:
        rows = list(csv.DictReader(fh))
    assert tuple(rows[0].keys()) == SCAN_COLUMNS and len(rows) == 3
    back = [ScanRow.from_record(r) for r in rows]
    assert back == scan_error(2, 10, 40, cutoff=10**5)
    empty = tmp_path / "empty.csv"
    emit([], "csv", empty)
    assert empty.read_text() == ",".join(SCAN_COLUMNS) + "\n"


def test_emit_json_round_trip(tmp_path):
    rows = scan_error(2, 10, 160, cutoff=10**5)
    path = tmp_path / "scan.json"
    emit(rows, "json", path)
    assert [ScanRow.from_record(r) for r in json.loads(path.read_text())] == rows
    rec = IntervalRecord(3, Fraction(7, 3), 2, 9, 2, 5, 0.3, True, None, 2)
    emit([rec], "json", path)
    assert json.loads(path.read_text()) == [to_record(rec)]
    assert to_record(rec)["L1"] == "7/3"


def test_emit_errors(tmp_path):
    with pytest.raises(ValueError):
        emit([], "xml", tmp_path / "x")
    with pytest.raises(OSError, match="failed to write"):
        emit([], "csv", tmp_path / "missing" / "x.csv")
