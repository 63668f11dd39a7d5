"""Command-line entry point: ``python -m kfree <subcommand> ...``."""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
from fractions import Fraction

from . import constants, dioph, exponents, harness, lattice, sieve


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _sign(text: str) -> int:
    value = int(text)
    if value not in (1, -1):
        raise argparse.ArgumentTypeError("sign must be +1 or -1")
    return value


@dataclasses.dataclass(frozen=True)
class CountResult:
    Z: int
    k: int
    A: int
    A_star: int


@dataclasses.dataclass(frozen=True)
class ConstantResult:
    k: int
    cutoff: int
    lower: str
    upper: str
    width: str


@dataclasses.dataclass(frozen=True)
class DiophResult:
    k: int
    X: Fraction
    Y: Fraction
    Z: int
    sign: int
    N: int


@dataclasses.dataclass(frozen=True)
class LatticeRow:
    z: int
    e1: str
    e2: str
    norm2_1: Fraction
    norm2_2: Fraction
    L1: Fraction
    L2: Fraction


@dataclasses.dataclass(frozen=True)
class ExponentResult:
    w: Fraction
    phi_max: Fraction
    phi_argmax: str
    psi_max: Fraction
    psi_argmax: str


def _points(pts) -> str:
    return ";".join(f"({u},{v})" for u, v in pts)


def _output(args, results, row_type=None) -> None:
    if dataclasses.is_dataclass(results) and not isinstance(results, type):
        results = [results]
    if args.out:
        harness.emit(results, args.format, args.out, row_type or type(results[0]))
        return
    records = [harness.to_record(r) for r in results]
    if args.format == "json":
        json.dump(records, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        import csv

        cols = [f.name for f in dataclasses.fields(row_type or type(results[0]))]
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(cols)
        for rec in records:
            w.writerow([harness._csv_cell(rec[c]) for c in cols])


def cmd_count(args) -> None:
    A = sieve.count_consecutive_kfree(args.z, args.k, args.segment_size, args.threads).count
    A2 = sieve.count_consecutive_kfree(2 * args.z, args.k, args.segment_size, args.threads).count
    _output(args, CountResult(args.z, args.k, A, A2 - A))


def cmd_constant(args) -> None:
    enc = constants.euler_product_ck(args.k, args.cutoff, args.digits)
    _output(args, ConstantResult(args.k, args.cutoff, str(enc.lower), str(enc.upper), str(enc.width)))


def cmd_dioph(args) -> None:
    box = dioph.Box(args.x, args.y, args.z, args.k, args.sign)
    sols = dioph.enumerate_solutions(box)
    if args.list:
        _output(args, sols, dioph.Quadruple)
    else:
        _output(args, DiophResult(args.k, box.X, box.Y, box.Z, box.sign, len(sols)))


def cmd_lattice(args) -> None:
    if args.histogram:
        report = harness.verify_lemma3(args.x, args.y, args.m)
        _output(args, list(report.buckets), harness.BucketRow)
        logging.info(
            "L1 range [%s, %s], within [Y/(2 sqrt M), 4Y]: %s",
            float(report.L1_min), float(report.L1_max), report.L1_in_range,
        )
        return
    rows = []
    for spec, b in lattice.interval_bases(args.x, args.y, args.m):
        rows.append(LatticeRow(spec.z, f"{b.e1[0]},{b.e1[1]}", f"{b.e2[0]},{b.e2[1]}", b.norm2_1, b.norm2_2, b.L1, b.L2))
    _output(args, rows, LatticeRow)


def cmd_pipeline(args) -> None:
    box = dioph.Box(args.x, args.y, args.z, args.k)
    report = harness.run_pipeline(box, args.d, args.delta)
    if args.format == "json":
        _output(args, report)
    else:
        _output(args, report.intervals, harness.IntervalRecord)
    logging.info(
        "M=%d clamped=%s d=%d e=%d intervals=%d total=%d direct=%d envelope ratio=%.4f",
        report.M, report.clamped, report.d, report.e, report.interval_count,
        report.total, report.direct_count, report.envelope_ratio,
    )


def cmd_exponent(args) -> None:
    if args.k is not None:
        table = exponents.theorem_exponent(args.k)
        _output(args, list(table.rows), exponents.ExponentRow)
        logging.info("14/(9k) smallest in table: %s", table.new_is_smallest)
        return
    p = exponents.maximize_bilinear("phi", args.w)
    q = exponents.maximize_bilinear("psi", args.w)
    _output(args, ExponentResult(Fraction(args.w), p.max_value, _points(p.argmax), q.max_value, _points(q.argmax)))


def cmd_scan(args) -> None:
    rows = harness.scan_error(args.k, args.z_min, args.z_max, args.points, args.cutoff)
    _output(args, rows, harness.ScanRow)
    try:
        logging.info("fitted exponent: %.4f", harness.fit_exponent(rows))
    except ValueError as exc:
        logging.info("no exponent fit: %s", exc)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", help="write results to this path instead of stdout")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="kfree", description=__doc__, parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", parents=[common], help="A_k(Z) and A*_k(Z)")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--z", type=int, required=True)
    c.add_argument("--segment-size", type=int, default=sieve.DEFAULT_SEGMENT_SIZE)
    c.set_defaults(func=cmd_count)

    c = sub.add_parser("constant", parents=[common], help="enclosure of c_k")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--cutoff", type=int, default=10**6)
    c.add_argument("--digits", type=int, default=constants.DEFAULT_DIGITS)
    c.set_defaults(func=cmd_constant)

    c = sub.add_parser("dioph", parents=[common], help="solutions of a x^k - b y^k = sign in a box")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--x", type=_rational, required=True)
    c.add_argument("--y", type=_rational, required=True)
    c.add_argument("--z", type=int, required=True)
    c.add_argument("--sign", type=_sign, default=1)
    c.add_argument("--list", action="store_true")
    c.set_defaults(func=cmd_dioph)

    c = sub.add_parser("lattice", parents=[common], help="reduced interval lattices")
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--x", type=_rational, required=True)
    c.add_argument("--y", type=_rational, required=True)
    c.add_argument("--histogram", action="store_true")
    c.set_defaults(func=cmd_lattice)

    c = sub.add_parser("pipeline", parents=[common], help="determinant-method pipeline on one box")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--x", type=_rational, required=True)
    c.add_argument("--y", type=_rational, required=True)
    c.add_argument("--z", type=int, required=True)
    c.add_argument("--d", type=int, default=2)
    c.add_argument("--delta", type=_rational, default=Fraction(1, 10))
    c.set_defaults(func=cmd_pipeline)

    c = sub.add_parser("exponent", parents=[common], help="max of Phi, Psi over T_w, or the exponent table")
    c.add_argument("--w", type=_rational, default=Fraction(14, 9))
    c.add_argument("--k", type=int)
    c.set_defaults(func=cmd_exponent)

    c = sub.add_parser("scan", parents=[common], help="A_k(Z) - c_k Z over a geometric grid")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--z-min", type=int, required=True)
    c.add_argument("--z-max", type=int, required=True)
    c.add_argument("--points", type=int)
    c.add_argument("--cutoff", type=int)
    c.set_defaults(func=cmd_scan)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s", force=True)
    try:
        args.func(args)
    except (ValueError, OverflowError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
