"""Command line front end.

    sysnet preprocess --input snapshots/ --out work/ [--grouping pairs] [--manifest order.txt]
    sysnet mine --db work/ --out results/ --min-sup-count 2 --min-conf 0.5 --min-stab-count 2
    sysnet sweep --db work/ --min-sup-count 2:4 --min-conf 0.5,0.6 --min-stab-count 1:5
    sysnet gen --spec plant.txt --out work/
    sysnet decode --rules results/SNERs_ID.txt --index work/IndexFile.txt --out SNERs_Name.txt

Exit codes: 0 success, 2 usage error, 3 data or format error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import __version__
from .evolution import read_snp_csv, reports_to_csv
from .model import SysNetError, ThresholdError, Thresholds, format_decimal, parse_fraction
from .naming import decode_rules
from .pipeline import run_mine, sweep
from .preprocess import Grouping, preprocess, read_index, read_series, write_series
from .synthgen import generate, read_spec, synthetic_index

EXIT_USAGE = 2
EXIT_DATA = 3

log = logging.getLogger("sysnet")


class UsageError(Exception):
    pass


def int_list(text: str) -> list[int]:
    """``"2,3"`` or the inclusive range ``"2:5"`` (both forms may be mixed)."""
    values: list[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ":" in part:
                lo, hi = part.split(":")
                values.extend(range(int(lo), int(hi) + 1))
            elif part:
                values.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from None
    return values


def fraction_list(text: str):
    try:
        return [parse_fraction(part) for part in text.split(",") if part.strip()]
    except ThresholdError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _add_caps(p):
    p.add_argument("--max-antecedent", type=positive_int, default=None,
                   help="largest antecedent size searched (default: unbounded)")
    p.add_argument("--max-consequent", type=positive_int, default=None,
                   help="largest consequent size searched (default: unbounded)")
    p.add_argument("--jobs", type=positive_int, default=1, help="worker processes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sysnet", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("preprocess", help="encode snapshot files into SysNetDbs and an index")
    p.add_argument("--input", required=True, type=Path, help="directory of snapshot files")
    p.add_argument("--out", required=True, type=Path)
    p.add_argument("--grouping", choices=[g.value for g in Grouping], default=Grouping.PER_SOURCE.value)
    p.add_argument("--manifest", type=Path, default=None,
                   help="file listing snapshot filenames in series order")

    p = sub.add_parser("mine", help="mine NERs and SNERs and compute the SNP metric")
    p.add_argument("--db", required=True, type=Path, help="directory written by preprocess or gen")
    p.add_argument("--out", required=True, type=Path)
    p.add_argument("--min-sup-count", required=True, type=int)
    p.add_argument("--min-conf", required=True, type=str)
    p.add_argument("--min-stab-count", required=True, type=int)
    p.add_argument("--previous-report", type=Path, default=None,
                   help="snp.csv of an earlier run, for the new-state comparison")
    p.add_argument("--tol", type=float, default=0.5, help="SNP tolerance for the new-state comparison")
    p.add_argument("--top", type=int, default=10, help="SNERs listed in report.txt")
    _add_caps(p)

    p = sub.add_parser("sweep", help="SNP over a grid of threshold triples")
    p.add_argument("--db", required=True, type=Path)
    p.add_argument("--min-sup-count", required=True, type=int_list)
    p.add_argument("--min-conf", required=True, type=fraction_list)
    p.add_argument("--min-stab-count", required=True, type=int_list)
    p.add_argument("--sort", choices=["asc", "desc"], default="asc")
    p.add_argument("--out", type=Path, default=None, help="CSV path (default: stdout)")
    _add_caps(p)

    p = sub.add_parser("gen", help="write a synthetic series with planted rules")
    p.add_argument("--spec", required=True, type=Path)
    p.add_argument("--out", required=True, type=Path)

    p = sub.add_parser("decode", help="replace entity IDs in a rule file by names")
    p.add_argument("--rules", required=True, type=Path)
    p.add_argument("--index", required=True, type=Path)
    p.add_argument("--out", required=True, type=Path)
    return parser


def cmd_preprocess(args) -> None:
    dbs, index = preprocess(args.input, args.out, args.grouping, args.manifest)
    print(f"N={len(dbs)} K={len(index)}")
    for i, db in enumerate(dbs, 1):
        print(f"state {i} ({db.label}): M={db.M}")


def _thresholds(args) -> Thresholds:
    try:
        return Thresholds(args.min_sup_count, parse_fraction(args.min_conf), args.min_stab_count)
    except ThresholdError as exc:
        raise UsageError(str(exc)) from None


def cmd_mine(args) -> None:
    t = _thresholds(args)
    dbs, index = read_series(args.db)
    if t.min_stab_count > len(dbs):
        raise UsageError(f"--min-stab-count {t.min_stab_count} exceeds the number of states {len(dbs)}")
    previous = None
    if args.previous_report is not None:
        previous = read_snp_csv(args.previous_report)[0]
    result = run_mine(dbs, index, t, args.out, args.jobs, args.max_antecedent,
                      args.max_consequent, previous, args.top)
    r = result.report
    print(f"{t.label} N={r.n_states} NERs={r.ner_count} SNERs={r.sner_count} "
          f"SNP: {format_decimal(r.snp_exact, 2)}")


def cmd_sweep(args) -> None:
    dbs, _ = read_series(args.db)
    try:
        rows = sweep(dbs, args.min_sup_count, args.min_conf, args.min_stab_count,
                     args.sort, args.jobs, args.max_antecedent, args.max_consequent)
    except ThresholdError as exc:
        raise UsageError(str(exc)) from None
    text = reports_to_csv(rows)
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text, encoding="utf-8")
        print(f"{len(rows)} rows written to {args.out}")


def cmd_gen(args) -> None:
    spec = read_spec(args.spec)
    dbs = generate(spec)
    write_series(dbs, synthetic_index(dbs), args.out)
    print(f"N={len(dbs)} planted={len(spec.planted)} noise_pairs={spec.noise_pairs}")


def cmd_decode(args) -> None:
    decode_rules(args.rules, read_index(args.index), args.out)


COMMANDS = {
    "preprocess": cmd_preprocess,
    "mine": cmd_mine,
    "sweep": cmd_sweep,
    "gen": cmd_gen,
    "decode": cmd_decode,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"sysnet {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SysNetError, OSError) as exc:
        print(f"sysnet {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return 0


if __name__ == "__main__":
    sys.exit(main())
