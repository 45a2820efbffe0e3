"""Threshold search over a state series.

Explore: sweep (minSupCount, minConf) and look at how many NERs each pair
yields. Pick the strictest pair whose NER count stays inside a target band.
Exploit: for that pair, sweep minStabCount and print SNP for each value.

    python scripts/explore_exploit.py --spec scripts/demo_spec.txt
    python scripts/explore_exploit.py --db work/ --min-ners 5 --max-ners 200
"""
import argparse
import sys
from fractions import Fraction

from sysnet.evolution import merge, reports_to_csv
from sysnet.miner import mine_state
from sysnet.model import Thresholds, format_threshold
from sysnet.pipeline import sweep
from sysnet.preprocess import read_series
from sysnet.synthgen import generate, read_spec


def explore(dbs, sups, confs):
    grid = {}
    for sup in sups:
        for conf in confs:
            ers = merge([mine_state(db, Thresholds(sup, conf)) for db in dbs])
            grid[sup, conf] = ers.ner_count
    return grid


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    src = ap.add_mutually_exclusive_group(required=True)
    src.add_argument("--spec", help="synthetic series spec")
    src.add_argument("--db", help="directory written by 'sysnet preprocess'")
    ap.add_argument("--sups", default="1,2,3,4,5")
    ap.add_argument("--confs", default="0.2,0.4,0.6,0.8,1")
    ap.add_argument("--min-ners", type=int, default=3)
    ap.add_argument("--max-ners", type=int, default=50)
    args = ap.parse_args(argv)

    dbs = generate(read_spec(args.spec)) if args.spec else read_series(args.db)[0]
    sups = [int(s) for s in args.sups.split(",")]
    confs = [Fraction(c) for c in args.confs.split(",")]

    grid = explore(dbs, sups, confs)
    print(f"explore: NER counts over {len(dbs)} states")
    print("sup\\conf " + " ".join(f"{format_threshold(c):>6}" for c in confs))
    for sup in sups:
        print(f"{sup:>8} " + " ".join(f"{grid[sup, c]:>6}" for c in confs))

    inside = [(s, c) for (s, c), n in grid.items() if args.min_ners <= n <= args.max_ners]
    if not inside:
        print("no (minSupCount, minConf) pair inside the NER band", file=sys.stderr)
        return 1
    sup, conf = max(inside)
    print(f"\nexploit: minSupCount={sup} minConf={format_threshold(conf)} "
          f"({grid[sup, conf]} NERs), varying minStabCount")
    rows = sweep(dbs, [sup], [conf], list(range(1, len(dbs) + 1)), sort="desc")
    sys.stdout.write(reports_to_csv(rows))
    return 0


if __name__ == "__main__":
    sys.exit(main())
