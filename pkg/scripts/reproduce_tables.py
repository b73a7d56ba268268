"""E2 pages, HH^3 bounds and Hilbert series for three lines and for l = 4, 5, 6.

    python3 scripts/reproduce_tables.py [--e-max 6] [--jobs 3] [--out results/tables.json]
"""

import argparse
import json
import time
from fractions import Fraction
from pathlib import Path

from lrh.cli import format_grid
from lrh.hochschild import Truncation
from lrh.pbw import ArrangementAlgebra
from lrh.spectral import e2_table, hilbert_series, three_lines_report


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--e-max", type=int, default=6)
    ap.add_argument("--slack", type=int, default=3)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()
    trunc = Truncation(args.e_max, args.slack)
    results = {"three_lines": [], "lines": []}

    for t in (1, 2, -1, Fraction(1, 2)):
        start = time.perf_counter()
        rep = three_lines_report(t, trunc, args.jobs)
        print(f"t = {t}  ({time.perf_counter() - start:.1f}s)")
        print(format_grid(rep.table.grid))
        print(f"  HH^3 >= {rep.hh3_bound}, series {rep.hilbert.series} ({rep.hilbert.verdict})\n")
        results["three_lines"].append(rep.to_json())

    for ell in (4, 5, 6):
        start = time.perf_counter()
        table = e2_table(ArrangementAlgebra(range(ell - 1)), trunc, args.jobs)
        hil = hilbert_series(table)
        print(f"l = {ell}  ({time.perf_counter() - start:.1f}s)")
        print(format_grid(table.grid))
        print(f"  series {hil.series} ({hil.verdict})\n")
        results["lines"].append(dict(table.to_json(), hilbert=hil.series, verdict=hil.verdict))

    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(json.dumps(results, indent=1, ensure_ascii=False))


if __name__ == "__main__":
    main()
