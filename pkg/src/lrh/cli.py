"""Command line interface: ``lrh three-lines | lines | ah | cohomology | selftest``.

Exit codes: 0 success, 1 computed values differ from the expected ones,
2 stabilization failure, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .hochschild import Truncation, cohomology
from .slices import NotStable

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_UNSTABLE = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    t: str | None = None
    ell: int | None = None
    slopes: list = field(default_factory=list)
    h: str | None = None
    q: int = 0
    i: int = 0
    e_max: int = 6
    slack: int = 3
    x_max: int = 8
    y_max: int = 6
    jobs: int = 1
    format: str = "text"
    json_path: str | None = None
    csv_path: str | None = None

    def truncation(self) -> Truncation:
        return Truncation(self.e_max, self.slack)

    def parameters(self) -> dict:
        d = asdict(self)
        for k in ("json_path", "csv_path", "format", "command"):
            d.pop(k)
        return d


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    default_e = int(os.environ.get("LRH_E_MAX", "6"))
    p = _Parser(prog="lrh", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, e=True):
        if e:
            sp.add_argument("--e-max", type=int, default=default_e, help="starting E-degree bound N0")
            sp.add_argument("--slack", type=int, default=3)
            sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--format", choices=("text", "json", "csv"), default="text")
        sp.add_argument("--json", dest="json_path", metavar="PATH")
        sp.add_argument("--csv", dest="csv_path", metavar="PATH")

    sp = sub.add_parser("three-lines", help="E2 page, HH^3 bound and Hilbert series for three lines")
    sp.add_argument("--t", required=True, type=_rational, help="slope of the third line y + t x")
    common(sp)

    sp = sub.add_parser("lines", help="E2 page and series for l lines")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--l", dest="ell", type=int, help="number of lines (slopes 0, 1, ..., l-2)")
    g.add_argument("--slopes", help="comma separated slopes, the first one 0")
    common(sp)

    sp = sub.add_parser("ah", help="Hochschild cohomology of A_h")
    sp.add_argument("--h", required=True, help='polynomial in x, e.g. "x^2-1"')
    sp.add_argument("--xmax", dest="x_max", type=int, default=8)
    sp.add_argument("--ymax", dest="y_max", type=int, default=6)
    common(sp, e=False)

    sp = sub.add_parser("cohomology", help="dim H^q(S,U)_i with representatives")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--i", type=int, required=True)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--t", type=_rational)
    g.add_argument("--slopes")
    common(sp)

    sp = sub.add_parser("selftest", help="run the invariant checks and the reference numbers")
    common(sp, e=False)
    return p


def parse_config(argv) -> RunConfig:
    ns = vars(build_parser().parse_args(argv))
    cfg = RunConfig(command=ns.pop("command"))
    slopes = ns.pop("slopes", None)
    t = ns.pop("t", None)
    for k, v in ns.items():
        setattr(cfg, k, v)
    if t is not None:
        if t == 0:
            raise UsageError("t = 0 repeats the line y = 0")
        cfg.t = str(t)
        cfg.slopes = ["0", str(t)]
    if slopes is not None:
        try:
            vals = [Fraction(s) for s in slopes.split(",")]
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad slope list {slopes!r}")
        if len(set(vals)) != len(vals):
            raise UsageError("slopes must be pairwise distinct")
        if not vals or vals[0] != 0:
            raise UsageError("the first slope must be 0")
        cfg.slopes = [str(v) for v in vals]
    if cfg.command == "lines" and cfg.ell is not None:
        if cfg.ell < 3:
            raise UsageError("need at least three lines")
        cfg.slopes = [str(k) for k in range(cfg.ell - 1)]
    if cfg.slopes:
        cfg.ell = len(cfg.slopes) + 1
        if cfg.ell < 3:
            raise UsageError("need at least three lines")
    if cfg.command == "ah":
        from .pbw import parse_polynomial

        try:
            if not parse_polynomial(cfg.h, 1):
                raise UsageError("h must be nonzero")
        except (ValueError, KeyError, SyntaxError) as exc:
            raise UsageError(f"cannot parse h = {cfg.h!r}: {exc}")
    for name in ("e_max", "slack", "x_max", "y_max"):
        if getattr(cfg, name) < 0:
            raise UsageError(f"{name} must be nonnegative")
    return cfg


# Output ------------------------------------------------------------------


def emit(cfg: RunConfig, report: dict, text: str, csv_rows=None):
    report = dict(report, parameters=cfg.parameters())
    if cfg.json_path:
        with open(cfg.json_path, "w") as fh:
            json.dump(report, fh, indent=1, ensure_ascii=False)
    if cfg.csv_path and csv_rows is not None:
        with open(cfg.csv_path, "w", newline="") as fh:
            csv.writer(fh).writerows(csv_rows)
    if cfg.format == "json":
        print(json.dumps(report, ensure_ascii=False))
    elif cfg.format == "csv" and csv_rows is not None:
        buf = io.StringIO()
        csv.writer(buf).writerows(csv_rows)
        print(buf.getvalue(), end="")
    else:
        print(text)


def format_grid(grid) -> str:
    lines = []
    for q in reversed(range(len(grid))):
        lines.append(f"  q={q} | " + " ".join(f"{v:3d}" for v in grid[q]))
    lines.append("        " + "-" * (4 * len(grid[0])))
    lines.append("    p =  " + " ".join(f"{p:3d}" for p in range(len(grid[0]))))
    return "\n".join(lines)


# Commands ----------------------------------------------------------------

THREE_LINES_E2 = [[1, 3, 2], [0, 3, 3], [1, 1, 0]]


def cmd_three_lines(cfg: RunConfig) -> int:
    from .spectral import three_lines_report

    rep = three_lines_report(Fraction(cfg.t), cfg.truncation(), cfg.jobs)
    data = rep.to_json()
    text = "\n".join([
        f"three lines x y (y + {cfg.t} x) = 0",
        "E2 page:",
        format_grid(rep.table.grid),
        f"HH^3 lower bound: {rep.hh3_bound}",
        f"Hilbert series: {rep.hilbert.series} ({rep.hilbert.verdict})",
        f"outer derivations: {rep.outer.count}, abelian: {rep.outer.abelian}",
    ])
    emit(cfg, data, text, list(rep.table.csv_rows()))
    ok = (rep.table.grid == THREE_LINES_E2 and rep.hilbert.series == [1, 3, 6, 4]
          and rep.hilbert.verdict == "degenerate" and rep.outer.ok)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_lines(cfg: RunConfig) -> int:
    from .pbw import ArrangementAlgebra
    from .spectral import e2_table, hilbert_series, hh3_lower_bound

    alg = ArrangementAlgebra([Fraction(s) for s in cfg.slopes])
    table = e2_table(alg, cfg.truncation(), cfg.jobs)
    if alg.ell == 3:
        bound, _ = hh3_lower_bound(alg, cfg.truncation())
        hil = hilbert_series(table, bound)
    else:
        bound, hil = None, hilbert_series(table)
    data = table.to_json()
    data.update(hilbert=hil.series, verdict=hil.verdict, hh3_lower_bound=bound)
    text = "\n".join([
        f"{alg.ell} lines, slopes {cfg.slopes}",
        "E2 page:",
        format_grid(table.grid),
        f"Hilbert series: {hil.series} ({hil.verdict})",
    ])
    emit(cfg, data, text, list(table.csv_rows()))
    ell = alg.ell
    expected = [1, 3, 6, 4] if ell == 3 else [1, 4, 8, 5] if ell == 4 else [1, ell, 2 * ell - 1, ell]
    return EXIT_OK if hil.series == expected else EXIT_MISMATCH


def cmd_ah(cfg: RunConfig) -> int:
    from .ah import AhWindow, ah_hh_dims

    rep = ah_hh_dims(cfg.h, AhWindow(cfg.x_max, cfg.y_max))
    data = rep.to_json()
    text = "\n".join([
        f"A_h with h = {rep.h}, window x <= {cfg.x_max}, y <= {cfg.y_max}",
        f"H(S, A_h) windowed dims: {list(rep.h_dims)}",
        f"HH dims: {list(rep.hh_dims)}   closed form: {list(rep.predicted)}",
        f"nabla_y lifting = closed form: {rep.nabla_agree}",
        f"match: {rep.match}",
    ])
    rows = [("degree", "engine", "closed_form")] + [(k, a, b) for k, (a, b) in enumerate(zip(rep.hh_dims, rep.predicted))]
    emit(cfg, data, text, rows)
    return EXIT_OK if rep.match else EXIT_MISMATCH


def cmd_cohomology(cfg: RunConfig) -> int:
    from .pbw import ArrangementAlgebra

    alg = ArrangementAlgebra([Fraction(s) for s in cfg.slopes])
    rep = cohomology(cfg.q, cfg.i, alg, cfg.truncation())
    data = rep.to_json()
    text = f"dim H^{cfg.q}(S,U)_{cfg.i} = {rep.dim}\n" + "\n".join(f"  {r}" for r in rep.representatives)
    emit(cfg, data, text, [("q", "i", "dim"), (cfg.q, cfg.i, rep.dim)])
    return EXIT_OK


def cmd_selftest(cfg: RunConfig) -> int:
    from .selftest import run_all

    results = run_all()
    text = "\n".join(f"{'PASS' if ok else 'FAIL'}  {name}" for name, ok in results)
    emit(cfg, {"checks": [{"name": n, "ok": ok} for n, ok in results]}, text,
         [("check", "ok")] + [(n, ok) for n, ok in results])
    return EXIT_OK if all(ok for _, ok in results) else EXIT_MISMATCH


COMMANDS = {
    "three-lines": cmd_three_lines,
    "lines": cmd_lines,
    "ah": cmd_ah,
    "cohomology": cmd_cohomology,
    "selftest": cmd_selftest,
}


def main(argv=None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        print(f"lrh: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return COMMANDS[cfg.command](cfg)
    except NotStable as exc:
        print(f"lrh: {exc}", file=sys.stderr)
        return EXIT_UNSTABLE


if __name__ == "__main__":
    sys.exit(main())
