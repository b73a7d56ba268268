"""HH(A_h) for a list of h against the closed forms, over several windows.

    python3 scripts/ah_family.py [--h x^2 x^3-x ...] [--ymax 2 4 6]
"""

import argparse

from lrh.ah import AhWindow, ah_hh_dims, coker_dims_engine, quotient_dims_oracle

DEFAULT_H = ["1", "x", "x^2", "x^3", "x^2-1", "x^3-x", "x^2(x-1)", "(x^2+1)^2"]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--h", nargs="+", default=DEFAULT_H)
    ap.add_argument("--xmax", type=int, default=8)
    ap.add_argument("--ymax", type=int, nargs="+", default=[2, 4, 6])
    args = ap.parse_args()
    print(f"{'h':>12} {'Y':>3}  {'engine':>14}  {'closed form':>14}  nabla  oracle")
    for h in args.h:
        oracle = quotient_dims_oracle(h, 5, 3) == coker_dims_engine(h, 5, 3)
        for y in args.ymax:
            rep = ah_hh_dims(h, AhWindow(args.xmax, y))
            print(f"{h:>12} {y:>3}  {str(list(rep.hh_dims)):>14}  {str(list(rep.predicted)):>14}"
                  f"  {rep.nabla_agree!s:5}  {oracle}")


if __name__ == "__main__":
    main()
