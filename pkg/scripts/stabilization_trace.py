"""How truncated dims of H^q(S,U)_i move with the E-bound N.

Stable slices settle after a few steps; H^2_0 gains one class per step.

    python3 scripts/stabilization_trace.py [--t 1] [--nmax 8]
"""

import argparse
from fractions import Fraction

from lrh.hochschild import TruncatedSlab
from lrh.pbw import ArrangementAlgebra


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--t", type=Fraction, default=Fraction(1))
    ap.add_argument("--nmax", type=int, default=8)
    ap.add_argument("--sigma", type=int, default=3)
    args = ap.parse_args()
    alg = ArrangementAlgebra.three_lines(args.t)
    ns = list(range(2, args.nmax + 1))
    print("  q  i  " + " ".join(f"N={n:<3}" for n in ns))
    for q in range(3):
        for i in range(0, 4):
            dims = [TruncatedSlab(alg, q, i, n + args.sigma).dim(n) for n in ns]
            print(f"  {q}  {i}  " + " ".join(f"{d:<5}" for d in dims))


if __name__ == "__main__":
    main()
