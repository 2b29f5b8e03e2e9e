"""Dimensions realised above q_c by mixing (1,-1) blocks with zeros.

    python3 scripts/interpolation_family.py [--m 1] [--q 3] [--mesh 10]

Each member is a unique, self-similar expansion; its dimension interpolates
linearly between the two Cantor-set bounds c1 and c2.
"""
import argparse
from fractions import Fraction

from tmcantor.dimension import cantor_bounds, self_similar_family
from tmcantor.words import EventuallyPeriodicSeq


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=1)
    ap.add_argument("--q", type=Fraction, default=Fraction(3))
    ap.add_argument("--mesh", type=int, default=10)
    args = ap.parse_args()

    c1, c2 = cantor_bounds(args.m)
    span = c2 - c1
    print(f"c1 = {c1.render()}   c2 = {c2.render()}   at q = {args.q}")
    for s, d in self_similar_family(args.m, args.q, args.mesh):
        t = (d - c1).ratio_to(span)
        period = ",".join(map(str, s.period))
        print(f"  t={str(t):>6}  dim={float(d.evaluate(args.q).center):.6f}  period {period}")


if __name__ == "__main__":
    main()
