"""The bases q_1 < q_2 < ... < q_KL (and q_c for even M), certified disjoint.

    python3 scripts/ladder_table.py [--max-digit 1 2 3] [--k 8]
"""
import argparse

import mpmath

from tmcantor.bases import certified_ladder, critical_base_qc, omega_word


def _nstr(x):
    return mpmath.nstr(mpmath.mpf(x.numerator) / x.denominator, 3)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-digit", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--k", type=int, default=8)
    args = ap.parse_args()

    mpmath.mp.dps = 30
    for M in args.max_digit:
        qs = certified_ladder(M, args.k)
        print(f"M = {M}")
        for i, q in enumerate(qs):
            name = f"q{i + 1}" if i < args.k else "qKL"
            gap = "" if i == 0 else f"  gap {_nstr(q.lo - qs[i - 1].hi)}"
            word = "".join(map(str, omega_word(M, i + 1).digits))[:24] if i < args.k else "(infinite)"
            print(f"  {name:>4} {mpmath.nstr(q.mpf(), 20):<24} r={float(q.radius):.1e}{gap}  {word}")
        if M % 2 == 0:
            print(f"  {'qc':>4} {mpmath.nstr(critical_base_qc(M // 2).mpf(), 20)}")


if __name__ == "__main__":
    main()
