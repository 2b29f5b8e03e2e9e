"""Brute-force the dimensions of unique periodic expansions between ladder bases.

    python3 scripts/dimension_sets.py [--m 1] [--k-max 4] [--max-len 8]

For q midway between q_k and q_{k+1} (alphabet {-m..m}) every period up to
``--max-len`` is tested for uniqueness and its dimension recorded; the result is
compared with ``dimension_set`` and with the omega-word periods, whose dimension
uses the sigma index one below the word index.
"""
import argparse
from itertools import product

from tmcantor.bases import ladder_base, omega_word
from tmcantor.dimension import dimension_set, period_dimension, tm_dimension_formula
from tmcantor.expansions import UNIQUE, is_unique_expansion
from tmcantor.words import EventuallyPeriodicSeq, reflect


def brute(m, q, max_len):
    found, seen = set(), set()
    for L in range(1, max_len + 1):
        for p in product(range(-m, m + 1), repeat=L):
            s = EventuallyPeriodicSeq.periodic(p, -m, m)
            if s in seen:
                continue
            seen.add(s)
            if is_unique_expansion(s, q, m, m).verdict == UNIQUE:
                found.add(period_dimension(s.period, m, m))
    return found


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=1)
    ap.add_argument("--k-max", type=int, default=4)
    ap.add_argument("--max-len", type=int, default=8)
    args = ap.parse_args()
    m = args.m

    for k in range(1, args.k_max + 1):
        lo, hi = ladder_base(2 * m, k), ladder_base(2 * m, k + 1)
        q = ((lo.center + hi.center) / 2).limit_denominator(10**6)
        found = brute(m, q, args.max_len)
        ds = dimension_set(m, m, q)
        fmt = lambda vals: ", ".join(sorted(v.render() for v in vals))
        print(f"k={k}  q={float(q):.6f}")
        print(f"   brute force : {fmt(found)}")
        print(f"   predicted   : {fmt(ds.values)}  {'agree' if found == set(ds.values) else 'DIFFER'}")

    print("\nomega-word periods (shifted by -m):")
    for j in range(1, 6):
        w = omega_word(2 * m, j)
        d = period_dimension([x - m for x in (w + reflect(w)).digits], m, m)
        idx = next((i for i in range(0, 8) if tm_dimension_formula(m, i) == d), None)
        print(f"   j={j}: {d.render():<32} = formula({idx})")


if __name__ == "__main__":
    main()
