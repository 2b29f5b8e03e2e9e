"""Block densities in the classical Thue-Morse word, exact and empirical.

    python3 scripts/frequency_table.py [--max-len 5] [--length 262144]

Every binary block up to ``--max-len`` is listed with its exact density, the
level n used, and a sliding-window count over the first ``--length`` letters.
"""
import argparse
from itertools import product

from tmcantor import MirrorSeed, Word, block_density
from tmcantor.frequency import empirical_block_density


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-len", type=int, default=5)
    ap.add_argument("--length", type=int, default=2**18)
    args = ap.parse_args()

    seed = MirrorSeed(Word([0], 1))
    print(f"{'block':>8} {'n':>2} {'N':>4} {'P':>4} {'density':>8} {'empirical':>10}")
    for L in range(1, args.max_len + 1):
        total = 0
        for bits in product((0, 1), repeat=L):
            delta = Word(list(bits), 1)
            r = block_density(delta, seed)
            emp = empirical_block_density(delta, seed, args.length)
            total += r.value
            print(f"{''.join(map(str, bits)):>8} {r.n_used:>2} {r.N_count:>4} {r.P_count:>4} "
                  f"{str(r.value):>8} {float(emp):>10.5f}")
        # densities of all blocks of one length sum to 1
        print(f"{'sum':>8} {'':>2} {'':>4} {'':>4} {str(total):>8}")


if __name__ == "__main__":
    main()
