"""Streaming dimension estimates along the signed Thue-Morse type sequence at q_KL.

    python3 scripts/kl_convergence.py [--m 1] [--k-max 9]

Prints the running estimate at horizons 4^k and its distance to the dimension
at the KL point (log 2 / (3 log q_KL) for m = 1).
"""
import argparse

from tmcantor.bases import komornik_loreti_base
from tmcantor.dimension import dimension_estimate, kl_point_dimension
from tmcantor.mirror import kl_signed_prefix


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=1)
    ap.add_argument("--k-max", type=int, default=9)
    args = ap.parse_args()
    m = args.m

    q = komornik_loreti_base(2 * m)
    limit = kl_point_dimension(m)
    target = float(limit.evaluate(q).center)
    print(f"m={m}  qKL={float(q.center):.12f}  limit {limit.render('qKL')} = {target:.10f}")
    for k in range(2, args.k_max + 1):
        K = 4**k
        est = dimension_estimate(iter(kl_signed_prefix(m, m, K)), q, m, m, K)
        v = float(est.estimate.center)
        print(f"  K=4^{k:<2} {v:.10f}  error {abs(v - target):.3e}")


if __name__ == "__main__":
    main()
