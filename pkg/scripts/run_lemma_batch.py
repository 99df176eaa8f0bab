"""Seeded verification of E_n >= 0 on chains, one batch per n.

    python scripts/run_lemma_batch.py --count 500 --n 2 3 4 5 6
"""
import argparse
import time

from corrineq.explorer import SearchConfig, verify_lemma_batch


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--n", type=int, nargs="+", default=[2, 3, 4, 5])
    ap.add_argument("--N-max", type=int, default=5)
    args = ap.parse_args()

    for n in args.n:
        t0 = time.perf_counter()
        cfg = SearchConfig(master_seed=args.seed + n, instance_count=args.count,
                           n_range=(n, n), N_range=(1, args.N_max))
        rep = verify_lemma_batch(cfg)
        print(f"n={n}: {rep['instances']} instances, min={rep['by_n'][str(n)]['min']}, "
              f"violations={len(rep['violations'])}, "
              f"zero-mass instances={rep['zero_mass_instances']} "
              f"({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
