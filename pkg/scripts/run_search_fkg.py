"""Counterexample search for E_n >= 0 on FKG lattices, over a grid of (n, |X|).

    python scripts/run_search_fkg.py --count 2000 --out-dir runs/
"""
import argparse
from pathlib import Path

from corrineq.explorer import SearchConfig, search_fkg
from corrineq.instances import dumps


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=2000)
    ap.add_argument("--n", type=int, nargs="+", default=[3, 4, 5])
    ap.add_argument("--ground", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--out-dir", type=Path, default=Path("runs"))
    args = ap.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)

    print(f"{'n':>3} {'|X|':>4} {'instances':>10} {'zeros':>7} {'minimum':>24}  status")
    for n in args.n:
        for g in args.ground:
            cfg = SearchConfig(master_seed=args.seed, instance_count=args.count,
                               n_range=(n, n), ground_size_range=(g, g))
            rep = search_fkg(cfg)
            (args.out_dir / f"search_n{n}_X{g}.json").write_text(dumps(rep))
            print(f"{n:>3} {g:>4} {rep['instances']:>10} {rep['exact_zeros']:>7} "
                  f"{rep['minimum']:>24}  {rep['status']}")


if __name__ == "__main__":
    main()
