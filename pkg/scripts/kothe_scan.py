"""Koethe row bound against the norm of H_a for random positive symbols of growing length.

    python3 scripts/kothe_scan.py --lengths 16,64,256 --trials 20
"""

import csv
from dataclasses import dataclass

import numpy as np
from _config import parse_config, save_config

from paley_hankel.hankel import make_hankel, op_norm
from paley_hankel.multipliers import cond_sumsquaresum, cond_supsum2, kothe_factorization, kothe_row_bound


@dataclass
class Config:
    lengths: str = "16,64,256"
    trials: int = 20
    decay: float = 1.0
    seed: int = 0
    out_dir: str = "results/kothe"


def main(argv=None):
    cfg = parse_config(Config, argv, __doc__.splitlines()[0])
    out = save_config(cfg, cfg.out_dir)
    rng = np.random.default_rng(cfg.seed)
    rows = []
    for n in (int(x) for x in cfg.lengths.split(",")):
        for t in range(cfg.trials):
            a = rng.uniform(0.5, 1.5, n) / (1.0 + np.arange(n)) ** cfg.decay
            norm = op_norm(make_hankel(a))
            rows.append((n, t, cond_supsum2(a), cond_sumsquaresum(a), kothe_factorization(a, n).T, kothe_row_bound(a), norm))
    with open(out / "kothe.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["length", "trial", "supsum2", "sumsquaresum", "max_row_B", "row_bound", "norm"])
        w.writerows(rows)
    for n in sorted({r[0] for r in rows}):
        sel = [r for r in rows if r[0] == n]
        print(f"length {n}: mean norm {np.mean([r[6] for r in sel]):.4f}, mean row sum {np.mean([r[4] for r in sel]):.4f}, "
              f"mean bound {np.mean([r[5] for r in sel]):.4f}")


if __name__ == "__main__":
    main()
