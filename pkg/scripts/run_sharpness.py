"""Sharpness family c_j = 1/sqrt(j+1): |v|_2, the norm and their ratio as J grows.

    python3 scripts/run_sharpness.py --j-max 200 --out-dir results/sharpness
"""

import csv
import math
import time
from dataclasses import dataclass

from _config import parse_config, save_config

from paley_hankel.best_constant import sharpness_table


@dataclass
class Config:
    j_max: int = 100
    verify_j_max: int = 10
    out_dir: str = "results/sharpness"


def main(argv=None):
    cfg = parse_config(Config, argv, __doc__.splitlines()[0])
    out = save_config(cfg, cfg.out_dir)
    t0 = time.perf_counter()
    rows = sharpness_table(cfg.j_max, cfg.verify_j_max)
    with open(out / "sharpness.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["J", "l2", "l2_closed_form", "norm", "ratio", "norm_verified", "eigen_residual"])
        for r in rows:
            w.writerow([r.J, repr(r.l2), repr(r.l2_closed_form), repr(r.norm), repr(r.ratio), r.norm_verified,
                        "" if r.eigen_residual is None else repr(r.eigen_residual)])
    last = rows[-1]
    print(f"J={last.J}: ratio {last.ratio:.6f}, sqrt(2) - ratio = {math.sqrt(2) - last.ratio:.2e}")
    print(f"{len(rows)} rows in {time.perf_counter() - t0:.2f}s -> {out / 'sharpness.csv'}")


if __name__ == "__main__":
    main()
