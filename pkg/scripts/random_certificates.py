"""Random strongly lacunary sets: how close the certificates get to the true norm.

For each draw, v is rescaled to |v|_2 = 1/sqrt 2 and compared against three
upper bounds: the fold certificate (1), the strong row bound and the
geometric certificate at 1.001 times the norm.

    python3 scripts/random_certificates.py --trials 200 --k-max 512
"""

import csv
import time
from dataclasses import dataclass

import numpy as np
from _config import parse_config, save_config

from paley_hankel.best_constant import certified_norm_leq_one, forward_v, inverse_c
from paley_hankel.hankel import make_paley_hankel, op_norm
from paley_hankel.schur import geometric_certificate, paley_row_bound, verify_certificate


@dataclass
class Config:
    trials: int = 200
    k_max: int = 512
    seed: int = 0
    out_dir: str = "results/random_certificates"


def random_set(rng, k_max):
    K = [0]
    while (nxt := 2 * K[-1] + 1 + int(rng.integers(0, K[-1] + 3))) <= k_max:
        K.append(nxt)
    return K


def main(argv=None):
    cfg = parse_config(Config, argv, __doc__.splitlines()[0])
    out = save_config(cfg, cfg.out_dir)
    rng = np.random.default_rng(cfg.seed)
    t0 = time.perf_counter()
    rows = []
    for t in range(cfg.trials):
        K = random_set(rng, cfg.k_max)
        v = rng.uniform(0.05, 1, len(K))
        v *= (1 / np.sqrt(2)) / np.linalg.norm(v)
        c = inverse_c(v)
        A = make_paley_hankel(K, forward_v(c))
        norm = op_norm(A)
        fold_ok = verify_certificate(A, certified_norm_leq_one(K, c)).ok
        geo_ok = verify_certificate(A, geometric_certificate(A, 1.001 * norm)).ok
        rows.append((t, len(K), K[-1], norm, fold_ok, paley_row_bound(K, v), geo_ok))
    with open(out / "certificates.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["trial", "terms", "k_max", "norm", "fold_ok", "row_bound", "geometric_ok"])
        w.writerows(rows)
    norms = np.array([r[3] for r in rows])
    print(f"{cfg.trials} trials in {time.perf_counter() - t0:.1f}s; norm at |v| = 1/sqrt2: max {norms.max():.6f}, mean {norms.mean():.6f}")
    print(f"fold certificates ok: {sum(r[4] for r in rows)}, geometric ok: {sum(r[6] for r in rows)}")


if __name__ == "__main__":
    main()
