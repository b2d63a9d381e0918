"""Symmetric realizations B of random A: convergence rate, distance and cost by dimension."""

import argparse
import time
from dataclasses import dataclass

import numpy as np

from rangeshape import SymmetrizeOptions, symmetrize


@dataclass
class Config:
    per_dim: int = 10
    dims: tuple = (2, 3, 4)
    tol: float = 1e-3
    restarts: int = 8
    seed: int = 0


def main(cfg: Config) -> None:
    rng = np.random.default_rng(cfg.seed)
    print("d  converged  worst_rel_dist  mean_restarts  mean_evals  mean_s")
    for d in cfg.dims:
        rows = []
        for i in range(cfg.per_dim):
            A = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
            t0 = time.perf_counter()
            r = symmetrize(A, SymmetrizeOptions(tol=cfg.tol, max_restarts=cfg.restarts, seed=i))
            rows.append((r.converged, r.relative_distance, r.restarts_used, r.evaluations,
                         time.perf_counter() - t0))
        c, dist, rs, ev, sec = zip(*rows)
        print(f"{d}  {sum(c):>4}/{len(c):<4}  {max(dist):14.2e}  {np.mean(rs):13.1f}  "
              f"{np.mean(ev):10.0f}  {np.mean(sec):6.2f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--per-dim", type=int, default=Config.per_dim)
    ap.add_argument("--dims", type=int, nargs="+", default=list(Config.dims))
    ap.add_argument("--tol", type=float, default=Config.tol)
    ap.add_argument("--seed", type=int, default=Config.seed)
    a = ap.parse_args()
    main(Config(per_dim=a.per_dim, dims=tuple(a.dims), tol=a.tol, seed=a.seed))
