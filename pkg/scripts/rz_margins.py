"""Worst Hermite margins of det(I - xi H - eta K) over random matrices, per dimension.

Also runs a perturbation experiment: adding eps * (xi^4 + eta^4) terms to a
determinant polynomial of degree 4 and recording when the RZ test starts failing.
"""

import argparse
from dataclasses import dataclass

import numpy as np

from rangeshape import BivariatePoly, hermitian_parts, kippenhahn_poly, rz_test


@dataclass
class Config:
    per_dim: int = 20
    max_dim: int = 6
    directions: int = 180
    seed: int = 0


def main(cfg: Config) -> None:
    rng = np.random.default_rng(cfg.seed)
    print("d  worst_margin  median_margin")
    for d in range(1, cfg.max_dim + 1):
        worst = []
        for _ in range(cfg.per_dim):
            A = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
            worst.append(rz_test(kippenhahn_poly(hermitian_parts(A)), cfg.directions).worst_margin)
        print(f"{d}  {min(worst):+.3e}  {np.median(worst):+.3e}")

    A = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    q = kippenhahn_poly(hermitian_parts(A))
    scale = np.max(np.abs(q.coeffs))
    print("\neps        verdict  failing_fraction  worst_margin")
    for eps in (0.0, 1e-6, 1e-4, 1e-2, 1e-1, 1.0):
        bump = BivariatePoly.from_terms([(4, 0, eps * scale), (0, 4, eps * scale)])
        rep = rz_test(q + bump, cfg.directions)
        print(f"{eps:<9.0e}  {rep.verdict:<7}  {rep.failure_fraction:16.2f}  {rep.worst_margin:+.3e}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--per-dim", type=int, default=Config.per_dim)
    ap.add_argument("--seed", type=int, default=Config.seed)
    a = ap.parse_args()
    main(Config(per_dim=a.per_dim, seed=a.seed))
