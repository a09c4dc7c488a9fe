"""Scalar relating the Moore determinant to the product of linear forms.

Symbolic expansion where small enough, random evaluation otherwise.
"""
import argparse
import random
from dataclasses import dataclass

from frobenius_descent.errors import CapacityExceeded
from frobenius_descent.moore import moore_identity_check, moore_identity_sampled


@dataclass
class TableConfig:
    qs: tuple = (2, 3, 4, 5, 7, 8, 9)
    max_r: int = 3
    points: int = 50
    seed: int = 0


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-r", type=int, default=TableConfig.max_r)
    ap.add_argument("--points", type=int, default=TableConfig.points)
    ap.add_argument("--seed", type=int, default=TableConfig.seed)
    a = ap.parse_args()
    cfg = TableConfig(max_r=a.max_r, points=a.points, seed=a.seed)
    rng = random.Random(cfg.seed)
    print(f"{'q':>3} {'r':>2}  omega  method")
    for q in cfg.qs:
        for r in range(1, cfg.max_r + 1):
            try:
                w, how = moore_identity_check(q, r), "symbolic"
            except CapacityExceeded:
                w, how = moore_identity_sampled(q, r, points=cfg.points, ext=4, rng=rng), "sampled"
            print(f"{q:>3} {r:>2}  {w!r:>5}  {how}")


if __name__ == "__main__":
    main()
