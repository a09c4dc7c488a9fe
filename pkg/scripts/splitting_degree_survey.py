"""Distribution of splitting degrees for random semilinear automorphisms.

For each small field F_{q^m} and size n, samples invertible A and tabulates
e = ord(A phi(A) ... phi^{m-1}(A)), the extension degree after which the
fixed space of v -> A phi(v) has full dimension.  Samples whose splitting
field would exceed the table-backed range are counted as ``over cap``.
"""
import argparse
import random
from collections import Counter
from dataclasses import dataclass

from frobenius_descent.errors import CapacityExceeded
from frobenius_descent.instances import practical_cap, small_fields
from frobenius_descent.linalg import MatrixF
from frobenius_descent.semilinear import SemilinearEndo, splitting_degree


@dataclass
class SurveyConfig:
    max_order: int = 9
    max_n: int = 3
    samples: int = 200
    seed: int = 0


def survey(cfg: SurveyConfig):
    rng = random.Random(cfg.seed)
    rows = []
    for F in small_fields(cfg.max_order):
        cap = practical_cap(F.p)
        for n in range(1, cfg.max_n + 1):
            dist: Counter = Counter()
            for _ in range(cfg.samples):
                sigma = SemilinearEndo(F, MatrixF.random_invertible(F, n, rng))
                try:
                    dist[splitting_degree(sigma, cap)] += 1
                except CapacityExceeded:
                    dist["over cap"] += 1
            rows.append((F.q, F.m, n, dist))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(SurveyConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    cfg = SurveyConfig(**vars(ap.parse_args()))
    print(f"{'q':>3} {'m':>2} {'n':>2}  distribution of e")
    for q, m, n, dist in survey(cfg):
        parts = ", ".join(f"{k}: {v}" for k, v in sorted(dist.items(), key=lambda kv: str(kv[0]).zfill(9)))
        print(f"{q:>3} {m:>2} {n:>2}  {parts}")


if __name__ == "__main__":
    main()
