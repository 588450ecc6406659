"""Which offset makes a_{p^j}(p^j n - delta) vanish mod p^j?

Compares delta = -1/24 and delta = +1/24 (mod p^j) over a range of n and
reports the number of violations for each reading.
"""

import argparse
from dataclasses import dataclass

from tcore_congruences.tcore import tcore_series


@dataclass(frozen=True)
class Config:
    primes: tuple[int, ...] = (5, 7, 11)
    max_j: int = 2
    n_max: int = 60
    max_terms: int = 200_000


def violations(p: int, j: int, delta: int, n_max: int) -> tuple[int, int]:
    P = p**j
    s = tcore_series(P, P * n_max, P)
    ns = [n for n in range(1, n_max) if P * n - delta >= 0]
    return sum(1 for n in ns if s.coeff(P * n - delta) != 0), len(ns)


def main(cfg: Config) -> None:
    print(f"{'p':>3} {'j':>2} {'-1/24':>7} {'bad':>5} {'+1/24':>7} {'bad':>5}  checked")
    for p in cfg.primes:
        for j in range(1, cfg.max_j + 1):
            P = p**j
            n_max = min(cfg.n_max, cfg.max_terms // P)
            minus, plus = -pow(24, -1, P) % P, pow(24, -1, P)
            bad_minus, total = violations(p, j, minus, n_max)
            bad_plus, _ = violations(p, j, plus, n_max)
            print(f"{p:>3} {j:>2} {minus:>7} {bad_minus:>5} {plus:>7} {bad_plus:>5}  {total}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=Config.n_max)
    ap.add_argument("--max-j", type=int, default=Config.max_j)
    args = ap.parse_args()
    main(Config(n_max=args.n_max, max_j=args.max_j))
