"""Re-prove every congruence family from the mod 3 and mod 5 tables.

Prints one row per (p, m, t): the orbit P(t), the finite-check bound the
engine uses, the published bound, and the verdict.
"""

import argparse
import time
from dataclasses import dataclass, field

from tcore_congruences.raduseller import CongruenceClaim, verify_claim


@dataclass(frozen=True)
class Row:
    p: int
    m: int
    t: int
    u: int
    published_bound: int | None = None


@dataclass
class Config:
    rows: list[Row] = field(default_factory=lambda: [
        # mod 3, m = 3p; published column is B_p = 4 p_hat (checks run for n < B_p)
        Row(5, 15, 6, 3, 4), Row(5, 15, 10, 3, 4),
        Row(7, 21, 3, 3, 8), Row(7, 21, 8, 3, 8),
        Row(11, 33, 3, 3, 20), Row(11, 33, 11, 3, 20),
        Row(13, 39, 3, 3, 28), Row(13, 39, 7, 3, 28),
        Row(17, 51, 10, 3, 48), Row(17, 51, 14, 3, 48),
        Row(19, 57, 7, 3, 60), Row(19, 57, 14, 3, 60),
        Row(23, 69, 3, 3, 88), Row(23, 69, 16, 3, 88),
        # mod 5, m = 5p; B_p = 6 p_hat
        Row(7, 35, 4, 5, 12), Row(11, 55, 4, 5, 30), Row(11, 55, 7, 5, 30), Row(17, 85, 4, 5, 72),
        # sporadic mod 3; published column is the inclusive bound B_{p,m}
        Row(5, 8, 3, 3, 2), Row(5, 49, 6, 3), Row(5, 49, 20, 3),
        Row(7, 25, 3, 3, 11), Row(7, 25, 8, 3, 11), Row(11, 44, 9, 3, 29),
        Row(13, 12, 3, 3, 5), Row(13, 64, 25, 3, 20), Row(19, 76, 3, 3, 89),
    ])


def main(cfg: Config, as_json: bool) -> None:
    start = time.perf_counter()
    if not as_json:
        print(f"{'p':>3} {'m':>3} {'t':>3} {'u':>2}  {'N':>4} {'bound':>5} {'publ':>5}  verdict   P(t)")
    for row in cfg.rows:
        rep = verify_claim(CongruenceClaim(row.p, row.m, row.t, row.u))
        if as_json:
            print(rep.to_json())
            continue
        published = "-" if row.published_bound is None else row.published_bound
        print(f"{row.p:>3} {row.m:>3} {row.t:>3} {row.u:>2}  {rep.N:>4} {rep.bound!s:>5} {published!s:>5}"
              f"  {rep.verdict:<8}  {rep.P_set}")
    if not as_json:
        print(f"{len(cfg.rows)} claims in {time.perf_counter() - start:.2f}s")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--json", action="store_true", help="emit full JSON reports")
    main(Config(), ap.parse_args().json)
