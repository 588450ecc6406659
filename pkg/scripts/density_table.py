"""Empirical densities of a_t(n) = 0 (mod p^j) at several cut-offs, as CSV."""

import argparse
import sys
from dataclasses import dataclass

from tcore_congruences.density import measure_density


@dataclass(frozen=True)
class Config:
    cases: tuple[tuple[int, int, int], ...] = ((3, 2, 1), (3, 3, 1), (5, 5, 1), (7, 7, 1), (5, 5, 2))
    checkpoints: tuple[int, ...] = (100, 1000, 2000, 10_000, 20_000)


def main(cfg: Config, out) -> None:
    header = True
    for t, p, j in cfg.cases:
        csv_text = measure_density(t, p, j, cfg.checkpoints).to_csv()
        out.write(csv_text if header else csv_text.split("\n", 1)[1])
        header = False


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--checkpoints", default=",".join(map(str, Config.checkpoints)))
    args = ap.parse_args()
    main(Config(checkpoints=tuple(int(x) for x in args.checkpoints.split(","))), sys.stdout)
