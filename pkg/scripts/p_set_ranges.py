"""Compare the two readings of the s-range in P(t) against the published orbits.

"squares" lets s run over squares of units mod 24m; "units" over all units.
"""

from dataclasses import dataclass

from tcore_congruences.raduseller import ExponentVector, P_set


@dataclass(frozen=True)
class Config:
    published: tuple = (
        (5, 15, 6, {6, 10, 12, 13}),
        (7, 21, 3, {3, 15, 18}), (7, 21, 8, {8, 11, 17}),
        (11, 33, 3, {3, 12, 24, 27, 30}), (13, 39, 7, {7, 10, 16, 22, 28, 31}),
        (7, 35, 4, {4, 17, 22, 24, 29, 32}), (5, 49, 6, {6, 13, 27}),
        (7, 25, 3, {3, 18}), (11, 44, 9, {9, 21, 29, 33, 37}),
        (13, 64, 25, {25}), (19, 76, 3, {3, 7, 19, 31, 35, 55, 63, 71, 75}),
    )


def main(cfg: Config) -> None:
    for p, m, t, want in cfg.published:
        r = ExponentVector.tcore(p)
        sq, un = set(P_set(m, r, t)), set(P_set(m, r, t, "units"))
        print(f"p={p:>2} m={m:>2} t={t:>2}  squares {'ok ' if sq == want else 'DIFF'}"
              f"  units {'ok ' if un == want else 'DIFF'}  published {sorted(want)}")
        if sq != want:
            print(f"{'':17}squares gives {sorted(sq)}, units gives {sorted(un)}")


if __name__ == "__main__":
    main(Config())
