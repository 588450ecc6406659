"""Counting t-core partitions: generating function, brute force, parity rule."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Literal

from .qseries import TruncatedSeries, dilate, euler_function, inverse, mul, power

ORACLE_MAX_N = 60

HookTable = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        if any(x <= 0 for x in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be non-increasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for x in self.parts if x > j) for j in range(self.parts[0])))

    def __len__(self) -> int:
        return len(self.parts)


def partitions(n: int) -> Iterator[Partition]:
    """All partitions of n in lexicographically descending order."""
    if n < 0:
        return
    if n == 0:
        yield Partition(())
        return
    parts = [n]
    while True:
        yield Partition(tuple(parts))
        # strip trailing 1s, decrement the last part > 1, refill greedily
        ones = 0
        while parts and parts[-1] == 1:
            parts.pop()
            ones += 1
        if not parts:
            return
        k = parts.pop() - 1
        rest = ones + 1
        while rest > k:
            parts.append(k)
            rest -= k
        parts.append(k)
        if rest:
            parts.append(rest)


def hook_table(p: Partition) -> HookTable:
    cols = p.conjugate().parts
    return tuple(
        tuple(row + cols[j] - i - j - 1 for j in range(row))
        for i, row in enumerate(p.parts)
    )


def is_tcore(p: Partition, t: int) -> bool:
    if t < 1:
        raise ValueError("t must be at least 1")
    return all(h % t for row in hook_table(p) for h in row)


def tcore_count_oracle(t: int, n: int) -> int:
    """a_t(n) by enumerating every partition of n and inspecting its hooks."""
    if t < 1 or n < 0:
        raise ValueError("need t >= 1 and n >= 0")
    if n > ORACLE_MAX_N:
        raise ValueError(f"oracle guard: n={n} exceeds {ORACLE_MAX_N}")
    return sum(1 for p in partitions(n) if is_tcore(p, t))


def tcore_series(t: int, T: int, modulus: int | None = None) -> TruncatedSeries:
    """sum a_t(n) q^n = (q^t; q^t)^t / (q; q), to order T."""
    if t < 1 or T < 1:
        raise ValueError("need t >= 1 and T >= 1")
    numerator = power(dilate(euler_function((T - 1) // t + 1, modulus), t, T), t)
    return mul(numerator, inverse(euler_function(T, modulus)))


def a3_parity(n: int) -> Literal["odd", "even"]:
    # n = 3m^2 + 2m  <=>  3n + 1 = (3m + 1)^2, and 3n+1 is never divisible by 3
    if n < 0:
        raise ValueError("n must be non-negative")
    r = math.isqrt(3 * n + 1)
    return "odd" if r * r == 3 * n + 1 else "even"


def delta_p(p: int) -> int:
    """(p^2 - 1)/24, the offset in a_p(p^j n - delta_p) = 0 mod p^j."""
    if (p * p - 1) % 24:
        raise ValueError(f"(p^2-1)/24 is not integral for p={p}")
    return (p * p - 1) // 24


def granville_ono_offset(p: int, j: int) -> int:
    """delta_{p,j} in [0, p^j) for a_{p^j}(p^j n - delta_{p,j}) = 0.

    The working normalisation is delta = -1/24 (mod p^j), i.e. the arguments
    N satisfy 24N = 1 (mod p^j); at j = 1 this reduces to delta_p.
    """
    if p < 5 or j < 1:
        raise ValueError("need p >= 5 and j >= 1")
    P = p**j
    return -pow(24, -1, P) % P
