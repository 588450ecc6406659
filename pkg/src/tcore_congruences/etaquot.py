"""Eta-quotients prod eta(delta z)^r_delta: modularity conditions, cusp orders,
characters, q-expansions, and the families used for the density theorems."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .qseries import TruncatedSeries, eta_product

__all__ = [
    "EtaQuotient",
    "CuspReport",
    "divisors",
    "factorize",
    "kronecker",
    "weight",
    "check_conditions_24",
    "minimal_level",
    "cusp_order",
    "certify_holomorphic",
    "character",
    "character_factorwise",
    "build_B",
    "build_D",
    "build_B_density",
    "expand",
]


def factorize(n: int) -> dict[int, int]:
    """Trial division; fine for the small levels and moduli used here."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), extending the Jacobi symbol to all integers n."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -1
    v = (n & -n).bit_length() - 1
    if v:
        if a % 2 == 0:
            return 0
        n >>= v
        if v % 2 and a % 8 in (3, 5):
            result = -result
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


_SPEC_RE = re.compile(r"^N=(\d+);(.*)$")


@dataclass(frozen=True)
class EtaQuotient:
    level: int
    exponents: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.level < 1:
            raise ValueError(f"level must be positive, got {self.level}")
        clean = {}
        for delta, r in self.exponents.items():
            if delta < 1 or self.level % delta:
                raise ValueError(f"{delta} does not divide level {self.level}")
            if r:
                clean[int(delta)] = int(r)
        object.__setattr__(self, "exponents", dict(sorted(clean.items())))

    def __hash__(self):
        return hash((self.level, tuple(self.exponents.items())))

    @classmethod
    def from_terms(cls, level: int, terms) -> "EtaQuotient":
        """Build from (delta, r) pairs, summing repeated deltas."""
        acc: dict[int, int] = {}
        for delta, r in terms:
            acc[delta] = acc.get(delta, 0) + r
        return cls(level, acc)

    @classmethod
    def parse(cls, text: str) -> "EtaQuotient":
        """Parse ``N=<int>;<delta>:<r>[,<delta>:<r>]*``; whitespace is ignored."""
        compact = re.sub(r"\s+", "", text)
        match = _SPEC_RE.match(compact)
        if not match:
            raise ValueError(f"malformed eta-quotient spec: {text!r}")
        level = int(match.group(1))
        exps: dict[int, int] = {}
        body = match.group(2)
        for item in body.split(",") if body else []:
            try:
                d, r = item.split(":")
                delta, exp = int(d), int(r)
            except ValueError:
                raise ValueError(f"malformed term {item!r} in {text!r}") from None
            if delta in exps:
                raise ValueError(f"duplicate delta {delta} in {text!r}")
            exps[delta] = exp
        return cls(level, exps)

    def to_spec(self) -> str:
        return f"N={self.level};" + ",".join(f"{d}:{r}" for d, r in self.exponents.items())

    def with_level(self, level: int) -> "EtaQuotient":
        return EtaQuotient(level, self.exponents)

    @property
    def base_level(self) -> int:
        """lcm of the deltas that occur."""
        return math.lcm(*self.exponents) if self.exponents else 1

    @property
    def prefactor(self) -> Fraction:
        """Exponent of q collected from the q^(delta/24) factors."""
        return Fraction(sum(d * r for d, r in self.exponents.items()), 24)

    def s_value(self) -> Fraction:
        """prod delta^r_delta as an exact rational."""
        s = Fraction(1)
        for d, r in self.exponents.items():
            s *= Fraction(d) ** r
        return s


def weight(e: EtaQuotient) -> Fraction:
    return Fraction(sum(e.exponents.values()), 2)


def check_conditions_24(e: EtaQuotient) -> tuple[bool, bool]:
    first = sum(d * r for d, r in e.exponents.items()) % 24 == 0
    second = sum((e.level // d) * r for d, r in e.exponents.items()) % 24 == 0
    return first, second


def minimal_level(e: EtaQuotient, base: int | None = None) -> int:
    """Smallest N = base*M (M >= 1) at which both mod-24 conditions hold.

    ``base`` defaults to ``e.level``.  Raises if sum delta*r_delta is not
    divisible by 24, since no choice of M can repair that.
    """
    base = e.level if base is None else base
    if sum(d * r for d, r in e.exponents.items()) % 24:
        raise ValueError("sum of delta*r_delta is not divisible by 24 at any level")
    for M in range(1, 25):
        first, second = check_conditions_24(EtaQuotient(base * M, e.exponents))
        if first and second:
            return base * M
    raise AssertionError("unreachable: M = 24 always satisfies the second condition")


def cusp_order(e: EtaQuotient, d: int) -> Fraction:
    """Order of vanishing at a cusp c/d of Gamma_0(N); independent of c."""
    N = e.level
    if d < 1 or N % d:
        raise ValueError(f"{d} does not divide level {N}")
    g = math.gcd(d, N // d)
    total = sum(Fraction(math.gcd(d, delta) ** 2 * r, g * d * delta)
                for delta, r in e.exponents.items())
    return Fraction(N, 24) * total


@dataclass(frozen=True)
class CuspReport:
    cusp_orders: dict[int, Fraction]
    holomorphic: bool
    weight: Fraction
    conditions_24: tuple[bool, bool]
    integral_weight: bool

    def to_dict(self) -> dict:
        return {
            "cusp_orders": {str(d): str(v) for d, v in self.cusp_orders.items()},
            "holomorphic": self.holomorphic,
            "weight": str(self.weight),
            "conditions_24": list(self.conditions_24),
            "integral_weight": self.integral_weight,
        }


def certify_holomorphic(e: EtaQuotient) -> CuspReport:
    orders = {d: cusp_order(e, d) for d in divisors(e.level)}
    k = weight(e)
    conds = check_conditions_24(e)
    integral = k.denominator == 1 and k >= 0
    ok = all(conds) and integral and all(v >= 0 for v in orders.values())
    return CuspReport(orders, ok, k, conds, integral)


def _integral_weight(e: EtaQuotient) -> int:
    k = weight(e)
    if k.denominator != 1:
        raise ValueError(f"character needs integral weight, got {k}")
    return int(k)


def character(e: EtaQuotient, d: int) -> int:
    """chi(d) = ((-1)^k s / d) with s = prod delta^r_delta.

    For rational s = a/b, (b/d) = (b/d)^{-1}, so the symbol is evaluated at a*b.
    """
    k = _integral_weight(e)
    if math.gcd(d, e.level) != 1:
        raise ValueError(f"d={d} is not coprime to level {e.level}")
    s = e.s_value()
    return kronecker((-1) ** k * s.numerator * s.denominator, d)


def character_factorwise(e: EtaQuotient, d: int) -> int:
    """Same character, assembled from (-1/d)^k and each (delta/d)^|r_delta|."""
    k = _integral_weight(e)
    if math.gcd(d, e.level) != 1:
        raise ValueError(f"d={d} is not coprime to level {e.level}")
    value = kronecker(-1, d) ** (k % 2)
    for delta, r in e.exponents.items():
        value *= kronecker(delta, d) ** abs(r)
    return value


def _require_coprime6(m: int) -> None:
    if m < 1 or math.gcd(m, 6) != 1:
        raise ValueError(f"m must be a positive integer coprime to 6, got {m}")


def build_B(alpha: int, m: int, j: int) -> tuple[EtaQuotient, int]:
    """eta^(3^a m + 2^(j+1))(2^3 3^(a+1) m z) / (eta(24z) eta^(2^j)(2^4 3^(a+1) m z)).

    Congruent mod 2^(j+1) to sum a_{3^a m}(n) q^(24n + 9^a m^2 - 1).
    """
    _require_coprime6(m)
    if alpha < 0 or j < 1:
        raise ValueError("need alpha >= 0 and j >= 1")
    t = 3**alpha * m
    base = 8 * 3 ** (alpha + 1) * m
    level = 64 * 3 ** (alpha + 1) * m
    e = EtaQuotient.from_terms(level, [(base, t + 2 ** (j + 1)), (24, -1), (2 * base, -(2**j))])
    return e, t * t - 1


def build_D(alpha: int, m: int, j: int) -> tuple[EtaQuotient, int]:
    """eta^(3^a m + 3^(j+1))(2^3 3^(a+1) m z) / (eta(24z) eta^(3^j)(2^3 3^(a+2) m z)),
    congruent mod 3^(j+1) to the same t-core series as :func:`build_B`."""
    _require_coprime6(m)
    if alpha < 0 or j < 1:
        raise ValueError("need alpha >= 0 and j >= 1")
    t = 3**alpha * m
    base = 8 * 3 ** (alpha + 1) * m
    level = 8 * 3 ** (alpha + 2) * m
    e = EtaQuotient.from_terms(level, [(base, t + 3 ** (j + 1)), (24, -1), (3 * base, -(3**j))])
    return e, t * t - 1


def build_B_density(t: int, p: int, j: int) -> tuple[EtaQuotient, int]:
    """eta^t(24tz) eta^(p^(a+j)-1)(24z) / eta^(p^j)(24 p^a z) with p^a || t.

    Congruent mod p^(j+1) to sum a_t(n) q^(24n + t^2 - 1).
    """
    fac = factorize(t) if t > 1 else {}
    if not fac or min(fac) < 5:
        raise ValueError(f"t={t} must be a product of primes >= 5")
    if p not in fac:
        raise ValueError(f"{p} does not divide t={t}")
    if j < 1:
        raise ValueError("need j >= 1")
    a = fac[p]
    level = 64 * 9 * t
    e = EtaQuotient.from_terms(level, [(24 * t, t), (24, p ** (a + j) - 1), (24 * p**a, -(p**j))])
    return e, t * t - 1


def expand(e: EtaQuotient, shift: int, T: int, modulus: int | None = None) -> TruncatedSeries:
    """q^shift * prod (q^delta; q^delta)^r_delta to order T."""
    pre = e.prefactor
    if pre.denominator != 1:
        raise ValueError(f"q-prefactor {pre} is not integral")
    if pre != shift:
        raise ValueError(f"shift {shift} does not match q-prefactor {pre}")
    if shift < 0:
        raise ValueError("negative leading exponent is not representable")
    body = eta_product(e.exponents, max(T - shift, 1), modulus)
    return body.shift(shift, T)
