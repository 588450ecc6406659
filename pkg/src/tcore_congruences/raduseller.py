"""Finite-check proofs of congruences a_p(mn + t') = 0 (mod u), t' in P(t).

The engine specialises Radu's Delta* machinery to the t-core generating
function prod (q^p; q^p)^p / (q; q), i.e. M = p and r = (r_1, r_p) = (-1, p).
Double-coset representatives come from the square-free criterion, so levels
N with neither N nor N/2 square-free are reported as not applicable.
"""

from __future__ import annotations

import functools
import json
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Mapping, Sequence

import numpy as np

from .etaquot import divisors, factorize
from .tcore import tcore_series

__all__ = [
    "ExponentVector",
    "DeltaStarTuple",
    "DeltaStarReport",
    "CongruenceClaim",
    "VerificationReport",
    "NotApplicableError",
    "SeriesGuardError",
    "kappa",
    "p_hat",
    "A_t",
    "eps2",
    "epsp",
    "P_set",
    "delta_star_check",
    "p_mr",
    "p_star_a",
    "coset_reps",
    "index_gamma0",
    "nu_value",
    "nu_bound",
    "tcore_tuple",
    "verify_claim",
    "corollary_bounds",
]

M_GUARD = 10**6
DEFAULT_MAX_SERIES = 200_000

Matrix = tuple[tuple[int, int], tuple[int, int]]
SRange = Literal["squares", "units"]


class NotApplicableError(ValueError):
    """A hypothesis of the finite-check lemma is not met."""


class SeriesGuardError(RuntimeError):
    """The coefficient check would need a series longer than the guard allows."""


def max_series() -> int:
    return int(os.environ.get("TCORE_MAX_SERIES", DEFAULT_MAX_SERIES))


def _is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def _squarefree(n: int) -> bool:
    return all(e == 1 for e in factorize(n).values())


def kappa(m: int) -> int:
    if m < 1:
        raise ValueError("m must be positive")
    return math.gcd(m * m - 1, 24)


def p_hat(p: int) -> int | Fraction:
    """(p^2 - 1)/24; an integer for p >= 5, 1/3 for p = 3."""
    if not _is_prime(p) or p == 2:
        raise ValueError(f"p must be an odd prime, got {p}")
    value = Fraction(p * p - 1, 24)
    return int(value) if value.denominator == 1 else value


def A_t(m: int, p: int, t: int) -> int:
    if not 0 <= t < m:
        raise ValueError(f"t={t} outside [0, {m})")
    k = kappa(m)
    return 24 * m // math.gcd(-k * (24 * t + p * p - 1), 24 * m)


def eps2(m: int, p: int) -> int:
    if m % 2:
        return 0
    return (1 - (-1) ** ((p - 1) // 2)) // 2


def epsp(m: int, p: int) -> int:
    return 0 if m % p == 0 else 1


@dataclass(frozen=True)
class ExponentVector:
    M: int
    r: Mapping[int, int]

    def __post_init__(self):
        for d in self.r:
            if self.M % d:
                raise ValueError(f"{d} does not divide M={self.M}")
        object.__setattr__(self, "r", dict(sorted(self.r.items())))

    def __hash__(self):
        return hash((self.M, tuple(self.r.items())))

    @classmethod
    def tcore(cls, p: int) -> "ExponentVector":
        return cls(p, {1: -1, p: p})

    @property
    def weighted_sum(self) -> int:
        """sum delta * r_delta."""
        return sum(d * x for d, x in self.r.items())

    @property
    def plain_sum(self) -> int:
        return sum(self.r.values())


@dataclass(frozen=True)
class DeltaStarTuple:
    m: int
    M: int
    N: int
    r: ExponentVector
    t: int


@dataclass(frozen=True)
class DeltaStarReport:
    conditions: dict[str, bool]
    s: int
    j: int

    @property
    def member(self) -> bool:
        return all(self.conditions.values())


def delta_star_check(tup: DeltaStarTuple) -> DeltaStarReport:
    """Evaluate conditions (a)-(f) of the Delta* definition one by one."""
    m, M, N, r, t = tup.m, tup.M, tup.N, tup.r.r, tup.t
    if tup.r.M != M:
        raise ValueError("exponent vector is indexed by a different M")
    k = kappa(m)
    prod = 1
    for d, x in r.items():
        prod *= d ** abs(x)
    s = (prod & -prod).bit_length() - 1
    j = prod >> s
    wsum = sum(d * x for d, x in r.items())
    conds = {
        "a": all(N % q == 0 for q in factorize(m)) if m > 1 else True,
        "b": all((m * N) % d == 0 for d, x in r.items() if x),
        "c": (k * N * sum(x * m * N // d for d, x in r.items())) % 24 == 0,
        "d": (k * N * sum(r.values())) % 8 == 0,
        "e": N % (24 * m // math.gcd(-24 * k * t - k * wsum, 24 * m)) == 0,
        "f": (m % 2 == 1
              or ((k * N) % 4 == 0 and (s * N) % 8 == 0)
              or (s % 2 == 0 and ((1 - j) * N) % 8 == 0)),
    }
    return DeltaStarReport(conds, s, j)


@functools.lru_cache(maxsize=256)
def _s_residues(m: int, which: SRange) -> tuple[int, ...]:
    mod = 24 * m
    xs = np.arange(mod, dtype=np.int64)
    units = xs[np.gcd(xs, mod) == 1]
    if which == "squares":
        return tuple(sorted(set((units * units % mod).tolist())))
    if which == "units":
        return tuple(units.tolist())
    raise ValueError(f"unknown s-range {which!r}")


def P_set(m: int, r: ExponentVector, t: int, s_range: SRange = "squares") -> list[int]:
    """Residues t' = t s + (s-1)/24 * sum delta r_delta (mod m) over [s] in Z_{24m}.

    ``s_range`` selects squares of units (the default) or all units; residues
    s for which (s-1)*sum is not divisible by 24 are skipped.
    """
    if m > M_GUARD:
        raise ValueError(f"m={m} exceeds guard {M_GUARD}")
    if not 0 <= t < m:
        raise ValueError(f"t={t} outside [0, {m})")
    w = r.weighted_sum
    out = set()
    for s in _s_residues(m, s_range):
        num = (s - 1) * w
        if num % 24:
            continue
        out.add((t * s + num // 24) % m)
    return sorted(out)


def p_mr(gamma: Matrix, m: int, r: ExponentVector) -> Fraction:
    (a, b), (c, d) = gamma
    if a * d - b * c != 1:
        raise ValueError(f"{gamma} is not in SL2(Z)")
    k = kappa(m)
    best = None
    for lam in range(m):
        val = sum(Fraction(x * math.gcd(delta * a + delta * k * lam * c, m * c) ** 2, delta * m)
                  for delta, x in r.r.items())
        if best is None or val < best:
            best = val
    return best / 24


def p_star_a(gamma: Matrix, a: Mapping[int, int], N: int) -> Fraction:
    c = gamma[1][0]
    total = Fraction(0)
    for delta, x in a.items():
        if N % delta:
            raise ValueError(f"{delta} does not divide N={N}")
        total += Fraction(x * math.gcd(delta, c) ** 2, delta)
    return total / 24


def coset_reps(N: int) -> list[Matrix]:
    """[[1,0],[delta,1]] for delta | N; complete when N or N/2 is square-free."""
    if not (_squarefree(N) or (N % 2 == 0 and _squarefree(N // 2))):
        raise NotApplicableError(f"neither {N} nor {N}/2 is square-free")
    return [((1, 0), (delta, 1)) for delta in divisors(N)]


def index_gamma0(N: int) -> int:
    if N < 1:
        raise ValueError("N must be positive")
    idx = Fraction(N)
    for q in factorize(N):
        idx *= Fraction(q + 1, q)
    return int(idx)


def nu_value(tup: DeltaStarTuple, a: Mapping[int, int], t_min: int) -> Fraction:
    r = tup.r
    idx = index_gamma0(tup.N)
    return (Fraction((r.plain_sum + sum(a.values())) * idx - sum(d * x for d, x in a.items()), 24)
            - Fraction(r.weighted_sum, 24 * tup.m) - Fraction(t_min, tup.m))


def nu_bound(tup: DeltaStarTuple, a: Mapping[int, int] | None, t_min: int) -> int:
    """floor(nu) after checking Delta* membership and p_mr + p*_a >= 0 on coset reps."""
    a = dict(a or {})
    report = delta_star_check(tup)
    if not report.member:
        failed = [k for k, v in report.conditions.items() if not v]
        raise NotApplicableError(f"tuple not in Delta*: conditions {failed} fail")
    for gamma in coset_reps(tup.N):
        if p_mr(gamma, tup.m, tup.r) + p_star_a(gamma, a, tup.N) < 0:
            raise NotApplicableError(f"p_mr + p*_a < 0 at {gamma}")
    return math.floor(nu_value(tup, a, t_min))


def tcore_tuple(p: int, m: int, t: int) -> DeltaStarTuple:
    """(m, p, 2^eps2 p^epsp p_1...p_g, (-1, p), t) for m = prod p_i^e_i."""
    N = 2 ** eps2(m, p) * p ** epsp(m, p) * math.prod(factorize(m)) if m > 1 \
        else p ** epsp(m, p)
    return DeltaStarTuple(m, p, N, ExponentVector.tcore(p), t)


def corollary_bounds(variant: str, p: int, m: int | None = None, q: int | None = None) -> int:
    """Closed-form check bounds.

    ``general``: floor(2^eps2 (p+1)^epsp (p-1) prod(p_i+1)/24 - (p^2-1)/(24m));
    ``squarefree``: 2^eps2 p_hat prod_{p_i != p}(p_i+1) - 1 for square-free m with p | m;
    ``m=2p``: 2^eps2 * 3 p_hat - 1;  ``m=pq``: p_hat (q+1).
    """
    if not _is_prime(p) or p < 3:
        raise ValueError(f"p must be an odd prime, got {p}")
    if variant == "general":
        if m is None:
            raise ValueError("general bound needs m")
        primes = factorize(m) if m > 1 else {}
        val = Fraction(2 ** eps2(m, p) * (p + 1) ** epsp(m, p) * (p - 1)
                       * math.prod(x + 1 for x in primes), 24) - Fraction(p * p - 1, 24 * m)
        return math.floor(val)
    if p < 5:
        raise ValueError(f"{variant} bound needs p >= 5")
    ph = (p * p - 1) // 24
    if variant == "squarefree":
        if m is None or m % p or not _squarefree(m):
            raise ValueError(f"m={m} must be square-free and divisible by p={p}")
        return 2 ** eps2(m, p) * ph * math.prod(x + 1 for x in factorize(m) if x != p) - 1
    if variant == "m=2p":
        return 2 ** eps2(2 * p, p) * 3 * ph - 1
    if variant == "m=pq":
        if q is None or not _is_prime(q) or q < 3 or q == p:
            raise ValueError(f"q={q} must be an odd prime different from p={p}")
        return ph * (q + 1)
    raise ValueError(f"unknown variant {variant!r}")


@dataclass(frozen=True)
class CongruenceClaim:
    p: int
    m: int
    t: int
    u: int

    def __post_init__(self):
        if not _is_prime(self.p) or self.p < 3:
            raise ValueError(f"p must be a prime >= 3, got {self.p}")
        if self.m < 1 or self.m > M_GUARD:
            raise ValueError(f"m must lie in [1, {M_GUARD}], got {self.m}")
        if not 0 <= self.t < self.m:
            raise ValueError(f"t={self.t} outside [0, {self.m})")
        if self.u < 2:
            raise ValueError(f"modulus u must be at least 2, got {self.u}")

    @classmethod
    def from_dict(cls, d: Mapping) -> "CongruenceClaim":
        return cls(*(int(d[k]) for k in ("p", "m", "t", "u")))

    def to_dict(self) -> dict:
        return {"p": self.p, "m": self.m, "t": self.t, "u": self.u}

    def __str__(self) -> str:
        return f"a_{self.p}({self.m}n + t') = 0 (mod {self.u}) for t' in P({self.t})"


Verdict = Literal["proven", "refuted", "not_applicable"]


@dataclass
class VerificationReport:
    claim: CongruenceClaim
    kappa: int
    p_hat: int | Fraction
    A_t: int
    eps2: int
    epsp: int
    N: int
    delta_star: dict[str, bool]
    P_set: list[int]
    t_min: int | None
    nu: Fraction | None
    bound: int | None
    theorem_bound: int
    corollary_bound: int | None
    checks: list[tuple[int, int, int]] = field(default_factory=list)
    verdict: Verdict = "not_applicable"
    witness: tuple[int, int, int] | None = None
    reason: str | None = None

    def to_dict(self) -> dict:
        def opt(x):
            return None if x is None else str(x)

        return {
            "claim": {k: str(v) for k, v in self.claim.to_dict().items()},
            "kappa": str(self.kappa),
            "p_hat": str(self.p_hat),
            "A_t": str(self.A_t),
            "eps2": str(self.eps2),
            "epsp": str(self.epsp),
            "N": str(self.N),
            "delta_star": dict(self.delta_star),
            "P_set": [str(x) for x in self.P_set],
            "t_min": opt(self.t_min),
            "nu": opt(self.nu),
            "bound": opt(self.bound),
            "theorem_bound": str(self.theorem_bound),
            "corollary_bound": opt(self.corollary_bound),
            "checks": [[str(x) for x in c] for c in self.checks],
            "verdict": self.verdict,
            "witness": None if self.witness is None else [str(x) for x in self.witness],
            "reason": self.reason,
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=indent)

    @classmethod
    def from_dict(cls, d: Mapping) -> "VerificationReport":
        def opt(x, conv=int):
            return None if x is None else conv(x)

        return cls(
            claim=CongruenceClaim.from_dict(d["claim"]),
            kappa=int(d["kappa"]),
            p_hat=_int_or_fraction(d["p_hat"]),
            A_t=int(d["A_t"]),
            eps2=int(d["eps2"]),
            epsp=int(d["epsp"]),
            N=int(d["N"]),
            delta_star={k: bool(v) for k, v in d["delta_star"].items()},
            P_set=[int(x) for x in d["P_set"]],
            t_min=opt(d["t_min"]),
            nu=opt(d["nu"], Fraction),
            bound=opt(d["bound"]),
            theorem_bound=int(d["theorem_bound"]),
            corollary_bound=opt(d["corollary_bound"]),
            checks=[tuple(int(x) for x in c) for c in d["checks"]],
            verdict=d["verdict"],
            witness=None if d["witness"] is None else tuple(int(x) for x in d["witness"]),
            reason=d["reason"],
        )

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls.from_dict(json.loads(text))


def _int_or_fraction(s: str) -> int | Fraction:
    f = Fraction(s)
    return int(f) if f.denominator == 1 else f


@functools.lru_cache(maxsize=32)
def _cached_series(p: int, u: int, T: int):
    return tcore_series(p, T, u)


def _series(p: int, u: int, T: int):
    # round up so nearby requests share one expansion
    return _cached_series(p, u, -(-T // 4096) * 4096)


def coefficient_checks(p: int, m: int, residues: Sequence[int], u: int,
                       upto: int) -> list[tuple[int, int, int]]:
    """(t', n, a_p(mn + t') mod u) for t' in residues and 0 <= n <= upto, by index."""
    need = m * upto + max(residues) + 1
    if need > max_series():
        raise SeriesGuardError(f"needs {need} coefficients; guard is {max_series()} "
                               "(raise TCORE_MAX_SERIES to allow)")
    series = _series(p, u, need)
    checks = [(tp, n, series.coeff(m * n + tp)) for tp in residues for n in range(upto + 1)]
    checks.sort(key=lambda c: m * c[1] + c[0])
    return checks


def verify_claim(claim: CongruenceClaim, s_range: SRange = "squares") -> VerificationReport:
    p, m, t, u = claim.p, claim.m, claim.t, claim.u
    tup = tcore_tuple(p, m, t)
    P = P_set(m, tup.r, t, s_range)
    cor = None
    if p >= 5 and m % p == 0 and _squarefree(m):
        cor = corollary_bounds("squarefree", p, m)
    report = VerificationReport(
        claim=claim, kappa=kappa(m), p_hat=p_hat(p), A_t=A_t(m, p, t),
        eps2=eps2(m, p), epsp=epsp(m, p), N=tup.N,
        delta_star=delta_star_check(tup).conditions, P_set=P, t_min=min(P),
        nu=None, bound=None, theorem_bound=corollary_bounds("general", p, m),
        corollary_bound=cor,
    )
    if tup.N % report.A_t:
        report.reason = f"A_t={report.A_t} does not divide N={tup.N}"
        return report
    try:
        report.bound = nu_bound(tup, None, report.t_min)
    except NotApplicableError as exc:
        report.reason = str(exc)
        return report
    report.nu = nu_value(tup, {}, report.t_min)
    report.checks = coefficient_checks(p, m, P, u, max(report.bound, 0)) if report.bound >= 0 else []
    bad = next((c for c in report.checks if c[2] != 0), None)
    if bad is None:
        report.verdict = "proven"
    else:
        report.verdict = "refuted"
        report.witness = bad
    return report
