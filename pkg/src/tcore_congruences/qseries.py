"""Truncated power series in q over the integers or over Z/uZ.

Coefficients live in a read-only numpy array: ``dtype=object`` (Python ints)
for exact series, ``int64`` in ``[0, u)`` when a modulus is attached.  The
truncation order is the array length; coefficients at or beyond it are
unknown and reading them raises :class:`TruncationError`.
"""

from __future__ import annotations

import math
from typing import Iterable

import numpy as np

__all__ = [
    "TruncatedSeries",
    "TruncationError",
    "ModulusMismatchError",
    "euler_function",
    "mul",
    "power",
    "inverse",
    "dilate",
    "reduce_mod",
    "pentagonal_terms",
]

# sums of products must stay exactly representable in the FFT path
_FFT_EXACT_LIMIT = 2**44
_INT64_SAFE = 2**62
# operands with at most this many nonzero terms are applied term by term
_SPARSE_TERMS = 64


class TruncationError(IndexError):
    """A coefficient at or past the truncation order was requested."""


class ModulusMismatchError(ValueError):
    """Two series with different coefficient rings were combined."""


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


class TruncatedSeries:
    """sum_{n < T} c_n q^n, with T = ``trunc_order``."""

    __slots__ = ("_coeffs", "_modulus")

    def __init__(self, coeffs: Iterable[int], modulus: int | None = None):
        vals = [int(c) for c in coeffs]
        if not vals:
            raise ValueError("truncation order must be at least 1")
        if modulus is None:
            arr = np.empty(len(vals), dtype=object)
            arr[:] = vals
        else:
            modulus = int(modulus)
            if modulus < 1:
                raise ValueError(f"modulus must be positive, got {modulus}")
            arr = np.array([v % modulus for v in vals], dtype=np.int64)
        self._coeffs = _freeze(arr)
        self._modulus = modulus

    @classmethod
    def _wrap(cls, arr: np.ndarray, modulus: int | None) -> "TruncatedSeries":
        # trusted constructor: arr already normalised and owned
        obj = cls.__new__(cls)
        obj._coeffs = _freeze(arr)
        obj._modulus = modulus
        return obj

    @classmethod
    def one(cls, trunc_order: int, modulus: int | None = None) -> "TruncatedSeries":
        return cls.monomial(0, trunc_order, modulus)

    @classmethod
    def monomial(cls, exponent: int, trunc_order: int, modulus: int | None = None,
                 coefficient: int = 1) -> "TruncatedSeries":
        arr = _zeros(trunc_order, modulus)
        if exponent < trunc_order:
            arr[exponent] = coefficient % modulus if modulus else coefficient
        return cls._wrap(arr, modulus)

    @property
    def trunc_order(self) -> int:
        return len(self._coeffs)

    @property
    def modulus(self) -> int | None:
        return self._modulus

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    def coeff(self, n: int) -> int:
        if n < 0:
            return 0
        if n >= self.trunc_order:
            raise TruncationError(f"coefficient of q^{n} unknown at truncation order {self.trunc_order}")
        return int(self._coeffs[n])

    __getitem__ = coeff

    def tolist(self) -> list[int]:
        return [int(c) for c in self._coeffs]

    def nonzero_terms(self) -> list[tuple[int, int]]:
        idx = np.flatnonzero(self._coeffs != 0)
        return [(int(i), int(self._coeffs[i])) for i in idx]

    def truncate(self, trunc_order: int) -> "TruncatedSeries":
        if trunc_order > self.trunc_order:
            raise TruncationError(f"cannot extend order {self.trunc_order} to {trunc_order}")
        return TruncatedSeries._wrap(self._coeffs[:trunc_order].copy(), self._modulus)

    def shift(self, k: int, trunc_order: int | None = None) -> "TruncatedSeries":
        """Multiply by q^k (k >= 0); the result is known up to order T + k."""
        if k < 0:
            raise ValueError("negative shifts are not supported")
        T = self.trunc_order + k if trunc_order is None else min(trunc_order, self.trunc_order + k)
        arr = _zeros(T, self._modulus)
        if k < T:
            arr[k:] = self._coeffs[: T - k]
        return TruncatedSeries._wrap(arr, self._modulus)

    def _check(self, other: "TruncatedSeries") -> int:
        if self._modulus != other._modulus:
            raise ModulusMismatchError(f"moduli differ: {self._modulus} vs {other._modulus}")
        return min(self.trunc_order, other.trunc_order)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        T = self._check(other)
        arr = self._coeffs[:T] + other._coeffs[:T]
        if self._modulus:
            arr %= self._modulus
        return TruncatedSeries._wrap(arr, self._modulus)

    def __neg__(self) -> "TruncatedSeries":
        arr = -self._coeffs
        if self._modulus:
            arr %= self._modulus
        return TruncatedSeries._wrap(arr, self._modulus)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def scale(self, c: int) -> "TruncatedSeries":
        arr = self._coeffs * (c % self._modulus if self._modulus else c)
        if self._modulus:
            arr %= self._modulus
        return TruncatedSeries._wrap(arr, self._modulus)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return mul(self, other)

    def __pow__(self, e: int) -> "TruncatedSeries":
        return power(self, e)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self._modulus == other._modulus
                and self.trunc_order == other.trunc_order
                and bool(np.all(self._coeffs == other._coeffs)))

    def __hash__(self) -> int:
        return hash((self._modulus, tuple(self.tolist())))

    def __repr__(self) -> str:
        terms = []
        for n, c in self.nonzero_terms()[:12]:
            terms.append(f"{c}" if n == 0 else f"{c}*q^{n}")
        body = " + ".join(terms) or "0"
        ring = f" mod {self._modulus}" if self._modulus else ""
        return f"TruncatedSeries({body} + O(q^{self.trunc_order}){ring})"


def _zeros(T: int, modulus: int | None) -> np.ndarray:
    if modulus is None:
        arr = np.empty(T, dtype=object)
        arr[:] = 0
        return arr
    return np.zeros(T, dtype=np.int64)


def pentagonal_terms(T: int) -> list[tuple[int, int]]:
    """(exponent, sign) pairs of prod(1 - q^n) below q^T, by increasing exponent."""
    out = [(0, 1)]
    j = 1
    while True:
        g1 = j * (3 * j - 1) // 2
        if g1 >= T:
            break
        sign = -1 if j % 2 else 1
        out.append((g1, sign))
        g2 = j * (3 * j + 1) // 2
        if g2 < T:
            out.append((g2, sign))
        j += 1
    return out


def euler_function(T: int, modulus: int | None = None) -> TruncatedSeries:
    """(q; q)_inf to order T via the pentagonal number theorem."""
    if T < 1:
        raise ValueError("truncation order must be at least 1")
    arr = _zeros(T, modulus)
    for k, sign in pentagonal_terms(T):
        arr[k] = sign % modulus if modulus else sign
    return TruncatedSeries._wrap(arr, modulus)


def _conv_dense_mod(a: np.ndarray, b: np.ndarray, T: int, u: int) -> np.ndarray:
    n = min(len(a), len(b))
    if (u - 1) ** 2 * n < _FFT_EXACT_LIMIT:
        size = 1 << (len(a) + len(b) - 1).bit_length()
        fa = np.fft.rfft(a.astype(np.float64), size)
        fb = np.fft.rfft(b.astype(np.float64), size)
        raw = np.fft.irfft(fa * fb, size)[:T]
        out = np.rint(raw)
        if np.max(np.abs(raw - out), initial=0.0) < 0.25:
            return np.mod(out.astype(np.int64), u)
    if (u - 1) ** 2 * n < _INT64_SAFE:
        return np.mod(np.convolve(a, b)[:T], u)
    return np.array([int(x) % u for x in np.convolve(a.astype(object), b.astype(object))[:T]],
                    dtype=np.int64)


def _conv_sparse(dense: np.ndarray, sparse: list[tuple[int, int]], T: int,
                 modulus: int | None) -> np.ndarray:
    out = _zeros(T, modulus)
    if modulus:
        sparse = [(k, c % modulus) for k, c in sparse]
        # terms that can be accumulated before int64 overflow is possible
        batch = max(1, _INT64_SAFE // ((modulus - 1) ** 2 + 1))
    pending = 0
    for k, c in sparse:
        if k >= T:
            break
        if c == 0:
            continue
        out[k:] += dense[: T - k] * c
        pending += 1
        if modulus and pending >= batch:
            out %= modulus
            pending = 0
    if modulus:
        out %= modulus
    return out


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product, truncated to the smaller of the two orders."""
    T = a._check(b)
    ca, cb = a.coeffs[:T], b.coeffs[:T]
    sa, sb = np.count_nonzero(ca), np.count_nonzero(cb)
    u = a.modulus
    if u is None or min(sa, sb) <= _SPARSE_TERMS:
        dense, sparse = (ca, b.nonzero_terms()) if sb <= sa else (cb, a.nonzero_terms())
        arr = _conv_sparse(dense, sparse, T, u)
    else:
        arr = _conv_dense_mod(ca, cb, T, u)
    return TruncatedSeries._wrap(arr, u)


def power(a: TruncatedSeries, e: int) -> TruncatedSeries:
    if e < 0:
        return power(inverse(a), -e)
    result = TruncatedSeries.one(a.trunc_order, a.modulus)
    if e == 0:
        return result
    T = a.trunc_order
    nnz = np.count_nonzero(a.coeffs)
    # a sparse base is cheaper to apply e times than to square densely
    if a.modulus is None or nnz * e <= 4 * _SPARSE_TERMS:
        terms = a.nonzero_terms()
        for _ in range(e):
            result = TruncatedSeries._wrap(_conv_sparse(result.coeffs, terms, T, a.modulus), a.modulus)
        return result
    base = a
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def inverse(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse; the constant term must be +-1 (exact) or a unit mod u."""
    u = a.modulus
    c0 = a.coeff(0)
    if u is None:
        if c0 not in (1, -1):
            raise ZeroDivisionError(f"constant term {c0} is not a unit in Z")
        inv0 = c0
    else:
        if math.gcd(c0, u) != 1:
            raise ZeroDivisionError(f"constant term {c0} is not a unit mod {u}")
        inv0 = pow(c0, -1, u)
    T = a.trunc_order
    terms = [(k, c) for k, c in a.nonzero_terms() if k > 0]
    if u is None or len(terms) * T < 500_000:
        # b_n = -inv0 * sum_{k>=1} a_k b_{n-k}
        b = [0] * T
        b[0] = inv0
        for n in range(1, T):
            s = 0
            for k, c in terms:
                if k > n:
                    break
                s += c * b[n - k]
            b[n] = (-inv0 * s) % u if u else -inv0 * s
        arr = _zeros(T, u)
        arr[:] = b
        return TruncatedSeries._wrap(arr, u)
    # Newton: b <- b (2 - a b), doubling the known prefix each round
    b = TruncatedSeries.monomial(0, 1, u, inv0)
    n = 1
    while n < T:
        n = min(2 * n, T)
        ab = mul(a.truncate(n), _extend(b, n))
        corr = (-ab).coeffs.copy()
        corr[0] = (corr[0] + 2) % u
        b = mul(_extend(b, n), TruncatedSeries._wrap(corr, u))
    return b


def _extend(a: TruncatedSeries, T: int) -> TruncatedSeries:
    # pad with zeros; only valid where the caller knows the tail is irrelevant
    arr = _zeros(T, a.modulus)
    arr[: a.trunc_order] = a.coeffs
    return TruncatedSeries._wrap(arr, a.modulus)


def dilate(a: TruncatedSeries, k: int, trunc_order: int | None = None) -> TruncatedSeries:
    """Substitute q -> q^k.  Known to order k*T_a, optionally capped."""
    if k < 1:
        raise ValueError("dilation factor must be positive")
    T = k * a.trunc_order if trunc_order is None else min(trunc_order, k * a.trunc_order)
    arr = _zeros(T, a.modulus)
    src = a.coeffs[: (T - 1) // k + 1]
    arr[: len(src) * k: k] = src
    return TruncatedSeries._wrap(arr, a.modulus)


def reduce_mod(a: TruncatedSeries, u: int) -> TruncatedSeries:
    if u < 1:
        raise ValueError("modulus must be positive")
    if a.modulus is not None:
        if a.modulus % u:
            raise ModulusMismatchError(f"cannot reduce mod {a.modulus} series to mod {u}")
        return TruncatedSeries._wrap(np.mod(a.coeffs, u), u)
    return TruncatedSeries._wrap(np.array([int(c) % u for c in a.coeffs], dtype=np.int64), u)


def eta_product(exponents: dict[int, int], T: int, modulus: int | None = None) -> TruncatedSeries:
    """prod_delta (q^delta; q^delta)_inf ^ r_delta to order T."""
    result = TruncatedSeries.one(T, modulus)
    negatives = []
    for delta, r in sorted(exponents.items()):
        if r == 0:
            continue
        base = dilate(euler_function((T - 1) // delta + 1, modulus), delta, T)
        if r > 0:
            result = mul(result, power(base, r))
        else:
            negatives.append((base, -r))
    for base, r in negatives:
        result = mul(result, power(inverse(base), r))
    return result
