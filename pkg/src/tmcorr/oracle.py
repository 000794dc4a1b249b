"""Brute-force Birkhoff averages over finite sequence prefixes.

These only ever look at the raw sign sequences, never at the recursions, so
they serve as an independent check of every exact value.  Sums are exact
integers; conversion to float happens once, at the final division.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .config import BudgetExceeded, prefix_cap
from .sequence import pd_prefix, tm_signs
from .weighted import WeightPair


@dataclass(frozen=True)
class Estimate:
    value: float
    N: int
    max_lag: int
    exact_average: Fraction


def _check(N: int, max_lag: int, cap: int | None) -> int:
    cap = prefix_cap() if cap is None else cap
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    if max_lag < 0:
        raise ValueError("lags must be non-negative")
    if N + max_lag > cap:
        raise BudgetExceeded(f"N + max_lag = {N + max_lag} exceeds prefix cap {cap}")
    return cap


def _integer_weights(f: WeightPair) -> tuple[int, int, int]:
    q = math.lcm(f.f_minus.denominator, f.f_plus.denominator)
    return int(f.f_minus * q), int(f.f_plus * q), q


def birkhoff_estimate(f: WeightPair, lags: Sequence[int], N: int, cap: int | None = None) -> Estimate:
    """(1/N) * sum_{k<N} f(t_k) * prod_i f(t_{k+m_i}), computed literally."""
    lags = list(lags)
    max_lag = max(lags, default=0)
    cap = _check(N, max_lag, cap)
    signs = tm_signs(N + max_lag, cap=cap)
    a_minus, a_plus, q = _integer_weights(f)
    n = len(lags) + 1
    bound = max(abs(a_minus), abs(a_plus)) ** n * N
    dtype = np.int64 if bound < 2**62 else object
    weights = np.where(signs > 0, a_plus, a_minus).astype(dtype)
    prod = weights[:N].copy()
    for m in lags:
        prod = prod * weights[m : m + N]
    total = int(prod.sum())
    avg = Fraction(total, q**n * N)
    return Estimate(value=total / (q**n * N), N=N, max_lag=max_lag, exact_average=avg)


def pd_autocorr_estimate(m: int, N: int, cap: int | None = None) -> Estimate:
    """(1/N) * sum_{k<N} v_k v_{k+m} over the period-doubling weights."""
    cap = _check(N, m, cap)
    v = pd_prefix(N + m, cap=cap).astype(np.int64)
    total = int(np.dot(v[:N], v[m : m + N]))
    return Estimate(value=total / N, N=N, max_lag=m, exact_average=Fraction(total, N))


class PrefixOracle:
    """Bulk Birkhoff sums for many lag tuples over one prefix.

    The prefix is stored as packed bits (1 where t_k = -1), one copy per
    shift.  A product of signs over a set of shifts is then the parity of the
    XOR of those copies, and its sum over k < N is N - 2 * popcount.
    Weighted averages expand prod_i (E + h * t_{k+m_i}) by the distributive
    law into such plain sign-product sums.
    """

    def __init__(self, N: int, max_lag: int, cap: int | None = None):
        cap = _check(N, max_lag, cap)
        self.N = N
        self.max_lag = max_lag
        bits = (tm_signs(N + max_lag, cap=cap) < 0).astype(np.uint8)
        pad = (-N) % 64
        self._packed = []
        for s in range(max_lag + 1):
            chunk = np.concatenate([bits[s : s + N], np.zeros(pad, dtype=np.uint8)])
            self._packed.append(np.packbits(chunk).view(np.uint64))
        self._sum = lru_cache(maxsize=None)(self._product_sum)

    def _product_sum(self, shifts: frozenset) -> int:
        if not shifts:
            return self.N
        it = iter(shifts)
        acc = self._packed[next(it)].copy()
        for s in it:
            np.bitwise_xor(acc, self._packed[s], out=acc)
        return self.N - 2 * int(np.bitwise_count(acc).sum())

    def product_sum(self, shifts: Sequence[int]) -> int:
        """sum_{k<N} prod_{s in shifts} t_{k+s} (repeated shifts cancel since t**2 == 1)."""
        odd = frozenset(s for s in set(shifts) if list(shifts).count(s) % 2)
        if any(s < 0 or s > self.max_lag for s in odd):
            raise ValueError(f"shift outside [0, {self.max_lag}]: {shifts}")
        return self._sum(odd)

    def weighted_average(self, f: WeightPair, lags: Sequence[int]) -> Fraction:
        sites = (0, *lags)
        n = len(sites)
        a_minus, a_plus, q = _integer_weights(f)
        # 2q * f(x) = (a_plus + a_minus) + (a_plus - a_minus) * x
        e2, h2 = a_plus + a_minus, a_plus - a_minus
        total = 0
        for mask in range(1 << n):
            k = mask.bit_count()
            chosen = [sites[i] for i in range(n) if mask >> i & 1]
            total += e2 ** (n - k) * h2**k * self.product_sum(chosen)
        return Fraction(total, (2 * q) ** n * self.N)

    def estimate(self, f: WeightPair, lags: Sequence[int]) -> Estimate:
        avg = self.weighted_average(f, lags)
        return Estimate(value=float(avg), N=self.N, max_lag=max(lags, default=0), exact_average=avg)
