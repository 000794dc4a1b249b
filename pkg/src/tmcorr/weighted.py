"""Correlations of the Thue-Morse system with arbitrary rational letter weights.

Writing f(x) = E(f) + h_f * x for x in {-1, +1}, a weighted product over the
sites {0, m_1, ..., m_{n-1}} expands into balanced correlations over every
subset of sites; subsets of odd size drop out because odd-order balanced
correlations vanish.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .config import BudgetExceeded
from .memo import MemoStore
from .npoint import canonicalize, eta_n
from .pair import eta_pair

MAX_WEIGHTED_ORDER = 10


@dataclass(frozen=True)
class WeightPair:
    f_minus: Fraction
    f_plus: Fraction

    def __post_init__(self):
        object.__setattr__(self, "f_minus", Fraction(self.f_minus))
        object.__setattr__(self, "f_plus", Fraction(self.f_plus))

    @classmethod
    def parse(cls, f_minus: str, f_plus: str) -> "WeightPair":
        return cls(Fraction(f_minus.strip()), Fraction(f_plus.strip()))

    @property
    def mean(self) -> Fraction:
        return (self.f_plus + self.f_minus) / 2

    @property
    def half_diff(self) -> Fraction:
        return (self.f_plus - self.f_minus) / 2

    def __call__(self, x: int) -> Fraction:
        if x == 1:
            return self.f_plus
        if x == -1:
            return self.f_minus
        raise ValueError(f"weights are defined on +1 and -1 only, got {x}")


BALANCED = WeightPair(-1, 1)


def eta_f_pair(f: WeightPair, m: int, store: MemoStore | None = None) -> Fraction:
    return f.half_diff**2 * eta_pair(m, store) + f.mean**2


def eta_f_triple(f: WeightPair, m1: int, m2: int, store: MemoStore | None = None) -> Fraction:
    e, h = f.mean, f.half_diff
    s = eta_pair(m1, store) + eta_pair(m2, store) + eta_pair(abs(m1 - m2), store)
    return h * h * e * s + e**3


def subset_sums(lags: Sequence[int], store: MemoStore | None = None, include_odd: bool = False) -> list[Fraction]:
    """Sums of balanced correlations over all site subsets, indexed by subset size.

    Entry k is the sum over k-element subsets of {0, m_1, ...} of the balanced
    k-point correlation of those sites (1 for k = 0).  Odd sizes are only
    evaluated with ``include_odd``; size 1 is the letter mean, which is 0.
    """
    sites = (0, *lags)
    n = len(sites)
    sums = [Fraction(0)] * (n + 1)
    sums[0] = Fraction(1)
    for mask in range(1, 1 << n):
        k = mask.bit_count()
        if k % 2 and not include_odd:
            continue
        if k == 1:
            continue
        chosen = [sites[i] for i in range(n) if mask >> i & 1]
        ref = chosen[0]
        sums[k] += eta_n(canonicalize([x - ref for x in chosen[1:]]), store, max_order=n)
    return sums


def eta_f_general(
    f: WeightPair,
    lags: Sequence[int],
    store: MemoStore | None = None,
    *,
    include_odd: bool = False,
    max_order: int = MAX_WEIGHTED_ORDER,
) -> Fraction:
    """Weighted n-point correlation, n = len(lags) + 1; with no lags this is E(f)."""
    n = len(lags) + 1
    if n > max_order:
        raise BudgetExceeded(f"order {n} exceeds cap {max_order}")
    e, h = f.mean, f.half_diff
    sums = subset_sums(lags, store, include_odd=include_odd)
    return sum((e ** (n - k) * h**k * sums[k] for k in range(n + 1)), Fraction(0))
