"""Exact n-point correlations of the balanced Thue-Morse system.

A correlation argument is a multiset of sites {0, m_1, ..., m_{n-1}}.  Since
the measure is shift invariant and the product commutes, every argument is
first brought to canonical form (minimum site 0, one copy of 0 dropped,
remaining lags sorted), which is also the cache key.

With every lag written as 2*m_i + r_i and r = sum(r_i),

    eta(2m + r) = (-1)**r / 2 * (eta(m) + (-1)**n * eta(m + r)),

and both children are again canonical.  The largest lag roughly halves per
step until every lag is 0 or 1, where the corner values take over.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .config import DEFAULT_MAX_ORDER, BudgetExceeded
from .corners import corner_value, gen_rec_value
from .memo import MemoStore, default_store
from .pair import eta_pair

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class LagTuple:
    order: int
    lags: tuple[int, ...]

    def __post_init__(self):
        if self.order != len(self.lags) + 1:
            raise ValueError(f"order {self.order} does not match {len(self.lags)} lags")
        if list(self.lags) != sorted(self.lags) or (self.lags and self.lags[0] < 0):
            raise ValueError(f"lags not canonical: {self.lags}")


@dataclass(frozen=True)
class CornerTuple:
    bits: tuple[int, ...]

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"corner bits must be 0 or 1: {self.bits}")

    @property
    def weight(self) -> int:
        return sum(self.bits)

    @property
    def order(self) -> int:
        return len(self.bits) + 1


def canonicalize(raw_lags: Iterable[int]) -> LagTuple:
    """Canonical form of the site multiset {0} + raw_lags."""
    raw = list(raw_lags)
    if not raw:
        raise ValueError("need at least one lag")
    sites = [0, *raw]
    lo = min(sites)
    sites = sorted(x - lo for x in sites)
    return LagTuple(len(sites), tuple(sites[1:]))


def _key_of(lags) -> tuple[int, ...]:
    if isinstance(lags, LagTuple):
        return lags.lags
    return canonicalize(lags).lags


def _children(key: tuple[int, ...]) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
    low = tuple(x >> 1 for x in key)
    high = tuple((x + 1) >> 1 for x in key)
    return sum(x & 1 for x in key), low, high


def reduce_once(lags: LagTuple) -> tuple[Fraction, LagTuple, Fraction, LagTuple]:
    """One reduction step: returns (c1, child1, c2, child2) with eta = c1*eta(child1) + c2*eta(child2)."""
    n = lags.order
    r, low, high = _children(lags.lags)
    c = Fraction((-1) ** r, 2)
    return c, LagTuple(n, low), c * (-1) ** n, LagTuple(n, high)


def _evaluate(key, n, get, put, corner) -> None:
    stack = [key]
    while stack:
        k = stack[-1]
        if get(k) is not None:
            stack.pop()
            continue
        if not k or k[-1] <= 1:
            put(k, corner(k, n))
            stack.pop()
            continue
        r, low, high = _children(k)
        a, b = get(low), get(high)
        if a is None or b is None:
            if a is None:
                stack.append(low)
            if b is None:
                stack.append(high)
            continue
        sign = -1 if r & 1 else 1
        put(k, sign * (a + (-1) ** n * b) * HALF)
        stack.pop()


def eta_n(
    lags: LagTuple | Sequence[int],
    store: MemoStore | None = None,
    *,
    max_order: int = DEFAULT_MAX_ORDER,
    seed=None,
):
    """Balanced n-point correlation for a canonical (or raw) lag tuple.

    With ``seed`` given, the all-zero corner is set to ``seed`` and the other
    corners follow from the closed corner equations; evaluation then uses a
    private cache and returns values in whatever ring ``seed`` lives in.
    """
    key = _key_of(lags)
    n = len(key) + 1
    if n > max_order:
        raise BudgetExceeded(f"order {n} exceeds cap {max_order}")
    if seed is not None:
        cache: dict = {}
        _evaluate(key, n, cache.get, cache.__setitem__, lambda k, n: gen_rec_value(k, seed, n))
        return cache[key]
    store = default_store() if store is None else store
    if n == 2:
        return eta_pair(key[0], store)
    hit = store.get(key)
    if hit is not None:
        return hit
    _evaluate(key, n, store.get, store.insert, lambda k, n: corner_value(k, n))
    return store.get(key)


def eta(*lags: int, store: MemoStore | None = None, max_order: int = DEFAULT_MAX_ORDER) -> Fraction:
    """Convenience form: ``eta(1, 2, 3)`` is the 4-point correlation at those lags."""
    return eta_n(canonicalize(lags), store, max_order=max_order)


def eta_pd(m: int, store: MemoStore | None = None) -> Fraction:
    """Period-doubling pair correlation (weights a = -1, b = +1), the slice eta(1, m, m+1)."""
    return eta(1, m, m + 1, store=store)


class IdentityViolation(AssertionError):
    def __init__(self, lags, failed):
        self.lags = lags
        self.failed = failed
        super().__init__(f"diagonal 4m+c identities fail for lags {lags} at c in {failed}")


def quad_relations(lags: Sequence[int], evaluator: Callable | None = None) -> dict[int, bool]:
    """Check the four diagonal identities for eta(4m + c, ..., 4m + c), c = 0..3.

    Returns a mapping c -> whether that identity holds exactly.
    """
    ev = evaluator or (lambda xs: eta_n(canonicalize(xs)))
    base = tuple(lags.lags if isinstance(lags, LagTuple) else lags)
    if any(x < 0 for x in base):
        raise ValueError(f"lags must be non-negative: {base}")
    s = (-1) ** (len(base) + 1)
    lo = ev(base)
    hi = ev(tuple(x + 1 for x in base))
    quarter = Fraction(1, 4)
    expected = {
        0: lo,
        1: quarter * (hi - s * lo),
        2: -HALF * (hi + s * lo),
        3: quarter * (lo - s * hi),
    }
    return {c: ev(tuple(4 * x + c for x in base)) == v for c, v in expected.items()}


def quad_relations_check(lags: Sequence[int], evaluator: Callable | None = None) -> bool:
    result = quad_relations(lags, evaluator)
    failed = [c for c, ok in result.items() if not ok]
    if failed:
        raise IdentityViolation(tuple(lags.lags if isinstance(lags, LagTuple) else lags), failed)
    return True


def reflection_report(order: int, max_lag: int, store: MemoStore | None = None) -> dict:
    """Compare eta(lags) with eta of the reflected sites (max - site) for all small tuples.

    Reflection symmetry is not claimed anywhere; this only counts agreements.
    """
    agree = total = 0
    mismatches = []
    for lags in itertools.combinations_with_replacement(range(max_lag + 1), order - 1):
        sites = (0, *lags)
        top = max(sites)
        # the mirrored multiset always contains 0 (the image of the top site)
        reflected = canonicalize(sorted(top - x for x in sites)[1:])
        a = eta_n(LagTuple(order, lags), store)
        b = eta_n(reflected, store)
        total += 1
        if a == b:
            agree += 1
        elif len(mismatches) < 10:
            mismatches.append((lags, a, b))
    return {"order": order, "max_lag": max_lag, "total": total, "agree": agree, "mismatches": mismatches}


def eta_cube(n: int, side: int) -> tuple[np.ndarray, int]:
    """All correlations on the grid [0, side)**(n-1), as scaled integers.

    Returns ``(values, scale)`` with ``eta(m_1, ..., m_{n-1}) == values[m] / scale``.
    Each level fills the 2**(n-1) parity classes of the grid from a grid of
    half the side, which is the vectorised form of the scalar reduction.
    """
    if n < 2:
        raise ValueError(f"order must be >= 2, got {n}")
    if side < 1:
        raise ValueError(f"side must be positive, got {side}")
    d = n - 1
    sign_n = (-1) ** n
    if side <= 2:
        base = np.empty((2,) * d, dtype=np.int64)
        for bits in itertools.product((0, 1), repeat=d):
            base[bits] = int(corner_value(bits, n) * 3)
        return base[(slice(0, side),) * d].copy(), 3
    child, scale = eta_cube(n, side // 2 + 1)
    out = np.empty((side,) * d, dtype=np.int64)
    for bits in itertools.product((0, 1), repeat=d):
        lens = [(side - b + 1) // 2 for b in bits]
        target = tuple(slice(b, side, 2) for b in bits)
        low = tuple(slice(0, ln) for ln in lens)
        high = tuple(slice(b, b + ln) for b, ln in zip(bits, lens))
        sign = -1 if sum(bits) & 1 else 1
        out[target] = sign * (child[low] + sign_n * child[high])
    return out, scale * 2
