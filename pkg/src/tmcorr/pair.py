"""Exact two-point correlations of the balanced Thue-Morse system.

The autocorrelation obeys eta(2m) = eta(m) and
eta(2m+1) = -(eta(m) + eta(m+1)) / 2 with eta(0) = 1.  Evaluation walks an
explicit stack over the binary expansion, so lags far beyond 2**64 are fine.
"""

from __future__ import annotations

from fractions import Fraction

from .corners import corner_value
from .memo import MemoStore, default_store

HALF = Fraction(1, 2)


def _sign(sign) -> int:
    if sign in ("+", 1, +1):
        return 1
    if sign in ("-", -1):
        return -1
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


def eta_pair(m: int, store: MemoStore | None = None) -> Fraction:
    """Autocorrelation coefficient eta(m); negative lags fold by symmetry."""
    store = default_store() if store is None else store
    m = abs(m)
    hit = store.get((m,))
    if hit is not None:
        return hit
    stack = [m]
    while stack:
        k = stack[-1]
        if (k,) in store:
            stack.pop()
            continue
        if k <= 1:
            store.insert((k,), corner_value((k,)))
            stack.pop()
            continue
        q, odd = divmod(k, 2)
        if not odd:
            v = store.get((q,))
            if v is None:
                stack.append(q)
                continue
            store.insert((k,), v)
        else:
            a, b = store.get((q,)), store.get((q + 1,))
            if a is None or b is None:
                if a is None:
                    stack.append(q)
                if b is None:
                    stack.append(q + 1)
                continue
            store.insert((k,), -(a + b) * HALF)
        stack.pop()
    return store.get((m,))


def mu_pm(sign, m: int, store: MemoStore | None = None) -> Fraction:
    """mu_+(m) = (1 + eta(m))/2 or mu_-(m) = (1 - eta(m))/2."""
    if m < 0:
        raise ValueError(f"m must be non-negative, got {m}")
    return (1 + _sign(sign) * eta_pair(m, store)) * HALF


def pair_frequency(alpha: str, beta: str, n: int, store: MemoStore | None = None) -> Fraction:
    """Relative frequency of letters ``alpha`` ... ``beta`` at distance ``n``."""
    if alpha not in "ab" or beta not in "ab" or len(alpha) != 1 or len(beta) != 1:
        raise ValueError(f"letters must be 'a' or 'b', got {alpha!r}, {beta!r}")
    return mu_pm("+" if alpha == beta else "-", abs(n), store)


def eta_partial_sum(N: int, store: MemoStore | None = None) -> Fraction:
    """Exact sum of eta(m) over 0 <= m < N, by direct summation."""
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    return sum((eta_pair(m, store) for m in range(N)), Fraction(0))


# The coupled mu recursion is kept on its own cache so that it stays an
# independent route to the values produced by mu_pm.
_mu_cache: dict[tuple[int, int], Fraction] = {}


def _mu_seed() -> None:
    # Closed m = 0 subsystem: mu_+(1) = mu_-(1)/2 and mu_-(1) = (1 + mu_+(1))/2.
    _mu_cache[(1, 0)] = Fraction(1)
    _mu_cache[(-1, 0)] = Fraction(0)
    plus1 = Fraction(1, 4) / (1 - Fraction(1, 4))
    _mu_cache[(1, 1)] = plus1
    _mu_cache[(-1, 1)] = (1 + plus1) * HALF


def coupled_mu_step(sign, m: int) -> Fraction:
    """mu_{+/-}(m) from mu(2m) = mu(m), mu_{+/-}(2m+1) = (mu_{-/+}(m) + mu_{-/+}(m+1))/2."""
    if m < 0:
        raise ValueError(f"m must be non-negative, got {m}")
    if not _mu_cache:
        _mu_seed()
    key = (_sign(sign), m)
    stack = [key]
    while stack:
        s, k = stack[-1]
        if (s, k) in _mu_cache:
            stack.pop()
            continue
        q, odd = divmod(k, 2)
        if not odd:
            deps = [(s, q)]
        else:
            deps = [(-s, q), (-s, q + 1)]
        missing = [d for d in deps if d not in _mu_cache]
        if missing:
            stack.extend(missing)
            continue
        vals = [_mu_cache[d] for d in deps]
        _mu_cache[(s, k)] = vals[0] if not odd else (vals[0] + vals[1]) * HALF
        stack.pop()
    return _mu_cache[key]
