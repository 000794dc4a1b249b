"""Thue-Morse and period-doubling sign sequences.

Point queries (``t``, ``w``) work on arbitrary-size integers; bulk prefixes
are returned as read-only ``int8`` numpy buffers.
"""

from __future__ import annotations

import numpy as np

from .config import BudgetExceeded, prefix_cap


def s2(n: int) -> int:
    """Number of ones in the binary expansion of ``n``."""
    if n < 0:
        raise ValueError(f"s2 expects n >= 0, got {n}")
    return n.bit_count()


def t(n: int) -> int:
    """Thue-Morse sign ``(-1)**s2(n)``, with ``t(0) == 1``."""
    return -1 if s2(n) & 1 else 1


def w(n: int) -> int:
    """Bi-infinite extension: ``t(n)`` for ``n >= 0``, ``t(-n-1)`` otherwise."""
    return t(n) if n >= 0 else t(-n - 1)


def _check_length(length: int, cap: int | None) -> None:
    cap = prefix_cap() if cap is None else cap
    if length > cap:
        raise BudgetExceeded(f"prefix of length {length} exceeds cap {cap}")


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def tm_prefix(m: int, cap: int | None = None) -> np.ndarray:
    """First ``2**m`` Thue-Morse signs, i.e. the m-fold Kronecker power of (1, -1).

    Built by repeated doubling ``x -> (x, -x)``.
    """
    if m < 0:
        raise ValueError(f"m must be non-negative, got {m}")
    _check_length(1 << m, cap)
    a = np.ones(1 << m, dtype=np.int8)
    size = 1
    while size < a.size:
        np.negative(a[:size], out=a[size : 2 * size])
        size *= 2
    return _freeze(a)


def tm_signs(length: int, cap: int | None = None) -> np.ndarray:
    """First ``length`` Thue-Morse signs (any length, not just powers of two)."""
    if length < 0:
        raise ValueError(f"length must be non-negative, got {length}")
    _check_length(length, cap)
    m = max(length - 1, 0).bit_length()
    return _freeze(tm_prefix(m, cap=max(1 << m, length))[:length].copy())


def pd_prefix(length: int, cap: int | None = None) -> np.ndarray:
    """First ``length`` weights of the period-doubling word a -> ab, b -> aa.

    Letters are weighted a = -1, b = +1, starting from a.  Each letter x maps
    to the pair (a, -x) under these weights.
    """
    if length < 1:
        raise ValueError(f"length must be positive, got {length}")
    _check_length(length, cap)
    word = np.array([-1], dtype=np.int8)
    while word.size < length:
        nxt = np.empty(2 * word.size, dtype=np.int8)
        nxt[0::2] = -1
        np.negative(word, out=nxt[1::2])
        word = nxt
    return _freeze(word[:length].copy())
