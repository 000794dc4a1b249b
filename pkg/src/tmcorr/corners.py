"""Correlation values on the corners of the unit hypercube.

These are the base cases of every reduction: all lags in {0, 1}.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

ONE = Fraction(1)
MINUS_THIRD = Fraction(-1, 3)


def corner_value(bits: Sequence[int], n: int | None = None) -> Fraction:
    """Balanced correlation with lags ``bits`` in {0, 1}; ``n`` defaults to ``len(bits) + 1``."""
    if any(b not in (0, 1) for b in bits):
        raise ValueError(f"corner entries must be 0 or 1, got {tuple(bits)}")
    n = len(bits) + 1 if n is None else n
    if n != len(bits) + 1:
        raise ValueError(f"order {n} does not match {len(bits)} lags")
    if n % 2:
        return Fraction(0)
    return ONE if sum(bits) % 2 == 0 else MINUS_THIRD


def gen_rec_value(bits: Sequence[int], seed, n: int | None = None):
    """Corner value as ``(-1)**r / (2 + (-1)**(n+r-1)) * seed``.

    ``seed`` is the all-zero corner; it may be any ring element (Fraction,
    sympy expression, ...).  For odd ``n`` only ``seed == 0`` is consistent.
    """
    n = len(bits) + 1 if n is None else n
    r = sum(bits)
    return Fraction((-1) ** r, 2 + (-1) ** (n + r - 1)) * seed
