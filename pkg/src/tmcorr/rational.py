"""Helpers around ``fractions.Fraction``, the exact carrier of all correlation values."""

from __future__ import annotations

from fractions import Fraction


def in_frequency_module(q: Fraction) -> bool:
    """True if the reduced denominator of ``q`` divides ``3 * 2**r`` for some r."""
    den = q.denominator
    den >>= (den & -den).bit_length() - 1
    return den in (1, 3)


def exact_str(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_exact(text: str) -> Fraction:
    """Parse ``"p/q"``, an integer, or an exact decimal such as ``"0.25"``."""
    return Fraction(text.strip())
