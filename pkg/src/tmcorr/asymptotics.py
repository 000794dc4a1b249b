"""Partial means of correlations and decay-exponent bounds.

Bulk sums run over the scaled-integer grids from ``npoint.eta_cube``.  Since
correlations take comparatively few distinct values, sums of powers are
accumulated over (value, multiplicity) pairs, which keeps exact arithmetic
cheap even for ~10**6 terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np

from .config import DEFAULT_CUBE_BUDGET, DEFAULT_MAX_DEPTH, BudgetExceeded
from .npoint import eta_cube

PRECISION_BITS = 128

# 2 * M_b, where v(2m + b) = M_b v(m) for v(m) = (eta(m), eta(m + 1))
_M2 = (
    np.array([[2, 0], [-1, -1]], dtype=np.int64),
    np.array([[-1, -1], [0, 2]], dtype=np.int64),
)


@dataclass(frozen=True)
class ExponentReport:
    j: int
    c_j: Fraction
    alpha_j: float
    residue_count: int


@lru_cache(maxsize=8)
def _histogram(n: int, N: int) -> tuple[tuple[int, ...], tuple[int, ...], int]:
    values, scale = eta_cube(n, N)
    uniq, counts = np.unique(values, return_counts=True)
    return tuple(int(v) for v in uniq), tuple(int(c) for c in counts), scale


def _check_cube(n: int, N: int, budget: int) -> None:
    if n < 2:
        raise ValueError(f"order must be >= 2, got {n}")
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    if N ** (n - 1) > budget:
        raise BudgetExceeded(f"{N}**{n - 1} grid points exceed budget {budget}")


def power_sum(k: int, N: int, *, absolute: bool = False, n: int = 2, budget: int = DEFAULT_CUBE_BUDGET) -> Fraction:
    """Exact sum of eta**k (or |eta|**k) over the grid [0, N)**(n-1)."""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    _check_cube(n, N, budget)
    uniq, counts, scale = _histogram(n, N)
    total = sum(c * (abs(v) if absolute else v) ** k for v, c in zip(uniq, counts))
    return Fraction(total, scale**k)


def power_mean_eta(k: int, N: int, budget: int = DEFAULT_CUBE_BUDGET) -> Fraction:
    """(1/N) * sum_{m<N} eta(m)**k, exactly."""
    return power_sum(k, N, budget=budget) / N


def wiener_mean(N: int) -> Fraction:
    """Mean of eta(m)**2 over m < N."""
    return power_mean_eta(2, N)


def power_mean_mu(sign, k: int, N: int, budget: int = DEFAULT_CUBE_BUDGET) -> Fraction:
    """(1/N) * sum_{m<N} mu_{+/-}(m)**k, exactly."""
    s = {"+": 1, "-": -1, 1: 1, -1: -1}[sign]
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    _check_cube(2, N, budget)
    uniq, counts, scale = _histogram(2, N)
    total = sum(c * (scale + s * v) ** k for v, c in zip(uniq, counts))
    return Fraction(total, (2 * scale) ** k * N)


def _mpf(x) -> mpmath.mpf:
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def abs_power_sum_real(beta, N: int, n: int = 2, budget: int = DEFAULT_CUBE_BUDGET) -> mpmath.mpf:
    """sum |eta|**beta over the grid, in 128-bit precision (exact when beta == 1)."""
    if beta <= 0:
        raise ValueError(f"beta must be positive, got {beta}")
    _check_cube(n, N, budget)
    with mpmath.workprec(PRECISION_BITS):
        if beta == 1:
            return _mpf(power_sum(1, N, absolute=True, n=n, budget=budget))
        uniq, counts, scale = _histogram(n, N)
        b = _mpf(Fraction(beta) if not isinstance(beta, float) else beta)
        total = mpmath.mpf(0)
        for v, c in zip(uniq, counts):
            if v:
                total += c * (mpmath.mpf(abs(v)) / scale) ** b
        return +total


def abs_power_mean_eta(beta, N: int, alpha=1, budget: int = DEFAULT_CUBE_BUDGET) -> mpmath.mpf:
    """N**(-alpha) * sum_{m<N} |eta(m)|**beta."""
    with mpmath.workprec(PRECISION_BITS):
        return abs_power_sum_real(beta, N, budget=budget) * mpmath.power(N, -_mpf(alpha))


def hypercube_mean(n: int, N: int, budget: int = DEFAULT_CUBE_BUDGET) -> Fraction:
    """Exact mean of eta(m_1, ..., m_{n-1}) over the cube [0, N)**(n-1)."""
    return power_sum(1, N, n=n, budget=budget) / N ** (n - 1)


def abs_hypercube_mean(n: int, N: int, alpha=1, beta=1, budget: int = DEFAULT_CUBE_BUDGET) -> mpmath.mpf:
    """N**(-alpha*(n-1)) * sum over the cube of |eta|**beta."""
    with mpmath.workprec(PRECISION_BITS):
        total = abs_power_sum_real(beta, N, n=n, budget=budget)
        return total * mpmath.power(N, -_mpf(alpha) * (n - 1))


def _first_rows(prefix: np.ndarray, levels: int) -> np.ndarray:
    rows = prefix.reshape(1, 2)
    for _ in range(levels):
        rows = np.concatenate([rows @ _M2[0], rows @ _M2[1]])
    return rows


def exponent_bound(j: int, max_depth: int = DEFAULT_MAX_DEPTH, chunk_levels: int = 18) -> ExponentReport:
    """Coefficient mass c_j of the depth-j refinement and alpha_j = log2(c_j)/j.

    For r = sum b_q 2**q < 2**j, eta(2**j m + r) = w0 eta(m) + w1 eta(m+1) with
    (w0, w1) the first row of M_{b_0} ... M_{b_{j-1}}; c_j sums |w0| + |w1|.
    Rows are tracked scaled by 2**depth so everything stays integral.  The
    top levels are enumerated one prefix at a time and the rest vectorised.
    """
    if not 1 <= j <= max_depth:
        if j < 1:
            raise ValueError(f"j must be >= 1, got {j}")
        raise BudgetExceeded(f"depth {j} exceeds cap {max_depth}")
    outer = max(0, j - chunk_levels)
    inner = j - outer
    total = 0
    for prefix in range(1 << outer):
        row = np.array([1, 0], dtype=np.int64)
        for q in range(outer):
            row = row @ _M2[(prefix >> q) & 1]
        total += int(np.abs(_first_rows(row, inner)).sum())
    c = Fraction(total, 1 << j)
    alpha = (math.log2(c.numerator) - math.log2(c.denominator)) / j
    return ExponentReport(j=j, c_j=c, alpha_j=alpha, residue_count=1 << j)
