"""B-matrices, the vector form of the reduction, and the regular sequence eta_n.

Matrices are stored as integer numerators over one shared positive
denominator; all B-matrices and their products have power-of-two
denominators, so products stay in integer arithmetic.

Corner offsets are enumerated with the first lag as the most significant bit:
component ``o`` of an eta-vector at base m is eta(m + bits(o)).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .corners import corner_value
from .npoint import canonicalize, eta_n


@dataclass(frozen=True)
class RationalMatrix:
    num: tuple[tuple[int, ...], ...]
    den: int = 1

    def __post_init__(self):
        d = len(self.num)
        if d == 0 or any(len(row) != d for row in self.num):
            raise ValueError("matrix must be square and non-empty")
        if self.den <= 0:
            raise ValueError("denominator must be positive")
        g = math.gcd(self.den, *(x for row in self.num for x in row))
        if g > 1:
            object.__setattr__(self, "num", tuple(tuple(x // g for x in row) for row in self.num))
            object.__setattr__(self, "den", self.den // g)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], scale=1) -> "RationalMatrix":
        fr = [[Fraction(x) * Fraction(scale) for x in row] for row in rows]
        den = math.lcm(*(x.denominator for row in fr for x in row))
        return cls(tuple(tuple(int(x * den) for x in row) for row in fr), den)

    @classmethod
    def identity(cls, dim: int) -> "RationalMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.num)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return Fraction(self.num[i][j], self.den)

    def rows(self) -> list[list[Fraction]]:
        return [[Fraction(x, self.den) for x in row] for row in self.num]

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        cols = list(zip(*other.num))
        prod = tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.num)
        return RationalMatrix(prod, self.den * other.den)

    def _combine(self, other: "RationalMatrix", sign: int) -> "RationalMatrix":
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        num = tuple(
            tuple(a * other.den + sign * b * self.den for a, b in zip(r1, r2))
            for r1, r2 in zip(self.num, other.num)
        )
        return RationalMatrix(num, self.den * other.den)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return RationalMatrix(tuple(tuple(-x for x in row) for row in self.num), self.den)

    def scale(self, c) -> "RationalMatrix":
        c = Fraction(c)
        return RationalMatrix(
            tuple(tuple(x * c.numerator for x in row) for row in self.num), self.den * c.denominator
        )

    def kron(self, other: "RationalMatrix") -> "RationalMatrix":
        d2 = other.dim
        num = tuple(
            tuple(self.num[i // d2][j // d2] * other.num[i % d2][j % d2] for j in range(self.dim * d2))
            for i in range(self.dim * d2)
        )
        return RationalMatrix(num, self.den * other.den)

    def apply(self, vec: Sequence) -> list[Fraction]:
        return [sum((Fraction(x, self.den) * v for x, v in zip(row, vec)), Fraction(0)) for row in self.num]

    def to_csv_rows(self) -> list[list[str]]:
        return [[f"{q.numerator}/{q.denominator}" for q in row] for row in self.rows()]


def kron_all(factors: Sequence[RationalMatrix]) -> RationalMatrix:
    out = factors[0]
    for f in factors[1:]:
        out = out.kron(f)
    return out


E0 = RationalMatrix(((1, 0), (0, -1)))
E1 = RationalMatrix(((0, -1), (0, 1)))
J = RationalMatrix(((0, 1), (1, 0)))


def elementary_matrices() -> tuple[RationalMatrix, RationalMatrix, RationalMatrix]:
    return E0, E1, J


def prime(a: RationalMatrix) -> RationalMatrix:
    """Conjugation by J (for 2x2) or by the anti-diagonal reversal (any dimension)."""
    jd = anti_diagonal(a.dim)
    return jd @ a @ jd


def anti_diagonal(dim: int) -> RationalMatrix:
    return RationalMatrix(tuple(tuple(int(i + j == dim - 1) for j in range(dim)) for i in range(dim)))


def offset_bits(index: int, width: int) -> tuple[int, ...]:
    """Bits of ``index`` with the first lag as the most significant bit."""
    return tuple((index >> (width - 1 - k)) & 1 for k in range(width))


def _check(bits: Sequence[int], n: int) -> tuple[int, ...]:
    bits = tuple(bits)
    if n < 2 or len(bits) != n - 1 or any(b not in (0, 1) for b in bits):
        raise ValueError(f"need {n - 1} bits in {{0,1}} for order {n}, got {bits}")
    return bits


@lru_cache(maxsize=None)
def b_matrix_kronecker(bits: tuple[int, ...], n: int, literal: bool = False) -> RationalMatrix:
    """B = ((-1)**n E_{i1} x ... x E_{i_{n-1}} + E'_{1-i1} x ... x E'_{1-i_{n-1}}) / 2.

    With ``literal=True`` the sign sits on the primed product instead:
    (E x ... + (-1)**n E' x ...) / 2.  Both agree for even n; for odd n the
    literal form is the negative of the matrix the reduction produces.
    Odd-order eta-vectors vanish, so only the entry-by-entry comparison
    against ``b_matrix_recursion`` tells the two apart.
    """
    bits = _check(bits, n)
    mats = {0: E0, 1: E1}
    direct = kron_all([mats[b] for b in bits])
    flipped = kron_all([prime(mats[1 - b]) for b in bits])
    if literal:
        total = direct + flipped if n % 2 == 0 else direct - flipped
    else:
        total = direct + flipped if n % 2 == 0 else flipped - direct
    return total.scale(Fraction(1, 2))


@lru_cache(maxsize=None)
def b_matrix_recursion(bits: tuple[int, ...], n: int) -> RationalMatrix:
    """B read off the scalar reduction applied to each eta-vector component.

    Component s of eta(2m + r) is eta(2m + r + s).  Writing r_i + s_i = 2q_i + p_i,
    it equals (-1)**|p| / 2 * (eta(m + q) + (-1)**n eta(m + q + p)), and both
    q and q + p are corner offsets of the base vector.
    """
    bits = _check(bits, n)
    d = n - 1
    size = 1 << d
    rows = []
    for s in range(size):
        u = [b + o for b, o in zip(bits, offset_bits(s, d))]
        q = [x // 2 for x in u]
        p = [x % 2 for x in u]
        c = Fraction((-1) ** sum(p), 2)
        row = [Fraction(0)] * size
        row[_index(q)] += c
        row[_index([a + b for a, b in zip(q, p)])] += c * (-1) ** n
        rows.append(row)
    return RationalMatrix.from_rows(rows)


def _index(bits: Sequence[int]) -> int:
    out = 0
    for b in bits:
        out = (out << 1) | b
    return out


def b_matrix(index: int, n: int, construction: str = "kronecker") -> RationalMatrix:
    """B-matrix for the digit ``index`` in [0, 2**(n-1))."""
    bits = offset_bits(index, n - 1)
    if construction == "kronecker":
        return b_matrix_kronecker(bits, n)
    if construction == "recursion":
        return b_matrix_recursion(bits, n)
    raise ValueError(f"unknown construction {construction!r}")


def b_sum(n: int) -> RationalMatrix:
    if n < 2:
        raise ValueError(f"order must be >= 2, got {n}")
    total = None
    for i in range(1 << (n - 1)):
        b = b_matrix(i, n)
        total = b if total is None else total + b
    return total


@dataclass(frozen=True)
class EtaVector:
    order: int
    base: tuple[int, ...]
    components: tuple[Fraction, ...]

    def lags_at(self, index: int) -> tuple[int, ...]:
        return tuple(m + b for m, b in zip(self.base, offset_bits(index, self.order - 1)))


def corner_vector(n: int) -> list[Fraction]:
    d = n - 1
    return [corner_value(offset_bits(i, d), n) for i in range(1 << d)]


def eta_vector(base: Sequence[int]) -> EtaVector:
    """Eta-vector at ``base`` via joint binary digits of the lags.

    eta(m) = B_{r(m)} eta(m >> 1), unrolled down to the all-zero base, where
    the corner vector is a fixed point of B_{(0,...,0)}.
    """
    base = tuple(base)
    if not base or any(m < 0 for m in base):
        raise ValueError(f"base lags must be non-negative and non-empty: {base}")
    n = len(base) + 1
    vec = corner_vector(n)
    depth = max(base).bit_length()
    for level in range(depth - 1, -1, -1):
        bits = tuple((m >> level) & 1 for m in base)
        vec = b_matrix_kronecker(bits, n).apply(vec)
    return EtaVector(n, base, tuple(vec))


def digits(m: int, base: int) -> list[int]:
    """Digits of ``m`` least significant first; 0 is the single digit [0]."""
    if m < 0:
        raise ValueError(f"m must be non-negative, got {m}")
    out = []
    while True:
        m, d = divmod(m, base)
        out.append(d)
        if m == 0:
            return out


@lru_cache(maxsize=None)
def _scaled_b(n: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    # 2*B has integer entries for every digit
    out = []
    for i in range(1 << (n - 1)):
        b = b_matrix(i, n)
        if 2 % b.den:
            raise AssertionError(f"unexpected denominator {b.den} in B_{i}")
        out.append(tuple(tuple(x * (2 // b.den) for x in row) for row in b.num))
    return tuple(out)


def _matvec(mat, vec):
    return tuple(sum(a * b for a, b in zip(row, vec)) for row in mat)


def regseq_eval(n: int, m: int) -> Fraction:
    """eta_n(m) = e1^T B_{i0} B_{i1} ... B_{is} e1 with i0 the least significant base-2**(n-1) digit."""
    if n < 2:
        raise ValueError(f"order must be >= 2, got {n}")
    mats = _scaled_b(n)
    ds = digits(m, 1 << (n - 1))
    vec = tuple(int(i == 0) for i in range(1 << (n - 1)))
    for d in reversed(ds):
        vec = _matvec(mats[d], vec)
    return Fraction(vec[0], 1 << len(ds))


def regseq_values(n: int, M: int) -> list[Fraction]:
    """eta_n(j) for 0 <= j < M, reusing the column vector of j // 2**(n-1)."""
    if M < 1:
        raise ValueError(f"M must be positive, got {M}")
    mats = _scaled_b(n)
    base = 1 << (n - 1)
    e1 = tuple(int(i == 0) for i in range(base))
    cols: list[tuple[int, ...]] = []
    exps: list[int] = []
    out = []
    for j in range(M):
        q, d = divmod(j, base)
        if q == 0:
            col, e = _matvec(mats[d], e1), 1
        else:
            col, e = _matvec(mats[d], cols[q]), exps[q] + 1
        cols.append(col)
        exps.append(e)
        out.append(Fraction(col[0], 1 << e))
    return out


def regseq_cesaro(n: int, M: int) -> Fraction:
    """Exact Cesaro mean (1/M) * sum_{j<M} eta_n(j)."""
    return sum(regseq_values(n, M), Fraction(0)) / M


def regseq_recurrence_report(n: int, m_max: int) -> dict:
    """Count how often eta_n(bm + a) == t_a/2 * (eta_n(bm) + eta_n(bm + a)) with b = 2**(n-1).

    Reported only; the relation is not asserted anywhere.
    """
    from .sequence import t

    base = 1 << (n - 1)
    vals = regseq_values(n, base * m_max + base)
    hold = total = 0
    for m in range(m_max):
        for a in range(base):
            lhs = vals[base * m + a]
            rhs = Fraction(t(a), 2) * (vals[base * m] + vals[base * m + a])
            total += 1
            hold += lhs == rhs
    return {"n": n, "m_max": m_max, "total": total, "hold": hold}


def eta_vector_scalar(base: Sequence[int]) -> tuple[Fraction, ...]:
    """Same components as ``eta_vector`` but from the scalar n-point evaluator."""
    base = tuple(base)
    d = len(base)
    return tuple(
        eta_n(canonicalize([m + b for m, b in zip(base, offset_bits(i, d))])) for i in range(1 << d)
    )


__all__ = [
    "RationalMatrix",
    "EtaVector",
    "E0",
    "E1",
    "J",
    "anti_diagonal",
    "b_matrix",
    "b_matrix_kronecker",
    "b_matrix_recursion",
    "b_sum",
    "corner_vector",
    "digits",
    "elementary_matrices",
    "eta_vector",
    "eta_vector_scalar",
    "kron_all",
    "offset_bits",
    "prime",
    "regseq_cesaro",
    "regseq_eval",
    "regseq_recurrence_report",
    "regseq_values",
]
