"""Independent reference computations used to freeze expected values.

Nothing here imports the recursions under test: sequences come straight from
binary digit sums and matrix products go through sympy.
"""

from fractions import Fraction

import sympy


def tm_sign(k: int) -> int:
    return -1 if bin(k).count("1") % 2 else 1


def brute_average(lags, N: int, weights=(-1, 1)) -> Fraction:
    """Plain-Python prefix average of f(t_k) * prod f(t_{k+m})."""
    f_minus, f_plus = (Fraction(x) for x in weights)
    top = max(lags, default=0)
    seq = [f_plus if tm_sign(k) > 0 else f_minus for k in range(N + top)]
    total = Fraction(0)
    for k in range(N):
        p = seq[k]
        for m in lags:
            p *= seq[k + m]
        total += p
    return total / N


def pd_word(length: int) -> list[int]:
    """Period-doubling word by string substitution a -> ab, b -> aa; a = -1, b = +1."""
    word = "a"
    while len(word) < length:
        word = "".join("ab" if ch == "a" else "aa" for ch in word)
    return [-1 if ch == "a" else 1 for ch in word[:length]]


def symbolic_coefficient_mass(j: int) -> sympy.Rational:
    """c_j from sympy matrix products of the two 2x2 refinement matrices."""
    half = sympy.Rational(1, 2)
    mats = (
        sympy.Matrix([[2, 0], [-1, -1]]) * half,
        sympy.Matrix([[-1, -1], [0, 2]]) * half,
    )
    total = sympy.Integer(0)
    for r in range(2**j):
        prod = sympy.eye(2)
        for q in range(j):
            prod = prod * mats[(r >> q) & 1]
        total += abs(prod[0, 0]) + abs(prod[0, 1])
    return total


EXPLICIT_B4 = {
    (0, 0, 0): [
        [2, 0, 0, 0, 0, 0, 0, 0],
        [-1, -1, 0, 0, 0, 0, 0, 0],
        [-1, 0, -1, 0, 0, 0, 0, 0],
        [1, 0, 0, 1, 0, 0, 0, 0],
        [-1, 0, 0, 0, -1, 0, 0, 0],
        [1, 0, 0, 0, 0, 1, 0, 0],
        [1, 0, 0, 0, 0, 0, 1, 0],
        [-1, 0, 0, 0, 0, 0, 0, -1],
    ],
    (0, 0, 1): [
        [-1, -1, 0, 0, 0, 0, 0, 0],
        [0, 2, 0, 0, 0, 0, 0, 0],
        [1, 0, 0, 1, 0, 0, 0, 0],
        [0, -1, 0, -1, 0, 0, 0, 0],
        [1, 0, 0, 0, 0, 1, 0, 0],
        [0, -1, 0, 0, 0, -1, 0, 0],
        [-1, 0, 0, 0, 0, 0, 0, -1],
        [0, 1, 0, 0, 0, 0, 0, 1],
    ],
    (0, 1, 0): [
        [-1, 0, -1, 0, 0, 0, 0, 0],
        [1, 0, 0, 1, 0, 0, 0, 0],
        [0, 0, 2, 0, 0, 0, 0, 0],
        [0, 0, -1, -1, 0, 0, 0, 0],
        [1, 0, 0, 0, 0, 0, 1, 0],
        [-1, 0, 0, 0, 0, 0, 0, -1],
        [0, 0, -1, 0, 0, 0, -1, 0],
        [0, 0, 1, 0, 0, 0, 0, 1],
    ],
    (0, 1, 1): [
        [1, 0, 0, 1, 0, 0, 0, 0],
        [0, -1, 0, -1, 0, 0, 0, 0],
        [0, 0, -1, -1, 0, 0, 0, 0],
        [0, 0, 0, 2, 0, 0, 0, 0],
        [-1, 0, 0, 0, 0, 0, 0, -1],
        [0, 1, 0, 0, 0, 0, 0, 1],
        [0, 0, 1, 0, 0, 0, 0, 1],
        [0, 0, 0, -1, 0, 0, 0, -1],
    ],
}
# the remaining four are conjugates by the 8x8 reversal
B4_CONJUGATES = {(1, 0, 0): (0, 1, 1), (1, 0, 1): (0, 1, 0), (1, 1, 0): (0, 0, 1), (1, 1, 1): (0, 0, 0)}
B4_SUM_FIRST_ROW = [1, -1, -1, 1, -1, 1, 1, -1]
B4_SUM_LAST_ROW = [-1, 1, 1, -1, 1, -1, -1, 1]


def explicit_b4(bits):
    """Explicit 8x8 matrix as a sympy Matrix (halves included)."""
    half = sympy.Rational(1, 2)
    if bits in EXPLICIT_B4:
        return sympy.Matrix(EXPLICIT_B4[bits]) * half
    rev = sympy.Matrix(8, 8, lambda i, j: 1 if i + j == 7 else 0)
    return rev * explicit_b4(B4_CONJUGATES[bits]) * rev


def integer_coefficient_mass(j: int) -> Fraction:
    """c_j by depth-first search over digit strings, rows kept as scaled integers."""
    total = 0
    stack = [(1, 0, 0)]
    while stack:
        a, b, depth = stack.pop()
        if depth == j:
            total += abs(a) + abs(b)
            continue
        # row @ (2 M_0) and row @ (2 M_1)
        stack.append((2 * a - b, -b, depth + 1))
        stack.append((-a, -a + 2 * b, depth + 1))
    return Fraction(total, 2**j)
