"""Small dense exact linear algebra over Q or a multi-quadratic field.

Matrices are lists of rows. Entries are ``Fraction`` (fast path) or
``ExactScalar``; everything here only uses + - * / and ``sign_of``.
Sizes are tiny (n <= ~30) so plain cubic algorithms are fine.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import DomainError
from .exact import ExactScalar, sign_of

Matrix = list[list]


def identity(n: int, one=Fraction(1)) -> Matrix:
    zero = one - one
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = a[i]
        out.append([sum((row[k] * b[k][j] for k in range(m) if row[k]), Fraction(0)) for j in range(p)])
    return out


def transpose(a: Matrix) -> Matrix:
    return [list(r) for r in zip(*a)] if a else []


def charpoly(a: Matrix) -> list:
    """Coefficients [1, c1, ..., cn] of det(x*I - A) by Faddeev-LeVerrier."""
    n = len(a)
    coeffs = [Fraction(1)] + [Fraction(0)] * n
    m = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A*M_{k-1} + c_{k-1} I ;  c_k = -tr(A*M_k)/k
        m = matmul(a, m)
        for i in range(n):
            m[i][i] = m[i][i] + coeffs[k - 1]
        am = matmul(a, m)
        tr = sum((am[i][i] for i in range(n)), Fraction(0))
        coeffs[k] = -tr / k
    return coeffs


def descartes_changes(coeffs: Sequence) -> int:
    signs = [s for s in (sign_of(c) for c in coeffs) if s != 0]
    return sum(1 for x, y in zip(signs, signs[1:]) if x != y)


def inertia_from_charpoly(coeffs: Sequence) -> tuple[int, int, int]:
    """(positive, negative, zero) root counts of a real-rooted polynomial.

    For a polynomial with only real roots Descartes' bound is exact, so
    sign changes of p(x) and p(-x) count positive and negative roots.
    """
    n = len(coeffs) - 1
    z = 0
    while z < n and sign_of(coeffs[n - z]) == 0:
        z += 1
    trimmed = list(coeffs[: n + 1 - z])
    pos = descartes_changes(trimmed)
    deg = len(trimmed) - 1
    neg = descartes_changes([c if (deg - i) % 2 == 0 else -c for i, c in enumerate(trimmed)])
    return pos, neg, z


def solve(a: Matrix, b: Sequence) -> list:
    """Solve A x = b for square nonsingular A by Gaussian elimination."""
    n = len(a)
    m = [list(a[i]) + [b[i]] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise DomainError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col] if not isinstance(m[col][col], ExactScalar) else m[col][col].inverse()
        prow = [x * inv for x in m[col]]
        m[col] = prow
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], prow)]
    return [m[i][n] for i in range(n)]


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    cols = [solve(a, [Fraction(int(i == j)) for i in range(n)]) for j in range(n)]
    return transpose(cols)


def det(a: Matrix):
    n = len(a)
    if n == 0:
        return Fraction(1)
    m = [list(r) for r in a]
    out = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            out = -out
        p = m[col][col]
        out = out * p
        inv = 1 / p if not isinstance(p, ExactScalar) else p.inverse()
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return out


def int_leading_minors(a: Sequence[Sequence[int]]) -> list[int]:
    """Leading principal minors of an integer matrix (Bareiss, no pivoting).

    Stops early at the first zero minor; the returned list is then shorter.
    """
    n = len(a)
    m = [list(r) for r in a]
    minors = []
    prev = 1
    for k in range(n):
        p = m[k][k]
        minors.append(p)
        if p == 0:
            return minors
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * p - m[i][k] * m[k][j]) // prev
        prev = p
    return minors


def int_det(a: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by Bareiss elimination with row swaps."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        p = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * p - m[i][k] * m[k][j]) // prev
        prev = p
    return sign * m[n - 1][n - 1]


def int_cramer(a: Sequence[Sequence[int]], b: Sequence[int]) -> tuple[int, list[int]]:
    """(D, [N_1..N_n]) with x_i = N_i / D solving A x = b over Q."""
    n = len(a)
    d = int_det(a)
    nums = []
    for i in range(n):
        m = [list(r) for r in a]
        for r in range(n):
            m[r][i] = b[r]
        nums.append(int_det(m))
    return d, nums


def is_negative_definite(a: Matrix) -> bool:
    """Sylvester's criterion on -A via exact symmetric elimination."""
    n = len(a)
    if n == 0:
        return True
    if all(isinstance(x, int) for row in a for x in row):
        minors = int_leading_minors([[-x for x in row] for row in a])
        return len(minors) == n and all(x > 0 for x in minors)
    m = [[-x for x in row] for row in a]
    for k in range(n):
        p = m[k][k]
        if sign_of(p) <= 0:
            return False
        inv = 1 / p if not isinstance(p, ExactScalar) else p.inverse()
        for i in range(k + 1, n):
            if m[i][k] != 0:
                f = m[i][k] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return True
