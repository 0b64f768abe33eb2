"""Exact dense linear algebra over rationals and truncated series.

Matrices are lists of row lists.  Pivots are chosen among units of the scalar
ring, so inversion over truncated series succeeds exactly when the constant-term
matrix is invertible.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

from .scalars import Scalar, is_unit

Matrix = List[List[Scalar]]


class SingularMatrixError(ArithmeticError):
    """No unit pivot exists: the matrix is not invertible over the scalar ring."""


def zeros(n: int, m: int | None = None) -> Matrix:
    return [[0] * (n if m is None else m) for _ in range(n)]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def copy(a: Sequence[Sequence[Scalar]]) -> Matrix:
    return [list(r) for r in a]


def transpose(a: Sequence[Sequence[Scalar]]) -> Matrix:
    return [list(c) for c in zip(*a)] if a else []


def add(a, b) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def sub(a, b) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def neg(a) -> Matrix:
    return [[-x for x in r] for r in a]


def scale(a, k) -> Matrix:
    return [[x * k for x in r] for r in a]


def mul(a, b) -> Matrix:
    if not a:
        return []
    inner = len(b)
    if any(len(r) != inner for r in a):
        raise ValueError("matrix shapes do not compose")
    cols = len(b[0]) if b else 0
    out = []
    for r in a:
        row = []
        for j in range(cols):
            s = 0
            for k in range(inner):
                x = r[k]
                if x:
                    y = b[k][j]
                    if y:
                        s = s + x * y
            row.append(s)
        out.append(row)
    return out


def mul_vec(a, v) -> list:
    return [sum((x * y for x, y in zip(r, v) if x and y), 0) for r in a]


def chain(*ms) -> Matrix:
    out = ms[0]
    for m in ms[1:]:
        out = mul(out, m)
    return out


def is_zero(a) -> bool:
    return not any(x for r in a for x in r)


def equal(a, b) -> bool:
    return len(a) == len(b) and all(
        len(ra) == len(rb) and all(x == y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def is_skew(a) -> bool:
    return equal(a, neg(transpose(a)))


def solve(a, b) -> Matrix:
    """Solve ``a @ x = b`` for square ``a`` (``b`` a matrix)."""
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("solve needs a square matrix")
    m = len(b[0]) if b else 0
    aug = [list(a[i]) + list(b[i]) for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if is_unit(aug[r][col])), None)
        if piv is None:
            raise SingularMatrixError(f"no unit pivot in column {col}")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col:
                f = aug[r][col]
                if f:
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:n + m] for row in aug]


def inverse(a) -> Matrix:
    return solve(a, identity(len(a)))


def rref(a) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over rationals; returns (matrix, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in a]
    rows = len(m)
    cols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a) -> int:
    return len(rref(a)[1]) if a else 0


def nullspace(a) -> Matrix:
    """Basis (as row vectors) of ``{x : a @ x = 0}`` over rationals."""
    cols = len(a[0]) if a else 0
    red, pivots = rref(a)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(v)
    return basis


def power_series_inverse(a, order: int) -> Matrix:
    """``(1 - a)^{-1} = sum_{k <= order} a^k``; exact when ``a`` is nilpotent of index <= order+1."""
    n = len(a)
    out = identity(n)
    term = identity(n)
    for _ in range(order):
        term = mul(term, a)
        if is_zero(term):
            break
        out = add(out, term)
    return out
