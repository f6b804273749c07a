"""Small dense matrices of Python ints (tuples of row tuples).

Entries in this project outgrow machine words after a couple of Rauzy
cycles, so everything stays in arbitrary-precision ``int``.
"""

from __future__ import annotations

from typing import Sequence

Matrix = tuple[tuple[int, ...], ...]


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def elementary(n: int, row: int, col: int, mult: int = 1) -> Matrix:
    """``I + mult * e_{row,col}`` with 1-based indices."""
    m = [list(r) for r in identity(n)]
    m[row - 1][col - 1] += mult
    return freeze(m)


def freeze(rows: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(r) for r in rows)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a: Matrix, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def matpow(a: Matrix, k: int) -> Matrix:
    result = identity(len(a))
    base = a
    while k:
        if k & 1:
            result = matmul(result, base)
        k >>= 1
        if k:
            base = matmul(base, base)
    return result


def column(a: Matrix, j: int) -> tuple[int, ...]:
    """1-based column."""
    return tuple(row[j - 1] for row in a)


def column_sums(a: Matrix) -> tuple[int, ...]:
    return tuple(sum(col) for col in zip(*a))


def det(a: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    m = [list(r) for r in a]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]
