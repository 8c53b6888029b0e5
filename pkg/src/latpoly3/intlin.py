"""Exact integer linear algebra.

Matrices are plain row-major sequences of rows of Python ints (lists or
tuples); every function returns tuples of tuples so results are hashable.
Python ints are arbitrary precision, so nothing here can overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

Matrix = tuple[tuple[int, ...], ...]


class RankDeficientError(ValueError):
    pass


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    rows = tuple(tuple(int(x) for x in r) for r in rows)
    if not rows or not rows[0]:
        raise ValueError("matrix must have at least one row and one column")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("ragged matrix")
    return rows


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    cols = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in A)


def transpose(A: Sequence[Sequence[int]]) -> Matrix:
    return tuple(zip(*A))


def det(M: Sequence[Sequence[int]]) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    M = as_matrix(M)
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("determinant of a non-square matrix")
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = M
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    A = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for r in range(k + 1, n):
                if A[r][k] != 0:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def adjugate3(M: Sequence[Sequence[int]]) -> Matrix:
    (a, b, c), (d, e, f), (g, h, i) = M
    return (
        (e * i - f * h, c * h - b * i, b * f - c * e),
        (f * g - d * i, a * i - c * g, c * d - a * f),
        (d * h - e * g, b * g - a * h, a * e - b * d),
    )


def inverse_unimodular(M: Sequence[Sequence[int]]) -> Matrix:
    """Inverse of a 3x3 integer matrix with determinant +-1."""
    d = det(M)
    if d not in (1, -1):
        raise ValueError(f"matrix is not unimodular (det = {d})")
    return tuple(tuple(d * x for x in row) for row in adjugate3(M))


def gcd_all(xs: Sequence[int]) -> int:
    """gcd of the absolute values; the gcd of all zeros is 0."""
    xs = list(xs)
    if not xs:
        raise ValueError("gcd of an empty sequence")
    return math.gcd(*xs)


@dataclass(frozen=True)
class HNFResult:
    H: Matrix
    U: Matrix


@dataclass(frozen=True)
class SNFResult:
    D: Matrix
    U: Matrix
    V: Matrix

    @property
    def divisors(self) -> tuple[int, ...]:
        return tuple(self.D[i][i] for i in range(min(len(self.D), len(self.D[0]))))


def _row_combine(A, i, j, q):
    # row_i -= q * row_j
    if q:
        ri, rj = A[i], A[j]
        for c in range(len(ri)):
            ri[c] -= q * rj[c]


def hnf_left(A: Sequence[Sequence[int]]) -> HNFResult:
    """Hermite normal form under left multiplication: U @ A = H.

    Convention (frozen): H is lower triangular (H[i][j] == 0 for j > i),
    the pivot H[j][j] is positive and the entries H[i][j], i > j, below a
    pivot lie in [0, H[j][j]).  For an m x n input with m > n the rows
    n..m-1 of H are zero.  Requires full column rank.
    """
    A = as_matrix(A)
    m, n = len(A), len(A[0])
    if n > m:
        raise RankDeficientError("more columns than rows: no full column rank")
    H = [list(r) for r in A]
    U = [list(r) for r in identity(m)]
    for j in range(n - 1, -1, -1):
        active = list(range(j + 1)) + list(range(n, m))
        while True:
            nz = [r for r in active if H[r][j] != 0]
            if not nz:
                raise RankDeficientError("matrix does not have full column rank")
            piv = min(nz, key=lambda r: (abs(H[r][j]), r))
            if len(nz) == 1:
                break
            for r in nz:
                if r != piv:
                    q = H[r][j] // H[piv][j]
                    _row_combine(H, r, piv, q)
                    _row_combine(U, r, piv, q)
        if piv != j:
            H[piv], H[j] = H[j], H[piv]
            U[piv], U[j] = U[j], U[piv]
        if H[j][j] < 0:
            H[j] = [-x for x in H[j]]
            U[j] = [-x for x in U[j]]
        p = H[j][j]
        for i in range(j + 1, n):
            q = H[i][j] // p
            _row_combine(H, i, j, q)
            _row_combine(U, i, j, q)
    return HNFResult(as_matrix(H), as_matrix(U))


def snf(A: Sequence[Sequence[int]]) -> SNFResult:
    """Smith normal form U @ A @ V = D with d1 | d2 | ... and d_i >= 0."""
    A = as_matrix(A)
    m, n = len(A), len(A[0])
    D = [list(r) for r in A]
    U = [list(r) for r in identity(m)]
    V = [list(r) for r in identity(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def col_combine(i, j, q):
        # col_i -= q * col_j
        for M in (D, V):
            for row in M:
                row[i] -= q * row[j]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
            if not entries:
                break
            _, pi, pj = min(entries)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = D[i][t] // p
                _row_combine(D, i, t, q)
                _row_combine(U, i, t, q)
                dirty |= D[i][t] != 0
            for j in range(t + 1, n):
                q = D[t][j] // p
                col_combine(j, t, q)
                dirty |= D[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            # pull the offending row into row t; the next pass lowers the pivot
            _row_combine(D, t, bad, -1)
            _row_combine(U, t, bad, -1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return SNFResult(as_matrix(D), as_matrix(U), as_matrix(V))


def elementary_divisors(A: Sequence[Sequence[int]]) -> tuple[int, ...]:
    return snf(A).divisors


def rank(A: Sequence[Sequence[int]]) -> int:
    return sum(1 for d in elementary_divisors(A) if d)
