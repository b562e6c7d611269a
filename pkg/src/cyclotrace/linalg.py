"""Exact integer linear algebra: Bareiss determinants, minors, inertia."""

from __future__ import annotations

from typing import Sequence

Matrix = Sequence[Sequence[int]]


def bareiss_det(rows: Matrix) -> int:
    """Determinant by fraction-free elimination; every division is exact."""
    A = [list(map(int, r)) for r in rows]
    n = len(A)
    if n == 0:
        return 1
    if any(len(r) != n for r in A):
        raise ValueError("matrix is not square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        rk = A[k]
        for i in range(k + 1, n):
            ri = A[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (akk * ri[j] - aik * rk[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]


def leading_principal_minors(rows: Matrix) -> list[int]:
    """Determinants of the top-left k x k blocks, k = 1..n."""
    A = [list(map(int, r)) for r in rows]
    n = len(A)
    minors = []
    prev = 1
    for k in range(n):
        akk = A[k][k]
        minors.append(akk)
        if akk == 0:
            # A zero pivot breaks the elimination; finish by direct determinants.
            minors += [bareiss_det([r[:m] for r in rows[:m]]) for m in range(k + 2, n + 1)]
            return minors
        rk = A[k]
        for i in range(k + 1, n):
            ri = A[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (akk * ri[j] - aik * rk[j]) // prev
        prev = akk
    return minors


def is_positive_definite(rows: Matrix) -> bool:
    """Sylvester's criterion on exact leading minors."""
    return all(m > 0 for m in leading_principal_minors(rows))


def charpoly(rows: Matrix) -> list[int]:
    """Coefficients of det(xI - A), highest degree first (Faddeev-LeVerrier).

    For integer ``A`` each division by ``k`` is exact.
    """
    A = [list(map(int, r)) for r in rows]
    n = len(A)
    coeffs = [1]
    M = [[0] * n for _ in range(n)]
    c = 1
    for k in range(1, n + 1):
        # M <- A M + c I
        M = [
            [sum(A[i][t] * M[t][j] for t in range(n)) + (c if i == j else 0) for j in range(n)]
            for i in range(n)
        ]
        tr = sum(A[i][t] * M[t][i] for i in range(n) for t in range(n))
        if tr % k:
            raise ArithmeticError("inexact division in Faddeev-LeVerrier")
        c = -tr // k
        coeffs.append(c)
    return coeffs


def _sign_changes(seq: Sequence[int]) -> int:
    signs = [s > 0 for s in seq if s]
    return sum(a != b for a, b in zip(signs, signs[1:]))


def inertia(rows: Matrix) -> tuple[int, int, int]:
    """(positive, negative, zero) eigenvalue counts of a symmetric integer matrix.

    The characteristic polynomial of a symmetric matrix is real-rooted, so
    Descartes' rule of signs counts its positive and negative roots exactly.
    """
    n = len(rows)
    if any(rows[i][j] != rows[j][i] for i in range(n) for j in range(i)):
        raise ValueError("inertia needs a symmetric matrix")
    p = charpoly(rows)
    zero = 0
    while len(p) > 1 and p[-1] == 0:
        p.pop()
        zero += 1
    deg = len(p) - 1
    pos = _sign_changes(p)
    neg = _sign_changes([c * (-1) ** (deg - i) for i, c in enumerate(p)])
    return pos, neg, zero
