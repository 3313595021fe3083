"""Small exact linear algebra helpers.

Matrices are lists of rows.  Entries are ``Fraction``/``int`` for the
rational routines and :class:`LaurentPoly` for the fraction-free solver.
"""
from __future__ import annotations

from fractions import Fraction

from .arith import LaurentPoly, exact_div


def rref(rows):
    """Reduced row echelon form over Q.  Returns ``(matrix, pivot_columns)``."""
    M = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    if not M:
        return M, pivots
    ncols = len(M[0])
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows):
    return len(rref(rows)[1])


def inverse(rows):
    """Inverse of a square rational matrix; raises ``ValueError`` if singular."""
    n = len(rows)
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(rows)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in R[:n]]


def bareiss_solve(A, b):
    """Solve ``A x = b`` for a square matrix of :class:`LaurentPoly`.

    Fraction-free elimination; returns ``(det, y)`` with ``x = y / det``
    where every entry of ``y`` is a Laurent polynomial.  Raises
    ``ValueError`` if ``A`` is singular.
    """
    n = len(A)
    if n == 0:
        return None, []
    vars = A[0][0].vars
    one = LaurentPoly.one(vars)
    M = [list(A[i]) + [b[i]] for i in range(n)]
    prev = one
    sign = 1
    for k in range(n):
        p = next((i for i in range(k, n) if not M[i][k].is_zero()), None)
        if p is None:
            raise ValueError("matrix is singular")
        if p != k:
            M[k], M[p] = M[p], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                num = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                M[i][j] = exact_div(num, prev) if prev != one else num
            M[i][k] = LaurentPoly.zero(vars)
        prev = M[k][k]
    det = M[n - 1][n - 1]
    # back substitution keeping the common denominator det
    y = [None] * n
    for i in range(n - 1, -1, -1):
        acc = M[i][n] * det
        for j in range(i + 1, n):
            acc = acc - M[i][j] * y[j]
        y[i] = exact_div(acc, M[i][i])
    if sign < 0:
        det = -det
        y = [-v for v in y]
    return det, y
