"""Generic exact matrix helpers.

Matrices are lists of lists (or tuples) whose entries live in any
commutative ring that coerces Python ints through its arithmetic operators:
``fractions.Fraction``, ``RatFunc``, or ``Dual``.  Determinants use
division-free cofactor expansion so polynomial matrices stay polynomial.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NotInBigCell


def _is_zero(x):
    if hasattr(x, "is_zero"):
        return x.is_zero()
    return x == 0


def exact_div(x, y):
    """Division that never goes through floats (int/int -> Fraction)."""
    if isinstance(x, int) and isinstance(y, int):
        return Fraction(x, y)
    return x / y


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    bt = [[b[r][c] for r in range(k)] for c in range(m)]
    return [
        [sum_entries([a[i][r] * bt[j][r] for r in range(k)]) for j in range(m)]
        for i in range(n)
    ]


def sum_entries(entries):
    it = iter(entries)
    tot = next(it)
    for e in it:
        tot = tot + e
    return tot


def mat_identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_scale(a, c):
    return [[x * c for x in row] for row in a]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_transpose(a):
    return [list(col) for col in zip(*a)]


def det(a):
    """Division-free determinant by cofactor expansion (sizes <= 4 here)."""
    n = len(a)
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    total = None
    for j in range(n):
        if _is_zero(a[0][j]):
            continue
        sub = [row[:j] + row[j + 1 :] for row in a[1:]]
        term = a[0][j] * det(sub)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return a[0][0] * 0
    return total


def minor(a, rows, cols):
    """Determinant of the submatrix with the given row/column index lists (0-based)."""
    sub = [[a[r][c] for c in cols] for r in rows]
    return det(sub)


def leading_minor(a, k):
    return minor(a, range(k), range(k))


def adjugate_inverse(a, d=None):
    """Inverse via adjugate/determinant; raises on singular input."""
    n = len(a)
    if d is None:
        d = det(a)
    if _is_zero(d):
        raise ZeroDivisionError("singular matrix")
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = [
                [a[r][c] for c in range(n) if c != i] for r in range(n) if r != j
            ]
            cof = det(sub) if n > 1 else 1
            if (i + j) % 2:
                cof = -cof
            out[i][j] = exact_div(cof, d)
    return out


def gauss_ltu(a):
    """Factor a = L*T*U with L lower-unitriangular, T diagonal, U upper-unitriangular.

    Exists iff all leading principal minors are nonzero; on failure raises
    NotInBigCell carrying the 1-based index of the first vanishing minor.
    """
    n = len(a)
    m = [list(row) for row in a]
    lower = mat_identity(n)
    for k in range(n):
        piv = m[k][k]
        if _is_zero(piv):
            raise NotInBigCell(k + 1)
        for i in range(k + 1, n):
            if _is_zero(m[i][k]):
                continue
            f = exact_div(m[i][k], piv)
            lower[i][k] = f
            m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    t = [row[i] for i, row in enumerate(m)]
    upper = mat_identity(n)
    for i in range(n):
        for j in range(i + 1, n):
            upper[i][j] = exact_div(m[i][j], t[i])
    tmat = [[t[i] if i == j else 0 for j in range(n)] for i in range(n)]
    return lower, tmat, upper


def _flip(a):
    n = len(a)
    return [[a[n - 1 - i][n - 1 - j] for j in range(n)] for i in range(n)]


def gauss_utl(a):
    """Factor a = U*T*L (upper-uni, diagonal, lower-uni); trailing minors nonzero."""
    lf, tf, uf = gauss_ltu(_flip(a))
    return _flip(lf), _flip(tf), _flip(uf)


def diagonal_entries(a):
    return [a[i][i] for i in range(len(a))]
