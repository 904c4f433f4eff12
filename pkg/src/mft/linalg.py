"""Small dense linear algebra over generic scalars.

Everything here works on plain nested lists and is agnostic to the scalar
type: with Fraction entries all results are exact, with floats they are the
usual numerics.  Matrices in this package are tiny (at most about 10x10),
so Gaussian elimination with max-abs pivoting is all we need.  numpy is
deliberately avoided here so the exact-rational lane stays exact.
"""

from __future__ import annotations

from fractions import Fraction


def identity(n, one=1):
    return [[one if i == j else 0 * one for j in range(n)] for i in range(n)]


def transpose(a):
    return [list(row) for row in zip(*a)]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [
        [sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)]
        for i in range(n)
    ]


def mat_vec(a, v):
    return [sum(row[j] * v[j] for j in range(len(v))) for row in a]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, s):
    return [[x * s for x in row] for row in a]


def det(a):
    """Determinant via elimination; exact when entries are exact."""
    n = len(a)
    m = [list(row) for row in a]
    sign = 1
    result = 1
    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(m[r][col]))
        if m[pivot][col] == 0:
            return 0 * result
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        p = m[col][col]
        result = result * p
        for r in range(col + 1, n):
            factor = _div(m[r][col], p)
            for c in range(col, n):
                m[r][c] = m[r][c] - factor * m[col][c]
    return sign * result


def _div(x, y):
    if isinstance(x, (int, Fraction)) and isinstance(y, (int, Fraction)):
        return Fraction(x) / Fraction(y)
    return x / y


def rref(a):
    """Reduced row echelon form; returns (rows, pivot column list)."""
    m = [list(row) for row in a]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        pivot = max(range(row, nrows), key=lambda r: abs(m[r][col]))
        if _is_negligible(m[pivot][col], m):
            continue
        m[row], m[pivot] = m[pivot], m[row]
        p = m[row][col]
        m[row] = [_div(x, p) for x in m[row]]
        for r in range(nrows):
            if r != row and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [x - factor * y for x, y in zip(m[r], m[row])]
        pivots.append(col)
        row += 1
    return m, pivots


def _is_negligible(x, context_matrix):
    if isinstance(x, (int, Fraction)):
        return x == 0
    scale = max((abs(v) for row in context_matrix for v in row), default=1.0)
    return abs(x) <= 1e-12 * max(scale, 1.0)


def rank(a):
    if not a:
        return 0
    return len(rref(a)[1])


def nullspace(a):
    """Basis of the right nullspace, one vector per free column."""
    if not a:
        return []
    ncols = len(a[0])
    red, pivots = rref(a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = -red[r][f]
        basis.append(v)
    return basis


def inverse(a):
    """Exact inverse via Gauss-Jordan; raises ValueError when singular."""
    n = len(a)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]
