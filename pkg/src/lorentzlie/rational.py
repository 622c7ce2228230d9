"""Exact linear algebra over the rationals.

Matrices are lists of rows of Fraction; vectors are lists of Fraction.
Everything here is tolerance-free: rank, kernels, inertia and congruence
diagonalization are decided exactly, which is what keeps Lorentzian-vs-
degenerate distinctions sharp downstream.
"""

from __future__ import annotations

import math
from fractions import Fraction

Vec = list[Fraction]
Mat = list[list[Fraction]]


def frac(x) -> Fraction:
    """Coerce ints, 'p/q' strings, floats-free inputs to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def vec(xs) -> Vec:
    return [frac(x) for x in xs]


def mat(rows) -> Mat:
    return [[frac(x) for x in row] for row in rows]


def zeros(n: int, m: int) -> Mat:
    return [[Fraction(0)] * m for _ in range(n)]


def zero_vec(n: int) -> Vec:
    return [Fraction(0)] * n


def eye(n: int) -> Mat:
    return [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]


def copy_mat(a: Mat) -> Mat:
    return [row[:] for row in a]


def transpose(a: Mat) -> Mat:
    return [list(col) for col in zip(*a)] if a else []


def mat_mul(a: Mat, b: Mat) -> Mat:
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    bt = transpose(b)
    return [[sum(a[i][t] * bt[j][t] for t in range(k)) for j in range(m)] for i in range(n)]


def mat_vec(a: Mat, v: Vec) -> Vec:
    return [sum(row[j] * v[j] for j in range(len(v))) for row in a]


def mat_add(a: Mat, b: Mat) -> Mat:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Mat, b: Mat) -> Mat:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c: Fraction, a: Mat) -> Mat:
    return [[c * x for x in row] for row in a]


def vec_add(u: Vec, v: Vec) -> Vec:
    return [x + y for x, y in zip(u, v)]


def vec_sub(u: Vec, v: Vec) -> Vec:
    return [x - y for x, y in zip(u, v)]


def vec_scale(c: Fraction, v: Vec) -> Vec:
    return [c * x for x in v]


def dot(u: Vec, v: Vec) -> Fraction:
    return sum(x * y for x, y in zip(u, v))


def is_zero_vec(v: Vec) -> bool:
    return all(x == 0 for x in v)


def is_zero_mat(a: Mat) -> bool:
    return all(x == 0 for row in a for x in row)


def max_abs(a: Mat) -> Fraction:
    return max((abs(x) for row in a for x in row), default=Fraction(0))


def trace(a: Mat) -> Fraction:
    return sum(a[i][i] for i in range(len(a)))


def commutator(a: Mat, b: Mat) -> Mat:
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def rref(a: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form; returns (R, pivot column indices)."""
    r = copy_mat(a)
    n = len(r)
    m = len(r[0]) if n else 0
    pivots: list[int] = []
    row = 0
    for col in range(m):
        piv = next((i for i in range(row, n) if r[i][col] != 0), None)
        if piv is None:
            continue
        r[row], r[piv] = r[piv], r[row]
        inv = Fraction(1) / r[row][col]
        r[row] = [x * inv for x in r[row]]
        for i in range(n):
            if i != row and r[i][col] != 0:
                f = r[i][col]
                r[i] = [x - f * y for x, y in zip(r[i], r[row])]
        pivots.append(col)
        row += 1
        if row == n:
            break
    return r, pivots


def rank(a: Mat) -> int:
    """Rank by fraction-free (Bareiss) elimination on the integerized matrix."""
    if not a or not a[0]:
        return 0
    scale = 1
    for row in a:
        for x in row:
            scale = scale * x.denominator // math.gcd(scale, x.denominator)
    m = [[int(x * scale) for x in row] for row in a]
    n, cols = len(m), len(m[0])
    prev = 1
    r = 0
    for col in range(cols):
        piv = next((i for i in range(r, n) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, n):
            for j in range(col + 1, cols):
                m[i][j] = (m[r][col] * m[i][j] - m[i][col] * m[r][j]) // prev
            m[i][col] = 0
        prev = m[r][col]
        r += 1
        if r == n:
            break
    return r


def nullspace(a: Mat) -> list[Vec]:
    """Basis of the right kernel of a."""
    if not a:
        return []
    m = len(a[0])
    r, pivots = rref(a)
    free = [j for j in range(m) if j not in pivots]
    basis = []
    for f in free:
        v = zero_vec(m)
        v[f] = Fraction(1)
        for row_i, p in enumerate(pivots):
            v[p] = -r[row_i][f]
        basis.append(v)
    return basis


def solve(a: Mat, b: Vec) -> Vec | None:
    """One exact solution of a x = b, or None if inconsistent."""
    n = len(a)
    m = len(a[0]) if n else 0
    aug = [a[i][:] + [b[i]] for i in range(n)]
    r, pivots = rref(aug)
    if m in pivots:
        return None
    x = zero_vec(m)
    for row_i, p in enumerate(pivots):
        x[p] = r[row_i][m]
    return x


def inv(a: Mat) -> Mat:
    n = len(a)
    aug = [a[i][:] + eye(n)[i] for i in range(n)]
    r, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in r]


def det(a: Mat) -> Fraction:
    n = len(a)
    m = copy_mat(a)
    sign = 1
    result = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        result *= m[col][col]
        invp = Fraction(1) / m[col][col]
        for i in range(col + 1, n):
            if m[i][col] != 0:
                f = m[i][col] * invp
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return sign * result


def charpoly(a: Mat) -> list[Fraction]:
    """Characteristic polynomial det(xI - a) by Faddeev-LeVerrier.

    Returns coefficients [1, c1, ..., cn] for x^n + c1 x^(n-1) + ... + cn.
    """
    n = len(a)
    coeffs = [Fraction(1)]
    m = eye(n)
    for k in range(1, n + 1):
        m = mat_mul(a, m)
        c = -trace(m) / k
        coeffs.append(c)
        for i in range(n):
            m[i][i] += c
    return coeffs


def span_contains(basis_rows: Mat, v: Vec) -> bool:
    """Does v lie in the span of the given vectors?"""
    if not basis_rows:
        return is_zero_vec(v)
    return rank([row[:] for row in basis_rows] + [v]) == rank(basis_rows)


def span_basis(vectors: list[Vec]) -> list[Vec]:
    """Echelonized basis of the span of the given vectors."""
    if not vectors:
        return []
    r, pivots = rref([v[:] for v in vectors])
    return r[: len(pivots)]


def inertia(s: Mat) -> tuple[int, int, int]:
    """Sylvester inertia (positive, negative, zero) of a symmetric matrix."""
    _, d = congruence_diagonalize(s)
    pos = sum(1 for i in range(len(d)) if d[i][i] > 0)
    neg = sum(1 for i in range(len(d)) if d[i][i] < 0)
    return pos, neg, len(d) - pos - neg


def congruence_diagonalize(s: Mat) -> tuple[Mat, Mat]:
    """Exact symmetric diagonalization: returns (C, D) with C^T s C = D diagonal."""
    n = len(s)
    a = copy_mat(s)
    c = eye(n)

    def add_col(dst, src, f):
        # column operation on a and c, mirrored by the row operation on a
        for i in range(n):
            a[i][dst] += f * a[i][src]
        for i in range(n):
            a[dst][i] += f * a[src][i]
        for i in range(n):
            c[i][dst] += f * c[i][src]

    def swap_col(i, j):
        for r_ in range(n):
            a[r_][i], a[r_][j] = a[r_][j], a[r_][i]
        a[i], a[j] = a[j], a[i]
        for r_ in range(n):
            c[r_][i], c[r_][j] = c[r_][j], c[r_][i]

    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                swap_col(k, j)
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    continue
                add_col(k, j, Fraction(1))
        pivot = a[k][k]
        for j in range(k + 1, n):
            if a[k][j] != 0:
                add_col(j, k, -a[k][j] / pivot)
    return c, a


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    if q < 0:
        return None
    if q == 0:
        return Fraction(0)
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def to_float_mat(a: Mat):
    return [[float(x) for x in row] for row in a]
