"""Small dense matrices as lists of lists, generic over a Field."""

from __future__ import annotations

from .field import Field


def zeros(n, m=None, F: Field | None = None):
    z = F.zero if F else 0
    return [[z] * (n if m is None else m) for _ in range(n)]


def identity(n, F: Field):
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def coerce_matrix(M, F: Field):
    rows = [list(r) for r in M]
    if any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged matrix")
    return [[F.coerce(x) for x in r] for r in rows]


def shape(M):
    return len(M), len(M[0]) if M else 0


def transpose(M):
    return [list(c) for c in zip(*M)]


def matmul(A, B):
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A, x):
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def entry_square(P):
    return [[x * x for x in r] for r in P]


def scale(M, c):
    return [[c * x for x in r] for r in M]


def col(M, j):
    return [r[j] for r in M]


def max_abs(M) -> float:
    return max((abs(complex(x)) for r in M for x in r), default=0.0)


def det3(M):
    (a, b, c), (d, e, f), (g, h, i) = M
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def det(M, F: Field):
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    if n == 3:
        return det3(M)
    A = [list(r) for r in M]
    d = F.one
    for k in range(n):
        p = max(range(k, n), key=lambda r: abs(complex(A[r][k])))
        if A[p][k] == 0:
            return F.zero
        if p != k:
            A[k], A[p] = A[p], A[k]
            d = -d
        d *= A[k][k]
        for r in range(k + 1, n):
            f = A[r][k] / A[k][k]
            for c in range(k, n):
                A[r][c] -= f * A[k][c]
    return d


def inverse(M, F: Field):
    """Inverse by the adjugate for n <= 3, Gauss-Jordan otherwise."""
    n = len(M)
    d = det(M, F)
    if F.is_zero(d, max_abs(M) ** n):
        raise ZeroDivisionError("singular matrix")
    if n == 1:
        return [[F.one / M[0][0]]]
    if n == 2:
        (a, b), (c, e) = M
        return [[e / d, -b / d], [-c / d, a / d]]
    if n == 3:
        (a, b, c), (p, e, f), (g, h, i) = M
        adj = [
            [e * i - f * h, c * h - b * i, b * f - c * e],
            [f * g - p * i, a * i - c * g, c * p - a * f],
            [p * h - e * g, b * g - a * h, a * e - b * p],
        ]
        return [[x / d for x in r] for r in adj]
    A = [list(r) + [F.one if i == j else F.zero for j in range(n)] for i, r in enumerate(M)]
    for k in range(n):
        p = max(range(k, n), key=lambda r: abs(complex(A[r][k])))
        A[k], A[p] = A[p], A[k]
        piv = A[k][k]
        A[k] = [x / piv for x in A[k]]
        for r in range(n):
            if r != k and A[r][k] != 0:
                f = A[r][k]
                A[r] = [x - f * y for x, y in zip(A[r], A[k])]
    return [r[n:] for r in A]


def rank(M, F: Field) -> int:
    """Gaussian elimination with partial pivoting; zero tests via F."""
    if not M:
        return 0
    A = [list(r) for r in M]
    n, m = shape(A)
    sc = max_abs(A)
    if sc == 0:
        return 0
    r = 0
    for c in range(m):
        if r == n:
            break
        p = max(range(r, n), key=lambda k: abs(complex(A[k][c])))
        if F.is_zero(A[p][c], sc):
            continue
        A[r], A[p] = A[p], A[r]
        for k in range(r + 1, n):
            f = A[k][c] / A[r][c]
            if f != 0:
                A[k] = [x - f * y for x, y in zip(A[k], A[r])]
        r += 1
    return r


def mat_eq(A, B, F: Field, scale=None) -> bool:
    if shape(A) != shape(B):
        return False
    if scale is None:
        scale = max(max_abs(A), max_abs(B))
    return all(F.eq(a, b, scale) for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def cross(u, v):
    return [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]


def fmt_matrix(M, F: Field):
    return [[F.fmt(x) for x in r] for r in M]
