"""Random structure matrices by dimension class, and random natural changes of basis."""

import cmath

from evoalg import linalg
from evoalg.basis_change import is_natural_change
from evoalg.field import COMPLEX as C
from evoalg.group_action import PERMS, GroupElement


def scalar(rng):
    if rng.random() < 0.5:
        return complex(rng.choice([1, 2, 3, -1, 0.5, -2, 1j, 1 + 1j]) * rng.uniform(0.5, 2))
    return cmath.rect(rng.uniform(0.5, 2), rng.uniform(0, 2 * cmath.pi))


def unit(rng):
    return cmath.rect(rng.uniform(0.5, 2), rng.uniform(0, 2 * cmath.pi))


def _sparse(rng, p):
    return [scalar(rng) if rng.random() < p else 0 for _ in range(3)]


def _dim1(rng):
    w, c = _sparse(rng, 0.7), _sparse(rng, 0.7)
    if rng.random() < 0.3 and w[2] != 0:
        # force q(w) = 0 so the isotropic and radical cases get exercised
        c[2] = -(c[0] * w[0] ** 2 + c[1] * w[1] ** 2) / w[2] ** 2
    return [[wi * cj for cj in c] for wi in w]


def _dim2(rng):
    a, b = _sparse(rng, 0.7), _sparse(rng, 0.7)
    k = rng.random()
    if k < 0.3:
        cols = [a, b, [0, 0, 0]]
    elif k < 0.6:
        t = scalar(rng)
        if rng.random() < 0.3:
            # isotropic direction in the last two coordinates
            b = [b[0], 1, 1j] if rng.random() < 0.5 else [0, 1, -1j]
        if rng.random() < 0.2:
            a = [a[0], 2, 2j]
        cols = [a, b, [t * x for x in b]]
    else:
        x, y = (scalar(rng) if rng.random() < 0.8 else 0), scalar(rng)
        cols = [a, b, [x * p + y * q for p, q in zip(a, b)]]
    rng.shuffle(cols)
    return [[cols[j][i] for j in range(3)] for i in range(3)]


def _dim3(rng):
    return [_sparse(rng, 0.6) for _ in range(3)]


def matrix_of_dim(rng, d):
    """Random complex structure matrix with dim A^2 = d."""
    make = {1: _dim1, 2: _dim2, 3: _dim3}[d]
    while True:
        M = [[complex(x) for x in r] for r in make(rng)]
        if linalg.rank(M, C) == d:
            return M


def group_element(rng):
    return GroupElement(rng.choice(PERMS), (unit(rng), unit(rng), unit(rng)))


def natural_change(rng, M):
    """A monomial change, sometimes composed with a rotation block or a shear that stays natural for M."""
    P = group_element(rng).matrix(C)
    if rng.random() < 0.5:
        th = unit(rng)
        c, s = cmath.cos(th), cmath.sin(th)
        for i, j in ((0, 1), (0, 2), (1, 2)):
            Q = linalg.identity(3, C)
            Q[i][i], Q[i][j], Q[j][i], Q[j][j] = c, -s, s, c
            if is_natural_change(M, Q, C):
                P = linalg.matmul(Q, P)
                break
    if rng.random() < 0.5:
        for k in range(3):
            if all(abs(M[r][k]) < 1e-12 for r in range(3)):
                Q = linalg.identity(3, C)
                for j in range(3):
                    if j != k:
                        Q[k][j] = unit(rng)
                if is_natural_change(M, Q, C):
                    P = linalg.matmul(Q, P)
                break
    return P
