import random

import pytest
from hypothesis import given, settings, strategies as st

from evoalg import linalg
from evoalg.basis_change import (
    BasisChange, NotANaturalChange, is_natural_change, orthogonality_defect, star_product, transform,
)
from evoalg.field import COMPLEX, RATIONAL

from conftest import close, mat

T2_ROW1 = [[0, 0, 0], [0, 1, 1], [1, 0, "c"]]
P_T2 = [["i", 0, 0], [0, 1, 0], [0, 0, -1]]


def test_star_product():
    I = mat([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert star_product(I) == [[0, 0, 0]] * 3
    assert star_product(mat([[1] * 3] * 3)) == [[1, 1, 1]] * 3
    assert star_product(mat([[2, 0, 0], [0, 3, 0], [0, 0, 5]])) == [[0, 0, 0]] * 3


def test_is_natural_change_examples():
    M = mat(T2_ROW1, c=2.5)
    assert is_natural_change(M, mat([[1, 0, 0], [0, 1, 0], [0, 0, 1]]))
    assert is_natural_change(M, mat(P_T2))
    assert not is_natural_change(M, mat([[1, 1, 0], [2, 2, 0], [0, 0, 1]]))
    with pytest.raises(ValueError):
        is_natural_change(M, [[1, 0], [0, 1]])


def test_transform_examples():
    M = mat(T2_ROW1, c=2.5)
    assert close(transform(M, mat([[1, 0, 0], [0, 1, 0], [0, 0, 1]])), M)
    assert close(transform(M, mat(P_T2)), mat([[0, 0, 0], [0, 1, 1], [1, 0, "-c"]], c=2.5))
    mu = 0.7 - 0.2j
    M = mat([["mu", 0, 1], [1, 0, 0], [0, 1, 0]], mu=mu)
    # the scaling closes up only for a 7th root of -1
    P = mat([["-phi", 0, 0], [0, "phi**2", 0], [0, 0, "phi**4"]], phi=-COMPLEX.phi7)
    assert close(transform(M, P), mat([["-phi*mu", 0, 1], [1, 0, 0], [0, 1, 0]], mu=mu, phi=-COMPLEX.phi7))
    P = mat([["-phi7", 0, 0], [0, "phi7**2", 0], [0, 0, "phi7**4"]])
    assert not close(transform(M, P), mat([["-phi7*mu", 0, 1], [1, 0, 0], [0, 1, 0]], mu=mu))


def test_transform_exact_rational():
    M = mat(T2_ROW1, RATIONAL, c=RATIONAL.coerce(3))
    P = mat([[2, 0, 0], [0, 1, 0], [0, 0, -1]], RATIONAL)
    N = transform(M, P, RATIONAL)
    assert all(x.denominator >= 1 for r in N for x in r)
    assert transform(N, linalg.inverse(P, RATIONAL), RATIONAL) == M


def test_transform_rejects_non_natural():
    M = mat([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    P = mat([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    assert orthogonality_defect(M, P)
    with pytest.raises(NotANaturalChange):
        transform(M, P)


def test_non_monomial_natural_change():
    # e1 + e2 and e1 - e2 stay orthogonal when e1^2 = -e2^2 ... here both squares vanish
    M = mat([[0, 0, 1], [0, 0, 1], [0, 0, 1]])
    P = mat([[1, 1, 0], [1, -1, 0], [0, 0, 1]])
    assert is_natural_change(M, P)
    N = transform(M, P)
    assert close(transform(N, linalg.inverse(P, COMPLEX)), M)


def test_basis_change_object():
    B = BasisChange([[0, 2, 0], [1, 0, 0], [0, 0, 1]])
    assert B.invertible
    assert close(linalg.matmul(B.P, B.inverse().P), mat([[1, 0, 0], [0, 1, 0], [0, 0, 1]]))
    assert B.P2[0][1] == 4
    assert not BasisChange([[1, 1, 0], [1, 1, 0], [0, 0, 1]]).invertible


@settings(max_examples=60)
@given(st.integers(0, 10 ** 6))
def test_monomial_roundtrip(seed):
    rng = random.Random(seed)
    M = [[COMPLEX.random(rng) if rng.random() < 0.7 else 0j for _ in range(3)] for _ in range(3)]
    perm = rng.sample(range(3), 3)
    P = [[COMPLEX.random(rng) if perm[j] == k else 0j for j in range(3)] for k in range(3)]
    assert is_natural_change(M, P)
    back = transform(transform(M, P), linalg.inverse(P, COMPLEX))
    assert close(back, M)
