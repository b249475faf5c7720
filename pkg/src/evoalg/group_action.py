"""The monomial group S3 x| (K^x)^3 acting on 3x3 structure matrices.

An element g = sigma(l1, l2, l3) is stored as a permutation (1-based images,
``perm[j-1] = sigma(j)``) and three nonzero scalars.  Its matrix is
``Pi_sigma diag(l)`` where ``Pi_sigma`` sends e_j to e_sigma(j); the action
``P^-1 M P^(2)`` then amounts to permuting first and scaling second.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import permutations

from . import linalg
from .basis_change import transform
from .field import COMPLEX, Field

PERMS = [tuple(p) for p in permutations((1, 2, 3))]


class ZeroScalar(ValueError):
    pass


def perm_from_cycle(text: str, n: int = 3):
    """'(1,2,3)' -> (2, 3, 1); 'id' or '' -> identity."""
    img = list(range(1, n + 1))
    for cyc in re.findall(r"\(([^)]*)\)", text):
        pts = [int(t) for t in cyc.replace(" ", "").split(",") if t]
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a - 1] = b
    return tuple(img)


def perm_compose(s, t):
    """(s o t)(j) = s(t(j))."""
    return tuple(s[t[j] - 1] for j in range(len(t)))


def perm_inverse(s):
    inv = [0] * len(s)
    for j, sj in enumerate(s):
        inv[sj - 1] = j + 1
    return tuple(inv)


def perm_matrix(s, F: Field = COMPLEX):
    n = len(s)
    return [[F.one if k + 1 == s[j] else F.zero for j in range(n)] for k in range(n)]


def act_permutation(sigma, M):
    """Entry (i, j) of the result is M[sigma(i)][sigma(j)]."""
    s = [x - 1 for x in sigma]
    return [[M[s[i]][s[j]] for j in range(len(M))] for i in range(len(M))]


def act_diagonal(scalars, M, F: Field = COMPLEX):
    """Entry (i, j) picks up l_j^2 / l_i (so the diagonal scales by l_i)."""
    lam = [F.coerce(x) for x in scalars]
    if any(F.is_zero(x) for x in lam):
        raise ZeroScalar("scalars must be nonzero")
    n = len(M)
    return [[M[i][j] * lam[j] * lam[j] / lam[i] for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class GroupElement:
    perm: tuple
    scalars: tuple

    def matrix(self, F: Field = COMPLEX):
        n = len(self.perm)
        return [
            [F.coerce(self.scalars[j]) if k + 1 == self.perm[j] else F.zero for j in range(n)]
            for k in range(n)
        ]

    def to_dict(self, F: Field = COMPLEX):
        return {"perm": list(self.perm), "scalars": [F.fmt(x) for x in self.scalars]}

    @classmethod
    def from_dict(cls, d, F: Field = COMPLEX):
        return cls(tuple(int(x) for x in d["perm"]), tuple(F.parse(str(x)) for x in d["scalars"]))


def identity_element(F: Field = COMPLEX, n: int = 3):
    return GroupElement(tuple(range(1, n + 1)), (F.one,) * n)


def from_matrix(P, F: Field = COMPLEX) -> GroupElement:
    """Read a monomial matrix back as sigma(l)."""
    n = len(P)
    sc = linalg.max_abs(P)
    perm = []
    for j in range(n):
        rows = [k for k in range(n) if not F.is_zero(P[k][j], sc)]
        if len(rows) != 1:
            raise ValueError("not a monomial matrix")
        perm.append(rows[0] + 1)
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError("not a monomial matrix")
    return GroupElement(tuple(perm), tuple(P[k - 1][j] for j, k in enumerate(perm)))


def is_monomial(P, F: Field = COMPLEX) -> bool:
    try:
        from_matrix(P, F)
        return True
    except ValueError:
        return False


def act(g: GroupElement, M, F: Field = COMPLEX, check: bool = False):
    out = act_diagonal(g.scalars, act_permutation(g.perm, M), F)
    if check:
        other = transform(M, g.matrix(F), F)
        if not linalg.mat_eq(out, other, F):
            raise AssertionError("closed-form action disagrees with P^-1 M P^(2)")
    return out


def compose(g: GroupElement, h: GroupElement, F: Field = COMPLEX) -> GroupElement:
    """Element acting as g after h: act(compose(g, h), M) == act(g, act(h, M))."""
    # act(g, act(h, M)) = transform(M, P_h P_g)
    # P_h P_g e_j = g_j P_h e_{g(j)} = g_j h_{g(j)} e_{h(g(j))}
    perm = perm_compose(h.perm, g.perm)
    lam = tuple(F.coerce(g.scalars[j]) * F.coerce(h.scalars[g.perm[j] - 1]) for j in range(len(g.perm)))
    return GroupElement(perm, lam)


def inverse(g: GroupElement, F: Field = COMPLEX) -> GroupElement:
    return from_matrix(linalg.inverse(g.matrix(F), F), F)
