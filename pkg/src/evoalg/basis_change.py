"""Changes of natural basis.

A matrix P (columns = new basis vectors in old coordinates) gives a natural
basis iff det P != 0 and M (P*P) = 0, where P*P collects the products
p_ki p_kj over pairs i < j.  The new structure matrix is P^-1 M P^(2).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations

from . import linalg
from .field import COMPLEX, Field


class NotANaturalChange(ValueError):
    pass


def pairs(n):
    return list(combinations(range(n), 2))


def star_product(P):
    """n x n(n-1)/2 matrix with column (i,j) equal to p_ki p_kj, pairs in lexicographic order."""
    n = len(P)
    return [[P[k][i] * P[k][j] for i, j in pairs(n)] for k in range(n)]


@dataclass
class BasisChange:
    P: list
    F: Field = COMPLEX
    det: object = dc_field(init=False)
    P2: list = dc_field(init=False)

    def __post_init__(self):
        self.P = linalg.coerce_matrix(self.P, self.F)
        self.det = linalg.det(self.P, self.F)
        self.P2 = linalg.entry_square(self.P)

    @property
    def invertible(self):
        return not self.F.is_zero(self.det, linalg.max_abs(self.P) ** len(self.P))

    def inverse(self):
        return BasisChange(linalg.inverse(self.P, self.F), self.F)


def is_singular(P, F: Field = COMPLEX) -> bool:
    d = linalg.det(P, F)
    return F.is_zero(d, linalg.max_abs(P) ** len(P))


def orthogonality_defect(M, P, F: Field = COMPLEX):
    """Entries of M (P*P) that are not zero, with their magnitudes; empty when P is natural for M."""
    n = len(P)
    bad = []
    # rounding in P shows up against the overall size of M p p, not of each term
    glob = linalg.max_abs(M) * linalg.max_abs(P) ** 2
    for k in range(n):
        for c, (i, j) in enumerate(pairs(n)):
            terms = [M[k][l] * P[l][i] * P[l][j] for l in range(n)]
            v = sum(terms)
            if v == 0:
                continue
            sc = max(glob, max(abs(complex(t)) for t in terms))
            if abs(complex(v)) > F.tol * sc:
                bad.append(((k, c), v))
    return bad


def is_natural_change(M, P, F: Field = COMPLEX) -> bool:
    if len(M) != len(P):
        raise ValueError("shape mismatch")
    if is_singular(P, F):
        return False
    return not orthogonality_defect(M, P, F)


def transform(M, P, F: Field = COMPLEX, force: bool = False):
    """Structure matrix relative to the basis given by the columns of P."""
    if not force and not is_natural_change(M, P, F):
        raise NotANaturalChange("P does not give a natural basis for M")
    Pinv = linalg.inverse(P, F)
    return linalg.matmul(linalg.matmul(Pinv, M), linalg.entry_square(P))
