"""Evolution algebras given by a structure matrix over a natural basis.

Column i of the structure matrix holds the coordinates of e_i^2, so the
product of two elements is ``M (x * y)`` with ``*`` the componentwise product.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

from . import linalg
from .field import COMPLEX, Field


class DimensionMismatch(ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


@dataclass(frozen=True)
class InvariantProfile:
    n: int
    dim_square: int
    ann_dim: int
    zero_count: int
    diag_zero_count: int
    rank: int
    extension_property: Optional[bool] = None
    property_2li: Optional[bool] = None
    pd2ei: Optional[bool] = None

    def to_dict(self):
        d = asdict(self)
        return {k: v for k, v in d.items() if v is not None}


def _check_square(M):
    n = len(M)
    if n == 0 or any(len(r) != n for r in M):
        raise DimensionMismatch("structure matrix must be square")
    return n


def multiply(x, y, M, F: Field = COMPLEX):
    """Coordinates of xy: M applied to the componentwise product of x and y."""
    n = _check_square(M)
    if len(x) != n or len(y) != n:
        raise DimensionMismatch(f"vectors of length {len(x)}, {len(y)} for dimension {n}")
    return linalg.matvec(M, [a * b for a, b in zip(x, y)])


def left_mult_matrix(M, i: int, F: Field = COMPLEX):
    """Matrix of x -> e_i x.  Only column i survives (1-based i)."""
    n = _check_square(M)
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"basis index {i} outside 1..{n}")
    return [[M[r][c] if c == i - 1 else F.zero for c in range(n)] for r in range(n)]


def _scale(M):
    return linalg.max_abs(M)


def zero_mask(M, F: Field = COMPLEX):
    sc = _scale(M)
    return [[F.is_zero(x, sc) for x in r] for r in M]


def dim_square(M, F: Field = COMPLEX) -> int:
    _check_square(M)
    return linalg.rank(M, F)


def annihilator_dim(M, F: Field = COMPLEX) -> int:
    """Number of basis vectors whose square is zero, i.e. zero columns."""
    n = _check_square(M)
    z = zero_mask(M, F)
    return sum(all(z[r][c] for r in range(n)) for c in range(n))


def zero_profile(M, F: Field = COMPLEX):
    n = _check_square(M)
    z = zero_mask(M, F)
    zc = sum(sum(r) for r in z)
    dz = sum(z[i][i] for i in range(n))
    return zc, dz, linalg.rank(M, F)


def columns_dependent(M, i, j, F: Field = COMPLEX) -> bool:
    pair = [[r[i], r[j]] for r in M]
    return linalg.rank(pair, F) < 2


def property_2li(M, F: Field = COMPLEX) -> bool:
    """Rank two and every pair of squares linearly independent."""
    n = _check_square(M)
    if n != 3:
        raise DimensionMismatch("Property (2LI) is defined here for n = 3")
    if linalg.rank(M, F) != 2:
        return False
    return not any(columns_dependent(M, i, j, F) for i, j in ((0, 1), (0, 2), (1, 2)))


def profile(M, F: Field = COMPLEX) -> InvariantProfile:
    n = _check_square(M)
    zc, dz, rk = zero_profile(M, F)
    ann = annihilator_dim(M, F)
    ep = pd = li = None
    if n == 3 and rk == 2:
        li = property_2li(M, F)
    if n == 3 and rk == 1:
        from .classifier3d import rank_one_invariants

        ep, pd = rank_one_invariants(M, F)
    return InvariantProfile(n, rk, ann, zc, dz, rk, ep, li, pd)
