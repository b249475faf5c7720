"""Isomorphism of three-dimensional evolution algebras.

Three tiers, recorded in the result:

* ``invariants``: profiles differing in a component that is invariant in the
  shared regime give NO with the differing component as certificate.
* ``canonical``: equal canonical types give YES with witness P1 P2^-1 where
  P1, P2 carry M1, M2 to the common canonical matrix.
* ``group-search``: when every change of natural basis is monomial (dim A^2 = 3
  or Property (2LI)) an exhaustive search over S3 x| (K^x)^3 either finds a
  witness or proves there is none.

Outside those regimes differing canonical types give UNDECIDED-DISTINCT.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product
from typing import Optional

from . import linalg
from .basis_change import is_natural_change, transform
from .classifier3d import ClassificationGap, ClassificationResult, classify
from .evolution_core import profile, zero_mask
from .field import COMPLEX, RATIONAL, Field, RootUnavailable
from .group_action import PERMS, GroupElement, act, act_permutation, from_matrix, is_monomial

YES, NO, UNDECIDED = "yes", "no", "undecided-distinct"


class RegimeMismatch(ValueError):
    pass


@dataclass
class Decision:
    verdict: str
    tier: str
    witness: Optional[list] = None
    certificate: dict = dc_field(default_factory=dict)
    types: tuple = ()

    def to_dict(self, F: Field = COMPLEX):
        d = {"verdict": self.verdict, "tier": self.tier,
             "witness": None if self.witness is None else linalg.fmt_matrix(self.witness, F)}
        if self.witness is not None and is_monomial(self.witness, F):
            d["group_element"] = from_matrix(self.witness, F).to_dict(F)
        if self.certificate:
            d["certificate"] = self.certificate
        if self.types:
            d["types"] = [t.to_dict(F) if t is not None else None for t in self.types]
        return d


def verify_witness(M1, M2, P, F: Field = COMPLEX) -> bool:
    if not is_natural_change(M1, P, F):
        return False
    got = transform(M1, P, F)
    return linalg.mat_eq(got, M2, F, scale=max(1.0, linalg.max_abs(M2)))


# -- invariants ------------------------------------------------------------------


def _top_nonzero(M, F):
    """Nonzero entries of the 2x2 block left after moving the zero column last."""
    mask = zero_mask(M, F)
    z = next(j for j in range(3) if all(mask[i][j] for i in range(3)))
    keep = [k for k in range(3) if k != z]
    return sum(not mask[i][j] for i in keep for j in keep)


def invariant_signature(M, F: Field = COMPLEX):
    """Components of the profile that are isomorphism invariants in M's regime."""
    p = profile(M, F)
    sig = {"dim_square": p.dim_square, "ann_dim": p.ann_dim}
    if p.dim_square == 1:
        sig.update(extension_property=p.extension_property, pd2ei=p.pd2ei)
    elif p.dim_square == 2:
        sig["property_2li"] = p.property_2li
        if p.property_2li:
            sig.update(zero_count=p.zero_count, diag_zero_count=p.diag_zero_count)
        elif p.ann_dim == 1:
            sig["top_nonzero"] = _top_nonzero(M, F)
    elif p.dim_square == 3:
        sig.update(zero_count=p.zero_count, diag_zero_count=p.diag_zero_count)
    return sig


def group_regime(M, F: Field = COMPLEX) -> bool:
    """Every change of natural basis is monomial."""
    p = profile(M, F)
    return p.dim_square == 3 or bool(p.property_2li)


# -- monomial witnesses -------------------------------------------------------------


def _exp_row(i, j):
    r = [0, 0, 0]
    r[i] -= 1
    r[j] += 2
    return r


def _solve_system(rows):
    """Complete to an invertible integer matrix; return (A, adj, D, torsion)."""
    A = []
    for r in rows:
        if linalg.rank([list(map(Fraction, x)) for x in A + [r]], RATIONAL) > len(A):
            A.append(r)
        if len(A) == 3:
            break
    picked = len(A)
    for k in range(3):
        u = [1 if t == k else 0 for t in range(3)]
        if len(A) < 3 and linalg.rank([list(map(Fraction, x)) for x in A + [u]], RATIONAL) > len(A):
            A.append(u)
    Aq = [[Fraction(x) for x in r] for r in A]
    D = linalg.det(Aq, RATIONAL)
    inv = linalg.inverse(Aq, RATIONAL)
    adj = [[int(x * D) for x in r] for r in inv]
    if D < 0:
        D, adj = -D, [[-x for x in r] for r in adj]
    gens = [tuple(inv[k][c] % 1 for k in range(3)) for c in range(3)]
    tors = {(Fraction(0),) * 3}
    todo = list(tors)
    while todo:
        t = todo.pop()
        for g in gens:
            u = tuple((a + b) % 1 for a, b in zip(t, g))
            if u not in tors:
                tors.add(u)
                todo.append(u)
    return A, picked, adj, int(D), sorted(tors)


def find_witness_group(M1, M2, F: Field = COMPLEX) -> Optional[GroupElement]:
    """First g in S3 x| (K^x)^3 with act(g, M1) = M2, or None."""
    M1 = linalg.coerce_matrix(M1, F)
    M2 = linalg.coerce_matrix(M2, F)
    pat2 = zero_mask(M2, F)
    sc = max(1.0, linalg.max_abs(M2))
    for sigma in PERMS:
        A1 = act_permutation(sigma, M1)
        if zero_mask(A1, F) != pat2:
            continue
        pos = [(i, j) for i in range(3) for j in range(3) if not pat2[i][j]]
        # first matched entries define the scalars, the rest verify
        A, picked, adj, D, tors = _solve_system([_exp_row(i, j) for i, j in pos])
        b = []
        for r in A[:picked]:
            i, j = next((i, j) for i, j in pos if _exp_row(i, j) == r)
            b.append(M2[i][j] / A1[i][j])
        b += [F.one] * (3 - picked)
        seeds = []
        for mode in ("split", "joint"):
            try:
                seeds.append(_seed(b, adj, D, F, mode))
                break
            except RootUnavailable:
                continue
        for lam0, f in product(seeds, tors):
            try:
                tw = [F.one if q == 0 else F.root_of_unity(q.denominator, q.numerator) for q in f]
            except RootUnavailable:
                continue
            g = GroupElement(tuple(sigma), tuple(a * t for a, t in zip(lam0, tw)))
            if linalg.mat_eq(act(g, M1, F), M2, F, scale=sc):
                return g
    return None


def _seed(b, adj, D, F, mode):
    def powprod(xs, exps):
        out = F.one
        for x, e in zip(xs, exps):
            if e:
                out *= x**e if e > 0 else (F.one / x) ** (-e)
        return out

    if mode == "split":
        roots = [F.nth_root(x, D) for x in b]
        return [powprod(roots, adj[k]) for k in range(3)]
    return [F.nth_root(powprod(b, adj[k]), D) for k in range(3)]


# -- structured families -----------------------------------------------------------

FAMILIES = ("group", "Q", "shear", "dim1")


def _q_regime(M, F):
    mask = zero_mask(M, F)
    cols_equal = all(F.eq(M[i][1], M[i][2], linalg.max_abs(M)) for i in range(3))
    nonzero = not all(mask[i][1] for i in range(3))
    return cols_equal and nonzero and linalg.rank(M, F) == 2


def _family_applies(M, family, F):
    if family == "group":
        return True
    if family == "Q":
        return _q_regime(M, F)
    if family == "shear":
        mask = zero_mask(M, F)
        return all(mask[i][2] for i in range(3)) and linalg.rank(M, F) == 2
    if family == "dim1":
        return linalg.rank(M, F) == 1
    raise ValueError(f"unknown witness family {family!r}")


def find_witness_family(M1, M2, family: str, F: Field = COMPLEX):
    """A witness of the given shape carrying M1 to M2, or None.

    ``Q``: block changes diag(a, R) with R^T R = s I between matrices whose
    last two columns coincide.  ``shear``: changes fixing a zero third column,
    [[a, 0, 0], [0, b, 0], [p31, p32, p33]] up to swapping the first two basis
    vectors.  ``dim1``: any natural change between rank-one matrices.
    ``group``: monomial changes.
    """
    M1 = linalg.coerce_matrix(M1, F)
    M2 = linalg.coerce_matrix(M2, F)
    if not _family_applies(M1, family, F):
        raise RegimeMismatch(f"{family} changes do not apply to this matrix")
    if family == "group":
        g = find_witness_group(M1, M2, F)
        return None if g is None else g.matrix(F)
    if not _family_applies(M2, family, F):
        return None
    try:
        r1, r2 = classify(M1, F), classify(M2, F)
    except (RootUnavailable, ClassificationGap):
        return None
    if not r1.type.same(r2.type, F):
        return None
    P = linalg.matmul(r1.witness.P, linalg.inverse(r2.witness.P, F))
    if family == "Q" and not all(F.is_zero(x, linalg.max_abs(P)) for x in (P[0][1], P[0][2], P[1][0], P[2][0])):
        return None
    if family == "shear" and not all(F.is_zero(x, linalg.max_abs(P)) for x in (P[0][2], P[1][2])):
        return None
    return P if verify_witness(M1, M2, P, F) else None


# -- oracle ---------------------------------------------------------------------------


def default_grid(F: Field = COMPLEX):
    base = [1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2), 3, Fraction(1, 3)]
    out = [F.coerce(x) for x in base]
    if F.name == "complex":
        i = F.i
        out += [i, -i]
        out += [F.root_of_unity(3, k) for k in (1, 2)] + [F.root_of_unity(6, k) for k in (1, 5)]
        out += [F.root_of_unity(7, k) for k in range(1, 7)] + [-F.root_of_unity(7, k) for k in range(1, 7)]
        for x in (2, Fraction(1, 2), -1, -2):
            for n in (2, 3, 7):
                out.append(F.nth_root(F.coerce(x), n))
    uniq = []
    for x in out:
        if not any(F.eq(x, y) for y in uniq):
            uniq.append(x)
    return uniq


def brute_force_oracle(M1, M2, grid=None, F: Field = COMPLEX):
    """Exhaustive search over grid-valued monomial and Q-family changes; tests only."""
    M1 = linalg.coerce_matrix(M1, F)
    M2 = linalg.coerce_matrix(M2, F)
    grid = default_grid(F) if grid is None else [F.coerce(x) for x in grid]
    sc = max(1.0, linalg.max_abs(M2))
    for sigma in PERMS:
        A = act_permutation(sigma, M1)

        def ok(i, j, lam):
            return F.eq(A[i][j] * lam[j] * lam[j] / lam[i], M2[i][j], sc)

        for l1 in grid:
            if not ok(0, 0, (l1, None, None)):
                continue
            for l2 in grid:
                lam = (l1, l2, None)
                if not all(ok(i, j, lam) for i in (0, 1) for j in (0, 1)):
                    continue
                for l3 in grid:
                    lam = (l1, l2, l3)
                    if all(ok(i, j, lam) for i in range(3) for j in range(3)):
                        P = GroupElement(tuple(sigma), lam).matrix(F)
                        if verify_witness(M1, M2, P, F):
                            return P
    if _q_regime(M1, F):
        zero, one = F.zero, F.one
        blocks = [[[one, zero], [zero, one]], [[zero, one], [one, zero]],
                  [[one, zero], [zero, -one]], [[zero, -one], [one, zero]]]
        for a, t, O in product(grid, grid, blocks):
            P = [[a, zero, zero], [zero, O[0][0] * t, O[0][1] * t], [zero, O[1][0] * t, O[1][1] * t]]
            if verify_witness(M1, M2, P, F):
                return P
    return None


# -- decision ---------------------------------------------------------------------------


def _from_types(M1, M2, r1: ClassificationResult, r2: ClassificationResult, F):
    P = linalg.matmul(r1.witness.P, linalg.inverse(r2.witness.P, F))
    return P if verify_witness(M1, M2, P, F) else None


def are_isomorphic(M1, M2, F: Field = COMPLEX) -> Decision:
    M1 = linalg.coerce_matrix(M1, F)
    M2 = linalg.coerce_matrix(M2, F)
    if len(M1) != 3 or len(M2) != 3:
        raise ValueError("isomorphism is implemented for 3x3 structure matrices")
    if linalg.mat_eq(M1, M2, F):
        return Decision(YES, "trivial", linalg.identity(3, F))
    s1, s2 = invariant_signature(M1, F), invariant_signature(M2, F)
    diff = {k: [s1.get(k), s2.get(k)] for k in sorted(set(s1) | set(s2)) if s1.get(k) != s2.get(k)}
    if diff:
        return Decision(NO, "invariants", certificate=diff)
    types = ()
    try:
        r1, r2 = classify(M1, F), classify(M2, F)
        types = (r1.type, r2.type)
        if r1.type.same(r2.type, F):
            P = _from_types(M1, M2, r1, r2, F)
            if P is not None:
                return Decision(YES, "canonical", P, types=types)
    except (RootUnavailable, ClassificationGap):
        pass
    if group_regime(M1, F):
        g = find_witness_group(M1, M2, F)
        if g is not None:
            return Decision(YES, "group-search", g.matrix(F), types=types)
        return Decision(NO, "group-search", certificate={"exhaustive_group_search": True}, types=types)
    return Decision(UNDECIDED, "canonical", certificate={"reason": "canonical types differ"}, types=types)
