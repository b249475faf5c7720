"""Canonical forms for three-dimensional evolution algebras.

``classify`` dispatches on dim A^2:

* 0: the zero algebra.
* 1: A^2 = span(w) and M = w c^T.  The products are xy = B(x, y) w with the
  diagonal form B(x, y) = sum c_k x_k y_k, so natural bases are B-orthogonal
  bases and the type is read from q(w) = B(w, w) and the radical of B.
* 2: three regimes.  With Property (2LI) every change of natural basis is
  monomial and the matcher below searches the group orbit against the row
  templates of T2..T7.  With a zero column (annihilator of dimension one) a
  shear clears the third row before matching against T14..T17.  Otherwise two
  squares are proportional; after arranging M = [u | v | v] the remaining
  changes are diag(a, R) with R^T R = s I, which is solved in closed form
  into the families of T8..T13.
* 3: monomial changes only; orbit matching against T18..T24.

Among the candidates a row admits, the one with the smallest parameter tuple
(under the field's total order) is the canonical representative.  Every
witness is checked with ``transform`` before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

from . import linalg, tables
from .basis_change import BasisChange, is_natural_change, transform
from .evolution_core import DimensionMismatch, InvariantProfile, profile, zero_mask
from .field import COMPLEX, Field, RootUnavailable, evaluate
from .group_action import PERMS, GroupElement, act_diagonal, act_permutation, perm_matrix


class WrongDimensionClass(ValueError):
    pass


class ClassificationGap(RuntimeError):
    """No table row matches; the tables would be incomplete."""


class WitnessError(AssertionError):
    """A constructed witness failed verification.  Always a bug."""


@dataclass(frozen=True)
class CanonicalType:
    dim: int
    table: Optional[str]
    row: Optional[int]
    params: tuple = ()  # ((name, value), ...)
    cell: Optional[int] = None
    canonical_matrix: tuple = dc_field(default=(), compare=False, hash=False)
    flags: tuple = dc_field(default=(), compare=False, hash=False)

    @property
    def param_dict(self):
        return dict(self.params)

    @property
    def residual_params(self):
        return [v for _, v in self.params]

    def key(self, F: Field = COMPLEX):
        return (self.dim, self.table, self.row, self.cell, tuple((n, F.key(v)) for n, v in self.params))

    def same(self, other: "CanonicalType", F: Field = COMPLEX) -> bool:
        if (self.dim, self.table, self.row, self.cell) != (other.dim, other.table, other.row, other.cell):
            return False
        a, b = self.param_dict, other.param_dict
        return a.keys() == b.keys() and all(F.eq(a[k], b[k]) for k in a)

    def label(self):
        if self.table is None:
            return "zero"
        s = f"{self.table}.{self.row}"
        return s if self.cell is None else f"{s}.{self.cell}"

    def to_dict(self, F: Field = COMPLEX):
        d = {"dim": self.dim, "table": self.table, "row": self.row,
             "params": {n: F.fmt(v) for n, v in self.params}}
        if self.cell is not None:
            d["cell"] = self.cell
        if self.flags:
            d["flags"] = list(self.flags)
        return d


@dataclass
class ClassificationResult:
    type: CanonicalType
    witness: BasisChange
    profile: InvariantProfile

    @property
    def canonical(self):
        return [list(r) for r in self.type.canonical_matrix]

    def to_dict(self, F: Field = COMPLEX):
        return {
            "type": self.type.to_dict(F),
            "canonical": linalg.fmt_matrix(self.canonical, F),
            "witness": linalg.fmt_matrix(self.witness.P, F),
            "profile": self.profile.to_dict(),
        }


# -- shared helpers ------------------------------------------------------------


def _snap(M, F: Field):
    """Zero out entries that are zero within tolerance; report whether any was nonzero."""
    mask = zero_mask(M, F)
    out, snapped = [], False
    for r, mr in zip(M, mask):
        row = []
        for x, z in zip(r, mr):
            if z and x != 0:
                snapped = True
            row.append(F.zero if z else F.coerce(x))
        out.append(row)
    return out, snapped


def _finish(M, P, ctype: CanonicalType, F: Field, prof=None) -> ClassificationResult:
    N = [list(r) for r in ctype.canonical_matrix]
    if not is_natural_change(M, P, F):
        raise WitnessError(f"witness for {ctype.label()} is not a natural change")
    got = transform(M, P, F)
    if not linalg.mat_eq(got, N, F, scale=max(1.0, linalg.max_abs(N))):
        raise WitnessError(f"witness for {ctype.label()} does not reach the canonical matrix")
    return ClassificationResult(ctype, BasisChange(P, F), prof or profile(M, F))


def _freeze(M):
    return tuple(tuple(r) for r in M)


def _is0(F: Field, x, scale=1.0):
    return F.is_zero(x, scale)


def _vnorm2(x):
    return max((abs(complex(t)) for t in x), default=0.0) ** 2


def _pkey(params, F):
    return tuple(F.key(v) for _, v in params)


# -- dim A^2 = 1 -----------------------------------------------------------------


def _rank_one_data(M, F: Field):
    """Return (w, c) with M = w c^T; c_j is exactly zero on zero columns."""
    n = len(M)
    mask = zero_mask(M, F)
    j0 = max(range(n), key=lambda j: max(abs(complex(M[i][j])) for i in range(n)))
    w = [M[i][j0] for i in range(n)]
    k = max(range(n), key=lambda i: abs(complex(w[i])))
    c = [F.zero if all(mask[i][j] for i in range(n)) else M[k][j] / w[k] for j in range(n)]
    return w, c


def _B(c, x, y):
    return sum(ck * a * b for ck, a, b in zip(c, x, y))


def _q_scale(c, x):
    return sum(abs(complex(ck)) * abs(complex(a)) ** 2 for ck, a in zip(c, x))


def _rank_one_case(M, F: Field):
    """'ext' when q(w) != 0, 'rad' when w is in the radical, 'iso' otherwise."""
    w, c = _rank_one_data(M, F)
    qw = _B(c, w, w)
    if not _is0(F, qw, _q_scale(c, w)):
        return "ext", w, c
    cw = [a * b for a, b in zip(c, w)]
    sc = max(abs(complex(a)) for a in c) * max(abs(complex(a)) for a in w)
    if all(_is0(F, t, sc) for t in cw):
        return "rad", w, c
    return "iso", w, c


def rank_one_invariants(M, F: Field = COMPLEX):
    """(extension property, PD2EI) for dim A^2 = 1."""
    case, _, _ = _rank_one_case(M, F)
    return {"ext": (True, False), "rad": (True, True), "iso": (False, True)}[case]


def _require_dim(M, F, d):
    r = linalg.rank(M, F)
    if r != d:
        raise WrongDimensionClass(f"dim A^2 is {r}, expected {d}")


def extension_property(M, F: Field = COMPLEX) -> bool:
    M = linalg.coerce_matrix(M, F)
    _require_dim(M, F, 1)
    return rank_one_invariants(M, F)[0]


def has_pd2ei(M, F: Field = COMPLEX, return_generator: bool = False):
    """Read off Table 1 after canonicalizing; the generator is in the canonical basis."""
    M = linalg.coerce_matrix(M, F)
    _require_dim(M, F, 1)
    res = canonicalize_dim1(M, F)
    claims = tables.entry("T1", res.type.row).claims
    gen = claims["pd2ei_generator"]
    gen = None if gen is None else [F.coerce(x) for x in gen]
    return (claims["pd2ei"], gen) if return_generator else claims["pd2ei"]


def _unit(k, F, n=3):
    return [F.one if i == k else F.zero for i in range(n)]


def _scaled(x, s):
    return [s * t for t in x]


def _normalize(c, x, F):
    """x / sqrt(q(x))."""
    return _scaled(x, F.one / F.sqrt(_B(c, x, x)))


def _perp_basis(a, F):
    """Two vectors spanning {x : a . x = 0} for a nonzero a."""
    k = max(range(3), key=lambda i: abs(complex(a[i])))
    out = []
    for l in range(3):
        if l == k:
            continue
        x = _unit(l, F)
        x[k] = -a[l] / a[k]
        out.append(x)
    return out


def _first_root_ok(cands, fn):
    """Apply fn to each candidate until no RootUnavailable is raised."""
    err = None
    for x in cands:
        try:
            return fn(x)
        except RootUnavailable as e:
            err = e
    raise err or RootUnavailable("no candidate admits the needed roots")


def canonicalize_dim1(M, F: Field = COMPLEX) -> ClassificationResult:
    M = linalg.coerce_matrix(M, F)
    _require_dim(M, F, 1)
    Ms, snapped = _snap(M, F)
    case, w, c = _rank_one_case(Ms, F)
    rad = [k for k in range(3) if c[k] == 0]
    ann = len(rad)
    if case == "ext":
        q0 = _B(c, w, w)
        w, c = _scaled(w, F.one / q0), _scaled(c, q0)
        perp = _perp_basis([a * b for a, b in zip(c, w)], F)
        if ann == 0:
            row = 3

            def build(x):
                y = perp[1] if x is not perp[1] else perp[0]
                p2 = _normalize(c, x, F)
                p3 = [a - _B(c, y, p2) * b for a, b in zip(y, p2)]
                return [w, p2, _normalize(c, p3, F)]

            sc = _q_scale(c, perp[0]) + _q_scale(c, perp[1])
            cands = [perp[0], perp[1], [a + b for a, b in zip(*perp)], [a - b for a, b in zip(*perp)]]
            cands = [x for x in cands if not _is0(F, _B(c, x, x), sc)]
            cols = _first_root_ok(cands, build)
        elif ann == 1:
            row = 4
            r = _unit(rad[0], F)
            sc = _q_scale(c, perp[0]) + _q_scale(c, perp[1])
            cands = [x for x in perp if not _is0(F, _B(c, x, x), sc)]
            cols = _first_root_ok(cands, lambda x: [w, r, _normalize(c, x, F)])
        else:
            row = 5
            cols = [w, _unit(rad[0], F), _unit(rad[1], F)]
    elif case == "rad":
        live = [k for k in range(3) if c[k] != 0]
        if ann == 1:
            row = 6
            cols = [w] + [_scaled(_unit(k, F), F.one / F.sqrt(c[k])) for k in live]
        else:
            row = 7
            other = max((k for k in rad), key=lambda k: -abs(complex(w[k])))
            cols = [w, _unit(other, F), _scaled(_unit(live[0], F), F.one / F.sqrt(c[live[0]]))]
    else:
        row = 1 if ann == 0 else 2
        k = max(range(3), key=lambda i: abs(complex(c[i] * w[i])))
        u = _scaled(_unit(k, F), F.one / (c[k] * w[k]))
        s = (F.one - _B(c, u, u)) / 2
        p1 = [a + s * b for a, b in zip(u, w)]
        p2 = [b - a for a, b in zip(p1, w)]
        if ann == 0:
            p3 = linalg.cross([a * b for a, b in zip(c, p1)], [a * b for a, b in zip(c, p2)])
            p3 = _normalize(c, p3, F)
        else:
            p3 = _unit(rad[0], F)
        cols = [p1, p2, p3]
    P = linalg.transpose(cols)
    N = tables.instantiate_cell(tables.entry("T1", row).cells[0], {}, F)
    flags = ("boundary",) if snapped else ()
    ctype = CanonicalType(1, "T1", row, (), None, _freeze(N), flags)
    return _finish(M, P, ctype, F)


# -- orbit matcher (monomial regime) -----------------------------------------------


def _pattern(M, F):
    return tuple(tuple(not z for z in r) for r in zero_mask(M, F))


def _cell_pattern(cell, overrides):
    def nz(x):
        if x == "0":
            return False
        if overrides and x in overrides and overrides[x] in ("0", 0):
            return False
        return True

    return tuple(tuple(nz(x) for x in r) for r in cell)


def _torsion(f, F):
    out = []
    for t in f:
        q = Fraction(t)
        out.append(F.one if q == 0 else F.root_of_unity(q.denominator, q.numerator))
    return out


@dataclass
class _Candidate:
    params: tuple
    g: GroupElement
    N: list
    ok: bool  # parameters satisfy the row's stated constraints


def _row_candidates(M, e: tables.TableEntry, F: Field, perms=PERMS):
    """Every group element carrying M into the shape of row e, with the parameters read off."""
    tpl = e.template
    over = e.overrides or {}
    pat = _cell_pattern(e.cells[0], over)
    consts = [(i, j, evaluate(v, F)) for i, j, v in tpl["const"]]
    out, root_err = [], None
    for sigma in perms:
        M1 = act_permutation(sigma, M)
        if _pattern(M1, F) != pat:
            continue
        b = [consts_val / M1[i][j] for (i, j), consts_val in
             zip([tuple(x) for x in tpl["solve_at"]], _solve_vals(tpl, F))]
        b += [F.one] * (3 - len(b))
        seeds = []
        for seed in (_seed_split, _seed_joint):
            try:
                seeds.append(seed(b, tpl, F))
                break
            except RootUnavailable as err:
                root_err = err
        for lam0 in seeds:
            for f in tpl["torsion"]:
                try:
                    tw = _torsion(f, F)
                except RootUnavailable:
                    continue
                lam = [a * t for a, t in zip(lam0, tw)]
                N = act_diagonal(lam, M1, F)
                if not all(F.eq(N[i][j], v) for i, j, v in consts):
                    continue
                g = GroupElement(tuple(sigma), tuple(lam))
                for params in _extract(tpl, N, e, F):
                    inst = tables.instantiate_cell(e.cells[0], params, F)
                    if not linalg.mat_eq(inst, N, F, scale=max(1.0, linalg.max_abs(N))):
                        continue
                    try:
                        tables.check_constraints(e, params, F)
                        ok = True
                    except tables.ConstraintViolated:
                        ok = False
                    out.append(_Candidate(tuple((p, params[p]) for p in e.params), g, N, ok))
    return out, root_err


def _seed_split(b, tpl, F):
    """lambda_k = prod_r (b_r^(1/D))^adj[k][r]; satisfies every equation exactly."""
    roots = [F.nth_root(x, tpl["D"]) for x in b]
    return [_powprod(roots, tpl["adj"][k], F) for k in range(3)]


def _seed_joint(b, tpl, F):
    """lambda_k = (prod_r b_r^adj[k][r])^(1/D); right up to roots of unity, needs fewer exact roots."""
    return [F.nth_root(_powprod(b, tpl["adj"][k], F), tpl["D"]) for k in range(3)]


def _powprod(xs, exps, F):
    out = F.one
    for x, e in zip(xs, exps):
        if e:
            out *= x**e if e > 0 else (F.one / x) ** (-e)
    return out


def _solve_vals(tpl, F):
    lookup = {(i, j): v for i, j, v in tpl["const"]}
    return [evaluate(lookup[tuple(x)], F) for x in tpl["solve_at"]]


def _extract(tpl, N, e, F):
    env = {f"m{i + 1}{j + 1}": N[i][j] for i in range(3) for j in range(3)}
    over = {k: evaluate(v, F) for k, v in (e.overrides or {}).items()}
    if not tpl["extract"]:
        yield dict(over)
        return
    for ex in tpl["extract"]:
        try:
            params = {p: evaluate(x, F, env) for p, x in ex.items()}
        except (ZeroDivisionError, RootUnavailable):
            continue
        params.update(over)
        yield params


def match_orbit(M, table_id: str, F: Field = COMPLEX, perms=PERMS):
    """First row of the table whose shape the orbit of M meets, with the minimal candidate.

    Returns (entry, candidate) or raises ClassificationGap / RootUnavailable.
    """
    fallback, root_err = None, None
    for e in tables.entries(table_id):
        cands, err = _row_candidates(M, e, F, perms)
        root_err = root_err or err
        good = [c for c in cands if c.ok]
        if good:
            return e, min(good, key=lambda c: _pkey(c.params, F)), False
        if cands and fallback is None:
            fallback = (e, min(cands, key=lambda c: _pkey(c.params, F)), True)
    if fallback:
        return fallback
    if root_err:
        raise root_err
    raise ClassificationGap(f"no row of {table_id} matches")


def _orbit_type(M, table_id, F, dim, snapped, perms=PERMS):
    e, cand, outside = match_orbit(M, table_id, F, perms)
    N = tables.instantiate_cell(e.cells[0], dict(cand.params), F)
    flags = tuple(f for f, on in (("outside-stated-constraints", outside), ("boundary", snapped)) if on)
    return CanonicalType(dim, e.table_id, e.row, cand.params, None, _freeze(N), flags), cand.g


def canonicalize_dim3(M, F: Field = COMPLEX) -> ClassificationResult:
    M = linalg.coerce_matrix(M, F)
    _require_dim(M, F, 3)
    Ms, snapped = _snap(M, F)
    nz = sum(sum(r) for r in _pattern(Ms, F))
    ctype, g = _orbit_type(Ms, f"T{nz + 15}", F, 3, snapped)
    return _finish(M, g.matrix(F), ctype, F)


# -- dim A^2 = 2 -----------------------------------------------------------------


def canonicalize_dim2(M, F: Field = COMPLEX) -> ClassificationResult:
    M = linalg.coerce_matrix(M, F)
    _require_dim(M, F, 2)
    Ms, snapped = _snap(M, F)
    zero_cols = [j for j in range(3) if all(Ms[i][j] == 0 for i in range(3))]
    if zero_cols:
        ctype, P = _annihilator_case(Ms, zero_cols[0], F, snapped)
    else:
        pair = _dependent_pair(Ms, F)
        if pair is None:
            nz = sum(sum(r) for r in _pattern(Ms, F))
            ctype, g = _orbit_type(Ms, f"T{nz - 2}", F, 2, snapped)
            P = g.matrix(F)
        else:
            ctype, P = _proportional_case(Ms, pair, F, snapped)
    return _finish(M, P, ctype, F)


def _dependent_pair(M, F):
    for i, j in ((0, 1), (0, 2), (1, 2)):
        if linalg.rank([[r[i], r[j]] for r in M], F) < 2:
            return i, j
    return None


def _shear(p31, p32, F):
    return [[F.one, F.zero, F.zero], [F.zero, F.one, F.zero], [p31, p32, F.one]]


def _annihilator_case(M, z, F, snapped):
    """Zero column: move it last, clear or reduce the third row, then match T14..T17."""
    sigma = [1, 2, 3]
    sigma[2], sigma[z] = z + 1, 3
    P0 = perm_matrix(tuple(sigma), F)
    M0 = transform(M, P0, F)
    N = [r[:2] for r in M0[:2]]
    r = M0[2][:2]
    sc = linalg.max_abs(M0)
    shears = []
    if linalg.rank(N, F) == 2:
        inv = linalg.inverse(N, F)
        shears.append(_shear(*[r[0] * inv[0][k] + r[1] * inv[1][k] for k in range(2)], F))
    else:
        top = max(range(2), key=lambda i: max(abs(complex(x)) for x in N[i]))
        n = N[top]
        for k in range(2):
            if _is0(F, n[k], sc):
                continue
            t = r[k] / n[k]
            # p31 N_1 + p32 N_2 = t n with N_top = n
            shears.append(_shear(t, F.zero, F) if top == 0 else _shear(F.zero, t, F))
    best = None
    for S in shears:
        M1, _ = _snap(transform(M0, S, F), F)
        top_nz = sum(sum(row) for row in _pattern(M1, F)[:2])
        try:
            e, cand, outside = match_orbit(M1, f"T{top_nz + 13}", F)
        except ClassificationGap:
            continue
        rank = (e.row, outside, _pkey(cand.params, F))
        if best is None or rank < best[0]:
            best = (rank, e, cand, outside, linalg.matmul(linalg.matmul(P0, S), cand.g.matrix(F)))
    if best is None:
        raise ClassificationGap("no row of T14..T17 matches")
    _, e, cand, outside, P = best
    N = tables.instantiate_cell(e.cells[0], dict(cand.params), F)
    flags = tuple(f for f, on in (("outside-stated-constraints", outside), ("boundary", snapped)) if on)
    return CanonicalType(2, e.table_id, e.row, cand.params, None, _freeze(N), flags), P


# proportional squares: M = [u | v | v] up to a change diag(a, R)


def _q2(x):
    return x[0] * x[0] + x[1] * x[1]


def _b2(x, y):
    return x[0] * y[0] + x[1] * y[1]


def _mv2(A, x):
    return [A[0][0] * x[0] + A[0][1] * x[1], A[1][0] * x[0] + A[1][1] * x[1]]


def _mm2(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(2)) for j in range(2)] for i in range(2)]


def _reflect_to(x, y, F):
    """Orthogonal O with O x = y, given q(x) = q(y) != 0."""
    one, zero = F.one, F.zero
    ident = [[one, zero], [zero, one]]
    d = [x[0] - y[0], x[1] - y[1]]
    sc = _vnorm2(x) + _vnorm2(y)
    if all(_is0(F, t, sc ** 0.5) for t in d):
        return ident
    qd = _q2(d)
    if not _is0(F, qd, sc):
        v, sign = d, one
    else:
        v, sign = [x[0] + y[0], x[1] + y[1]], -one
    qv = _q2(v)
    H = [[ident[i][j] - 2 * v[i] * v[j] / qv for j in range(2)] for i in range(2)]
    return [[sign * h for h in r] for r in H]


def _rotation(lam, F):
    """Rotation sending (1, i) to lam (1, i) and (1, -i) to (1, -i) / lam."""
    one = F.one
    if F.eq(lam, one):
        return [[one, F.zero], [F.zero, one]]
    if F.eq(lam, -one):
        return [[-one, F.zero], [F.zero, -one]]
    i = F.i
    c = (lam + one / lam) / 2
    s = (one / lam - lam) / (2 * i)
    return [[c, -s], [s, c]]


def _iso_split(U, F):
    """Coordinates (x, y) of U in the isotropic basis (1, i), (1, -i)."""
    i = F.i
    return (U[0] - i * U[1]) / 2, (U[0] + i * U[1]) / 2


def _proportional_case(M, pair, F, snapped):
    i, j = pair
    k = 3 - i - j
    sigma = (k + 1, i + 1, j + 1)
    P0 = perm_matrix(sigma, F)
    # perm_matrix sends e_j to e_sigma(j): columns k, i, j of M become 1, 2, 3
    M0 = transform(M, P0, F)
    piv = max(range(3), key=lambda r: abs(complex(M0[r][1])))
    t = M0[piv][2] / M0[piv][1]
    D0 = [[F.one, F.zero, F.zero], [F.zero, F.one, F.zero], [F.zero, F.zero, F.one / F.sqrt(t)]]
    M1, _ = _snap(transform(M0, D0, F), F)
    sc = linalg.max_abs(M1)
    u = [M1[r][0] for r in range(3)]
    v = [M1[r][1] for r in range(3)]
    u1, U, v1, V = u[0], u[1:], v[0], v[1:]

    def z(x, s=sc):
        return _is0(F, x, s)

    U0, V0 = all(z(x) for x in U), all(z(x) for x in V)
    qU = _q2(U)
    qV = _q2(V)
    isoU = not U0 and z(qU, _vnorm2(U))
    isoV = not V0 and z(qV, _vnorm2(V))
    boundary = snapped or (isoU and qU != 0) or (isoV and qV != 0)
    one, zero = F.one, F.zero
    H = [[one, zero], [zero, -one]]
    S = [[zero, one], [one, zero]]
    cands = []  # (table, row, cell, params, a, R)

    def push(tid, row, cell, names, vals, a, t_, O):
        R = [[O[c][r] / t_ for c in range(2)] for r in range(2)]  # (t O)^-1 = O^T / t
        cands.append((tid, row, cell, tuple(zip(names, vals)), a, R))

    if V0:
        # v = (v1, 0, 0): only q(U) matters, O ranges over all of O(2)
        if isoU:
            Uh, O0 = (U, None) if z(U[1] - F.i * U[0]) else (_mv2(H, U), H)
            y0 = Uh[0]
            if z(u1):
                a = one
                t_ = F.sqrt(v1 / a)
                lam = one / (a * a * t_ * y0)
                push("T8", 1, 2, (), (), a, t_, _rot_after(lam, O0, F))
            else:
                # target U = (i, 1) = i (1, -i): send U to a multiple of (1, -i)
                Uh, O0 = (U, None) if z(U[1] + F.i * U[0]) else (_mv2(H, U), H)
                y0 = Uh[0]
                a = one / u1
                t_ = F.sqrt(v1 * u1)
                lam = a * a * t_ * y0 / F.i
                push("T9", 2, 2, ("alpha",), (one,), a, t_, _rot_after(lam, O0, F))
        elif z(u1):
            a = F.nth_root(2 / (v1 * qU), 3)
            t_ = F.sqrt(v1 / a)
            W = [a * a * t_ * x for x in U]
            push("T8", 1, 1, (), (), a, t_, _reflect_to(W, [one, one], F))
        else:
            a = one / u1
            t_ = F.sqrt(v1 * u1)
            W = [a * a * t_ * x for x in U]
            al = F.sqrt(_q2(W) - one)
            for s in (al, -al):
                push("T9", 2, 1, ("alpha",), (s,), a, t_, _reflect_to(W, [one, s], F))
    elif not isoV:
        t_ = F.sqrt(qV / 2)
        O1 = _reflect_to([x / t_ for x in V], [one, one], F)
        for O in (O1, _mm2(S, O1)):
            TU = [t_ * x for x in _mv2(O, U)]
            if U0:
                if z(v1):
                    push("T9", 1, 1, (), (), one / u1, t_, O)
                else:
                    a = v1 / (t_ * t_)
                    push("T11", 1, 1, ("alpha",), (a * u1,), a, t_, O)
            elif z(u1) and z(v1):
                if z(TU[0]):
                    continue
                a = F.sqrt(one / TU[0])
                push("T10", 1, 1, ("alpha",), (TU[1] / TU[0],), a, t_, O)
            elif z(v1):
                a = one / u1
                push("T11", 2, 1, ("alpha", "beta"), tuple(a * a * x for x in TU), a, t_, O)
            elif z(u1):
                a = v1 / (t_ * t_)
                push("T12", 1, 1, ("alpha", "beta"), tuple(a * a * x for x in TU), a, t_, O)
            else:
                a = v1 / (t_ * t_)
                push("T13", 1, 1, ("alpha", "beta", "gamma"), (a * u1,) + tuple(a * a * x for x in TU), a, t_, O)
    else:
        # V isotropic: move it onto y0 (1, i); what is left is a and w = t^2
        if z(V[1] - F.i * V[0]):
            O0, Vh, Uh = None, V, U
        else:
            O0, Vh, Uh = H, _mv2(H, V), _mv2(H, U)
        y0 = Vh[0]
        x, y = _iso_split(Uh, F)
        xs = max(abs(complex(Uh[0])), abs(complex(Uh[1])))
        xz = z(x, xs)
        i = F.i
        if U0:
            a = one / u1
            if z(v1):
                tid, row, names, vals, w = "T9", 1, (), (), one
            else:
                tid, row, names, vals, w = "T11", 1, ("alpha",), (one,), v1 / a
        elif z(u1) and z(v1):
            if xz:
                xt, yt, al = zero, one, -i
            else:
                xt, yt, al = (one - i) / 2, (one + i) / 2, one
            a = F.sqrt(yt / (y0 * y))
            w = one if xz else xt * y0 / (a * a * x)
            tid, row, names, vals = "T10", 1, ("alpha",), (al,)
        elif z(v1):
            a = one / u1
            w = one if xz else y0 / (a * a * x)
            xp = zero if xz else one
            Y = a * a * y0 * y
            tid, row, names, vals = "T11", 2, ("alpha", "beta"), (xp + Y, i * (xp - Y))
        elif z(u1):
            a = F.sqrt(one / (y0 * y)) if xz else y0 / (v1 * x)
            w = v1 / a
            xp, yp = a * a * w * x / y0, a * a * y0 * y
            tid, row, names, vals = "T12", 1, ("alpha", "beta"), (xp + yp, i * (xp - yp))
        else:
            a = one / u1
            w = v1 / a
            xp, yp = a * a * w * x / y0, a * a * y0 * y
            tid, row, names, vals = "T13", 1, ("alpha", "beta", "gamma"), (one, xp + yp, i * (xp - yp))
        t_ = F.sqrt(w)
        push(tid, row, 2, names, vals, a, t_, _rot_after(t_ / y0, O0, F))

    best = None
    for tid, row, cell, params, a, R in cands:
        e = tables.entry(tid, row)
        N = tables.instantiate_cell(e.cells[cell - 1], dict(params), F)
        rank = _pkey(params, F)
        if best is None or rank < best[0]:
            best = (rank, tid, row, cell, params, a, R, N)
    _, tid, row, cell, params, a, R, N = best
    Pb = [[a, zero, zero], [zero, R[0][0], R[0][1]], [zero, R[1][0], R[1][1]]]
    P = linalg.matmul(linalg.matmul(P0, D0), Pb)
    e = tables.entry(tid, row)
    try:
        tables.check_constraints(e, dict(params), F)
        outside = False
    except tables.ConstraintViolated:
        outside = True
    flags = tuple(f for f, on in (("outside-stated-constraints", outside), ("boundary", boundary)) if on)
    return CanonicalType(2, tid, row, params, cell, _freeze(N), flags), P


def _rot_after(lam, O0, F):
    Rm = _rotation(lam, F)
    return Rm if O0 is None else _mm2(Rm, O0)


# -- entry point -------------------------------------------------------------------


def classify(M, F: Field = COMPLEX) -> ClassificationResult:
    M = linalg.coerce_matrix(M, F)
    if len(M) != 3 or any(len(r) != 3 for r in M):
        raise DimensionMismatch("classification is implemented for 3x3 structure matrices")
    d = linalg.rank(M, F)
    if d == 0:
        Z = [[F.zero] * 3 for _ in range(3)]
        ctype = CanonicalType(0, None, None, (), None, _freeze(Z))
        return _finish(M, linalg.identity(3, F), ctype, F)
    if d == 1:
        return canonicalize_dim1(M, F)
    if d == 2:
        return canonicalize_dim2(M, F)
    return canonicalize_dim3(M, F)
