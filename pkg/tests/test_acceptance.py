"""Acceptance criteria 1-9.  Each test records one PASS/FAIL line, printed at the end of the run."""

import random
import time
from contextlib import contextmanager
from itertools import product


from evoalg import linalg, tables
from evoalg.basis_change import is_natural_change, transform
from evoalg.classifier3d import classify
from evoalg.evolution_core import zero_profile
from evoalg.field import COMPLEX, RATIONAL
from evoalg.group_action import act
from evoalg.isomorphism import YES, are_isomorphic, verify_witness

from conftest import close
from generators import group_element, matrix_of_dim

RESULTS = {}


@contextmanager
def criterion(n, desc, limit=None):
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        dt = time.perf_counter() - t0
        late = limit is not None and dt >= limit
        status = "PASS" if ok and not late else "FAIL"
        extra = f" over the {limit:g} s limit" if late else ""
        RESULTS[n] = f"criterion {n}: {status}  {desc}  ({dt:.2f} s{extra})"
        print(RESULTS[n])
    assert not late, f"criterion {n} took {dt:.2f} s, limit {limit} s"


def test_1_table1_reproduction():
    with criterion(1, "Table 1 rows give 7 distinct types with matching (EP, ann, PD2EI)", 1.0):
        seen = set()
        for e in tables.entries("T1"):
            M = tables.instantiate_cell(e.cells[0], {}, RATIONAL)
            r = classify(M, RATIONAL)
            p = r.profile
            want = (e.claims["extension_property"], e.claims["ann_dim"], e.claims["pd2ei"])
            assert (p.extension_property, p.ann_dim, p.pd2ei) == want, e.key
            assert r.type.row == e.row and r.canonical == M
            seen.add(r.type)
        assert len(seen) == 7


def test_2_primed_tables():
    with criterion(2, "primed tables: 5 samples per row, natural and M' reproduced at 1e-9", 10.0):
        reps = tables.verify_primed_tables(samples=5, seed=0, tol=1e-9)
        s = tables.summarize(reps)
        errata_rows = [f"{r.table}.{r.row}" for r in reps if r.status == "errata-pass"]
        print(f"  {s['pass']} rows pass as printed, {s['errata-pass']} pass via errata: {' '.join(errata_rows)}")
        assert s["fail"] == 0, [r.to_dict() for r in reps if not r.ok]
        assert s["rows"] == sum(len(tables.primed_rows(t)) for t in tables.primed_ids())


def test_3_orbit_rows():
    with criterion(3, "orbit rows: every column is the relabeled first cell (exact)", 10.0):
        reps = tables.verify_orbits(RATIONAL, seed=0)
        s = tables.summarize(reps)
        print(f"  {s['rows']} rows, {s['errata-pass']} via errata")
        assert s["fail"] == 0


def test_4_zero_profile_invariance():
    rng = random.Random(4)
    with criterion(4, "1000 random (g, M): zero_profile preserved", 5.0):
        for _ in range(1000):
            d = rng.choice((1, 2, 3))
            M = matrix_of_dim(rng, d) if rng.random() < 0.5 else [
                [COMPLEX.random(rng) if rng.random() < 0.5 else 0j for _ in range(3)] for _ in range(3)]
            g = group_element(rng)
            assert zero_profile(act(g, M)) == zero_profile(M)


def test_5_round_trip():
    rng = random.Random(5)
    with criterion(5, "1000 random monomial changes: transform(transform(M, P), P^-1) = M at 1e-8", 5.0):
        for _ in range(1000):
            M = [[COMPLEX.random(rng) if rng.random() < 0.7 else 0j for _ in range(3)] for _ in range(3)]
            P = group_element(rng).matrix()
            assert is_natural_change(M, P)
            back = transform(transform(M, P), linalg.inverse(P, COMPLEX))
            sc = max(1.0, linalg.max_abs(M))
            assert all(abs(a - b) <= 1e-8 * sc for ra, rb in zip(back, M) for a, b in zip(ra, rb))


def test_6_family_counts():
    with criterion(6, "canonical families: 7 / 57 / 51"):
        c = tables.family_counts()
        by_dim = {d: sum(f.dim == d for f in tables.catalog()) for d in (1, 2, 3)}
        assert (c["dim1"], c["dim2"], c["dim3"]) == (7, 57, 51)
        assert by_dim == {1: 7, 2: 57, 3: 51}


def _row_matrix(e, rng):
    env = tables.sample_params(e, rng, COMPLEX)
    env = {k: v * rng.choice((1, -1, 1j, 2)) for k, v in env.items()}
    tables.check_constraints(e, env, COMPLEX)
    if e.overrides:
        env.update({k: COMPLEX.parse(v) for k, v in e.overrides.items()})
    cell = e.cells[1] if e.kind == "cells" else e.cells[0]
    return tables.instantiate_cell(cell, env, COMPLEX)


def test_7_isomorphism_regression():
    rng = random.Random(7)
    with criterion(7, "primed identifications all YES with verified witness; 50 cross-row pairs never YES", 30.0):
        n = 0
        for tid in tables.primed_ids():
            for idx in range(len(tables.primed_rows(tid))):
                M, P, N, env = tables.primed_instance(tid, idx, rng)
                d = are_isomorphic(M, N)
                assert d.verdict == YES, (tid, idx + 1, d.verdict)
                assert verify_witness(M, N, d.witness), (tid, idx + 1)
                n += 1
        multi = [t for t in tables.TABLE_IDS if t != "T1" and len(tables.entries(t)) > 1]
        pairs = 0
        while pairs < 50:
            tid = rng.choice(multi)
            a, b = rng.sample(tables.entries(tid), 2)
            try:
                A, B = _row_matrix(a, rng), _row_matrix(b, rng)
            except tables.ConstraintViolated:
                continue
            d = are_isomorphic(A, B)
            assert d.verdict != YES, (a.key, b.key)
            pairs += 1
        print(f"  {n} identifications confirmed, {pairs} cross-row pairs separated")


def test_8_three_orbits():
    mats = [[[1, 0, 0], [0, 1, 0], [0, 0, 1]], [[0, 1, 0], [1, 0, 0], [0, 0, 1]], [[0, 1, 0], [0, 0, 1], [1, 0, 0]]]
    mats = [linalg.coerce_matrix(M, COMPLEX) for M in mats]
    with criterion(8, "three-nonzero dim-3 matrices: YES only on the diagonal"):
        for i, j in product(range(3), repeat=2):
            d = are_isomorphic(mats[i], mats[j])
            assert (d.verdict == YES) == (i == j), (i, j, d.verdict)
            if i == j:
                assert verify_witness(mats[i], mats[j], d.witness)


def test_9_idempotence_and_soundness():
    rng = random.Random(9)
    with criterion(9, "500 random matrices per dimension class: sound witness, idempotent type", 60.0):
        for d in (1, 2, 3):
            for _ in range(500):
                M = matrix_of_dim(rng, d)
                r = classify(M)
                P = r.witness.P
                assert is_natural_change(M, P) and close(transform(M, P), r.canonical)
                assert classify(r.canonical).type.same(r.type)
