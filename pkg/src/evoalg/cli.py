"""Command-line front end.

Matrix arguments are JSON documents ``{"field": ..., "matrix": [[...]]}`` or
bare JSON arrays, given inline, as a file path, or ``-`` for stdin.  Scalars
are JSON numbers or strings in the scalar grammar (``"1+2i"``, ``"sqrt(2)"``).

Exit codes: 0 success, 1 a verification or check failed, 2 invalid input,
3 a root needed by the exact backend does not exist.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import linalg, tables
from .basis_change import is_natural_change, orthogonality_defect, transform
from .classifier3d import ClassificationGap, classify
from .evolution_core import DimensionMismatch, profile
from .field import Field, ParseError, RootUnavailable, evaluate, get_field
from .isomorphism import are_isomorphic

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_ROOT = 0, 1, 2, 3


class InputError(ValueError):
    pass


def _load_doc(arg: str):
    if arg == "-":
        text = sys.stdin.read()
    elif arg.lstrip().startswith(("[", "{")):
        text = arg
    else:
        try:
            with open(arg) as fh:
                text = fh.read()
        except OSError as e:
            raise InputError(f"cannot read {arg}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON: {e}") from None


def _scalar(x, F: Field):
    if isinstance(x, bool) or x is None:
        raise ParseError(f"bad scalar {x!r}")
    if isinstance(x, str):
        return evaluate(x, F)
    if isinstance(x, float) and F.name == "rational":
        return Fraction(str(x))
    if isinstance(x, (int, float)):
        return F.coerce(x)
    raise ParseError(f"bad scalar {x!r}")


def parse_matrix(doc, F: Field | None = None, default_field: str = "complex", tol=None):
    """Return (matrix, field) from a document; the document's field wins over the default."""
    if isinstance(doc, dict):
        if "matrix" not in doc:
            raise InputError("document has no 'matrix'")
        name = doc.get("field", default_field)
        rows = doc["matrix"]
    else:
        name, rows = default_field, doc
    if F is None or F.name != name:
        F = get_field(name, tol)
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise InputError("matrix must be a non-empty list of rows")
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionMismatch("structure matrix must be square")
    return [[_scalar(x, F) for x in r] for r in rows], F


def serialize_matrix(M, F: Field):
    return {"field": F.name, "matrix": linalg.fmt_matrix(M, F)}


def _emit(obj, args):
    print(json.dumps(obj, indent=2 if args.pretty else None, default=str))


def cmd_invariants(args):
    M, F = parse_matrix(_load_doc(args.matrix), None, args.field, args.tol)
    _emit(profile(M, F).to_dict(), args)
    return EXIT_OK


def cmd_classify(args):
    M, F = parse_matrix(_load_doc(args.matrix), None, args.field, args.tol)
    if len(M) != 3:
        raise DimensionMismatch("classification needs a 3x3 matrix")
    _emit(classify(M, F).to_dict(F), args)
    return EXIT_OK


def cmd_isomorphic(args):
    M1, F = parse_matrix(_load_doc(args.a), None, args.field, args.tol)
    M2, _ = parse_matrix(_load_doc(args.b), F, F.name, args.tol)
    if len(M1) != 3 or len(M2) != 3:
        raise DimensionMismatch("isomorphism needs two 3x3 matrices")
    _emit(are_isomorphic(M1, M2, F).to_dict(F), args)
    return EXIT_OK


def cmd_verify_change(args):
    M, F = parse_matrix(_load_doc(args.m), None, args.field, args.tol)
    P, _ = parse_matrix(_load_doc(args.p), F, F.name, args.tol)
    if len(P) != len(M):
        raise DimensionMismatch("M and P differ in size")
    natural = is_natural_change(M, P, F)
    out = {"natural": natural}
    ok = natural
    if natural:
        N = transform(M, P, F)
        out["result"] = linalg.fmt_matrix(N, F)
        if args.expect:
            E, _ = parse_matrix(_load_doc(args.expect), F, F.name, args.tol)
            out["matches_expected"] = linalg.mat_eq(N, E, F, scale=max(1.0, linalg.max_abs(E)))
            ok = out["matches_expected"]
    else:
        out["defect"] = [[list(pos), F.fmt(v)] for pos, v in orthogonality_defect(M, P, F)]
    _emit(out, args)
    return EXIT_OK if ok else EXIT_FAIL


def _select(filters, ids):
    if not filters:
        return list(ids)
    return [t for t in ids if t in filters]


def cmd_verify_tables(args):
    errata = args.errata if args.errata else True
    if args.no_errata:
        errata = False
    filters = set(args.tables or [])
    report = {}
    rows = []
    primed = _select(filters, tables.primed_ids())
    plain = _select(filters, tables.TABLE_IDS)
    orbit_ids = [t for t in plain if t != "T1"]
    if primed:
        rows += tables.verify_primed_tables(args.samples, args.seed, args.tol or 1e-9, errata, primed)
    if orbit_ids:
        rows += tables.verify_orbits(get_field("rational"), args.seed, errata, orbit_ids)
    if "T1" in plain:
        rows += tables.verify_table1()
    if filters and not primed and not plain:
        raise InputError(f"no table matches {sorted(filters)}")
    report["summary"] = tables.summarize(rows)
    report["rows"] = [r.to_dict() for r in rows if args.all or r.status != "pass"]
    report["counts"] = tables.family_counts()
    _emit(report, args)
    return EXIT_OK if report["summary"]["ok"] else EXIT_FAIL


def _common(top: bool):
    """Shared flags; on subcommands they default to SUPPRESS so flags given before the subcommand survive."""
    d = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", choices=["complex", "rational"], default=d("complex"))
    common.add_argument("--tol", type=float, default=d(None), help="relative tolerance of the complex backend")
    out = common.add_mutually_exclusive_group()
    out.add_argument("--json", dest="pretty", action="store_false", default=d(False), help="compact JSON (default)")
    out.add_argument("--pretty", dest="pretty", action="store_true", default=d(False), help="indented JSON")
    common.add_argument("--seed", type=int, default=d(0), help="seed for sampled verifications")
    common.add_argument("--errata", default=d(None), help="path of an errata file")
    return common


def build_parser():
    common = _common(False)
    p = argparse.ArgumentParser(prog="evoalg", description=__doc__.splitlines()[0], parents=[_common(True)])
    sub = p.add_subparsers(dest="cmd", required=True)
    s = sub.add_parser("invariants", parents=[common], help="invariant profile of a structure matrix")
    s.add_argument("matrix")
    s.set_defaults(func=cmd_invariants)
    s = sub.add_parser("classify", parents=[common], help="canonical type and witness")
    s.add_argument("matrix")
    s.set_defaults(func=cmd_classify)
    s = sub.add_parser("isomorphic", parents=[common], help="decide isomorphism of two algebras")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_isomorphic)
    s = sub.add_parser("verify-change", parents=[common], help="check a change of basis")
    s.add_argument("m")
    s.add_argument("p")
    s.add_argument("--expect", default=None, help="matrix the change should produce")
    s.set_defaults(func=cmd_verify_change)
    s = sub.add_parser("verify-tables", parents=[common], help="check the stored tables")
    s.add_argument("tables", nargs="*", help="table ids such as T5 or T19'")
    s.add_argument("--samples", type=int, default=5)
    s.add_argument("--no-errata", action="store_true", help="report printed cells only")
    s.add_argument("--all", action="store_true", help="list passing rows too")
    s.set_defaults(func=cmd_verify_tables)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, InputError, DimensionMismatch, ZeroDivisionError) as e:
        print(json.dumps({"error": type(e).__name__, "message": str(e)}), file=sys.stderr)
        return EXIT_INPUT
    except RootUnavailable as e:
        print(json.dumps({"error": "RootUnavailable", "message": str(e)}), file=sys.stderr)
        return EXIT_ROOT
    except ClassificationGap as e:
        print(json.dumps({"error": "ClassificationGap", "message": str(e)}), file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
