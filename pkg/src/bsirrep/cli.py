"""
bsirrep command line.

    bsirrep classify P Q DIM [--json | --table] [--oracle] [--max-ell N]
    bsirrep construct P Q DIM ELL T C [--float] [-o FILE]
    bsirrep verify FILE
    bsirrep equiv FILE1 FILE2 [--json]
    bsirrep sweep PMAX QMAX DIMMAX [--dim-min D] [--max-ell N] [--seed S] [--jobs J]

Exit codes: 0 success, 1 check failure, 2 input error, 3 oracle disagreement,
4 budget exhausted.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import serialize as ser
from .classify import classify_dimension, find_intertwiner, with_oracle
from .errors import BSIrrepError, BudgetExceeded, InvalidSpec, StructureViolation
from .oracle import burnside_irreducible
from .repcore import (
    BSParams,
    RepSpec,
    a_power_scalar,
    build_matrices,
    verify_conjugation_law,
    verify_power_identity,
    verify_relation,
)
from .sweep import run_sweep

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT = 2
EXIT_DISAGREEMENT = 3
EXIT_BUDGET = 4


class InputError(Exception):
    pass


def _params(p: str, q: str) -> BSParams:
    try:
        return BSParams(int(p), int(q))
    except ValueError as exc:
        raise InputError(f"invalid parameters BS({p},{q}): {exc}") from exc


def _positive(text: str, name: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise InputError(f"{name} must be an integer, got {text!r}") from None
    if value < 1:
        raise InputError(f"{name} must be positive, got {value}")
    return value


def _load(path: str) -> ser.RepRecord:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        return ser.rep_record_from_json(data)
    except (OSError, json.JSONDecodeError, ser.FormatError, BSIrrepError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _emit(text: str, path: str | None = None):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- classify -----------------------------------------------------------------


def _report_table(report) -> str:
    head = (
        f"BS({report.params.p},{report.params.q})  dim {report.dim}  "
        f"modulus {report.modulus} = {report.factorization}  "
        f"{report.params.hopfian_status().value}"
    )
    cols = ["ell", "s", "irreducible", "orbit_size", "class_count", "orbit_reps"]
    if report.oracle_checked:
        cols.insert(3, "oracle")
    rows = []
    for r in report.records:
        reps = "-" if r.orbit_reps is None else ",".join(map(str, r.orbit_reps[:8]))
        if r.orbit_reps is not None and len(r.orbit_reps) > 8:
            reps += ",..."
        row = [str(r.ell), str(r.s), "yes" if r.irreducible else "no",
               str(r.orbit_size), str(r.class_count), reps]
        if report.oracle_checked:
            row.insert(3, "yes" if r.oracle else "no")
        rows.append(row)
    widths = [max(len(c), *(len(r[i]) for r in rows)) if rows else len(c)
              for i, c in enumerate(cols)]
    lines = [head, "  ".join(c.rjust(w) for c, w in zip(cols, widths))]
    lines += ["  ".join(v.rjust(w) for v, w in zip(r, widths)) for r in rows]
    lines.append(f"irreducible classes (per value of c^dim): {report.count_irreducibles()}")
    if report.truncated:
        lines.append(f"records truncated at ell <= {report.max_ell}")
    return "\n".join(lines) + "\n"


def cmd_classify(args) -> int:
    params = _params(args.p, args.q)
    dim = _positive(args.dim, "dim")
    try:
        report = classify_dimension(params, dim, max_ell=args.max_ell)
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    if args.oracle:
        report = with_oracle(report, burnside_irreducible)
    _emit(_report_table(report) if args.table else ser.dumps(ser.report_to_json(report)))
    if args.oracle:
        bad = [r for r in report.records if r.oracle != r.irreducible]
        for r in bad:
            print(f"oracle disagreement: {json.dumps(ser._record_to_json(r))}", file=sys.stderr)
        if bad:
            return EXIT_DISAGREEMENT
    return EXIT_OK


# -- construct / verify -------------------------------------------------------


def cmd_construct(args) -> int:
    params = _params(args.p, args.q)
    dim = _positive(args.dim, "dim")
    ell = _positive(args.ell, "ell")
    try:
        t = int(args.t)
        c = ser.parse_c_literal(args.c)
        spec = RepSpec.make(params, dim, ell, 0, c, strict=False)
        spec = RepSpec(params, dim, ell, t, spec.s, c).check()
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    record = ser.RepRecord.from_spec(spec, with_floats=args.float)
    if not verify_relation(record.pair, params):
        print("internal error: constructed pair violates the relation", file=sys.stderr)
        return EXIT_CHECK_FAILED
    _emit(ser.dumps(ser.rep_record_to_json(record)), args.output)
    return EXIT_OK


def verification_lines(record: ser.RepRecord) -> tuple[list[tuple[str, bool, str]], bool]:
    """(name, passed, detail) per structural check, plus the irreducibility verdict."""
    spec, pair = record.spec, record.pair
    checks = []
    bad = spec.violations()
    checks.append(("spec invariants", not bad, "; ".join(bad)))
    try:
        canonical = build_matrices(spec, strict=False).change_order(pair.order) == pair
    except (BSIrrepError, ValueError):
        canonical = False
    checks.append(("canonical form", canonical, ""))
    checks.append(("order of B divides ell", pair.b_period is not None, ""))
    checks.append(("relation A B^p = B^q A", verify_relation(pair, spec.params), ""))
    try:
        conj = verify_conjugation_law(pair, spec.s)
    except BSIrrepError:
        conj = False
    checks.append((f"conjugation A^-1 B A = B^{spec.s}", conj, ""))
    failed_k = []
    for k in range(-3, 4):
        try:
            if not verify_power_identity(pair, spec.params, k):
                failed_k.append(k)
        except BSIrrepError:
            failed_k.append(k)
    checks.append(("power identity B^(p^k) = A^-k B^(q^k) A^k, |k| <= 3", not failed_k,
                   f"fails for k in {failed_k}" if failed_k else ""))
    try:
        scalar = a_power_scalar(pair)
        checks.append((f"A^{pair.dim} is scalar", True, f"c^dim = {scalar}"))
    except StructureViolation as exc:
        checks.append((f"A^{pair.dim} is scalar", False, str(exc)))
    try:
        irreducible = burnside_irreducible(pair)
    except BSIrrepError:
        irreducible = False
    return checks, irreducible


def cmd_verify(args) -> int:
    record = _load(args.file)
    checks, irreducible = verification_lines(record)
    for name, passed, detail in checks:
        line = f"{'pass' if passed else 'FAIL'}  {name}"
        print(line + (f"  ({detail})" if detail else ""))
    print(f"irreducible: {'true' if irreducible else 'false'}")
    return EXIT_OK if all(p for _, p, _ in checks) else EXIT_CHECK_FAILED


# -- equiv --------------------------------------------------------------------


def cmd_equiv(args) -> int:
    r1, r2 = _load(args.file1), _load(args.file2)
    s1, s2 = r1.spec, r2.spec
    if (s1.params, s1.dim) != (s2.params, s2.dim):
        raise InputError(
            f"cannot compare {s1.params} dim {s1.dim} with {s2.params} dim {s2.dim}"
        )
    X = find_intertwiner(r1.pair, r2.pair)
    if args.json:
        out = {"verdict": "equivalent" if X is not None else "inequivalent",
               "witness": None if X is None else ser.matrix_to_json(X)}
        _emit(ser.dumps(out))
    elif X is None:
        print("inequivalent")
    else:
        print("equivalent")
        print("witness X (X A1 = A2 X, X B1 = B2 X):")
        for row in X.to_rows():
            print("  [" + ", ".join(str(x) for x in row) + "]")
    return EXIT_OK if X is not None else EXIT_CHECK_FAILED


# -- sweep --------------------------------------------------------------------


def cmd_sweep(args) -> int:
    pmax = _positive(args.pmax, "pmax")
    qmax = _positive(args.qmax, "qmax")
    dim_max = _positive(args.dimmax, "dimmax")
    result = run_sweep(pmax, qmax, dim_max, dim_min=args.dim_min, max_ell=args.max_ell,
                       seed=args.seed, property_fraction=args.property_fraction,
                       jobs=args.jobs, inject_fault=args.inject_fault)
    n = len(result.checks)
    irr = sum(1 for c in result.checks if c.burnside)
    print(f"{n} records checked, {len(result.disagreements)} disagreements")
    print(f"irreducible: {irr}  reducible: {n - irr}")
    print(f"identity checks: {result.property_checked} records, "
          f"{len(result.property_failures)} failures")
    for c in result.disagreements:
        print(f"counterexample: {c.describe()}")
    for c, failure in result.property_failures:
        print(f"identity failure: {c.describe()}: {failure}")
    if result.budget_failures:
        print("PARTIAL: budget exhausted for")
        for line in result.budget_failures:
            print(f"  {line}")
    if result.disagreements or result.property_failures:
        return EXIT_DISAGREEMENT
    if result.budget_failures:
        return EXIT_BUDGET
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bsirrep",
        description="Irreducible representations of Baumslag-Solitar groups BS(p, q).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify DIM-dimensional irreducibles")
    c.add_argument("p")
    c.add_argument("q")
    c.add_argument("dim")
    fmt = c.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON report (default)")
    fmt.add_argument("--table", action="store_true", help="ASCII table")
    c.add_argument("--oracle", action="store_true",
                   help="cross-check every record with the Burnside oracle")
    c.add_argument("--max-ell", type=int, default=None, help="skip divisors above this")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("construct", help="build the canonical matrices")
    for name in ("p", "q", "dim", "ell", "t"):
        c.add_argument(name)
    c.add_argument("c", help='scalar: "3/2", "zeta(8)^3", products joined by "*"')
    c.add_argument("--float", action="store_true", help="add a float rendering")
    c.add_argument("-o", "--output", default=None)
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("verify", help="check a representation record")
    c.add_argument("file")
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("equiv", help="decide equivalence of two records")
    c.add_argument("file1")
    c.add_argument("file2")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_equiv)

    c = sub.add_parser("sweep", help="criterion/oracle agreement sweep")
    c.add_argument("pmax")
    c.add_argument("qmax")
    c.add_argument("dimmax")
    c.add_argument("--dim-min", type=int, default=1)
    c.add_argument("--max-ell", type=int, default=2000)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--property-fraction", type=float, default=0.1)
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    c.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvalidSpec as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
