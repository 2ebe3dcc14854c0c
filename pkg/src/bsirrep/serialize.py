"""
JSON forms of cyclotomic numbers, representation records and classification
reports, plus the c-literal grammar used on the command line.

Every integer is written as a decimal string (q^dim - p^dim outgrows 53-bit
floats quickly). Cyclotomic numbers are objects
{"order": L, "coeffs": [{"num": "...", "den": "..."}, ...]} holding the
power-basis coordinates.
"""
from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Context
from fractions import Fraction

from . import numtheory as nt
from .classify import ClassificationReport, ClassRecord
from .cyclotomic import CycNum, change_order, rational, zeta
from .exactlinalg import CycMatrix
from .repcore import BSParams, MatrixPair, RepSpec, build_matrices

FLOAT_DIGITS = 15
_FLOAT_CONTEXT = Context(prec=FLOAT_DIGITS, rounding=ROUND_HALF_EVEN)


class FormatError(ValueError):
    """Malformed JSON document or literal."""


def _int(value, what: str) -> int:
    if not isinstance(value, str) or not re.fullmatch(r"-?\d+", value):
        raise FormatError(f"{what} must be a decimal string, got {value!r}")
    return int(value)


# -- scalars ------------------------------------------------------------------


def cyc_to_json(x: CycNum) -> dict:
    return {
        "order": x.order,
        "coeffs": [{"num": str(c.numerator), "den": str(c.denominator)} for c in x.coeffs],
    }


def cyc_from_json(data) -> CycNum:
    try:
        order = data["order"]
        coeffs = data["coeffs"]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"not a cyclotomic literal: {data!r}") from exc
    if isinstance(order, bool) or not isinstance(order, int) or order < 1:
        raise FormatError(f"order must be a positive integer, got {order!r}")
    if not isinstance(coeffs, list) or len(coeffs) != nt.euler_phi(order):
        raise FormatError(f"order {order} needs exactly {nt.euler_phi(order)} coefficients")
    vals = []
    for c in coeffs:
        try:
            num, den = _int(c["num"], "num"), _int(c["den"], "den")
        except (KeyError, TypeError) as exc:
            raise FormatError(f"bad coefficient {c!r}") from exc
        if den < 1 or math.gcd(num, den) != 1:
            raise FormatError(f"coefficient {num}/{den} is not in lowest terms")
        vals.append(Fraction(num, den))
    return CycNum(order, vals)


def round_float(x: float) -> float:
    """Round to 15 significant digits, ties to even."""
    return float(_FLOAT_CONTEXT.create_decimal(x))


def float_render(M: CycMatrix) -> list[list[dict]]:
    return [[{"re": round_float(z.real), "im": round_float(z.imag)} for z in row]
            for row in M.to_complex()]


def matrix_to_json(M: CycMatrix) -> list[list[dict]]:
    return [[cyc_to_json(x) for x in M.row(i)] for i in range(M.rows)]


def matrix_from_json(rows) -> CycMatrix:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise FormatError("matrix must be a nonempty array of arrays")
    ents = [[cyc_from_json(x) for x in r] for r in rows]
    orders = {x.order for r in ents for x in r}
    if len(orders) != 1:
        raise FormatError(f"matrix entries have mixed orders {sorted(orders)}")
    try:
        return CycMatrix.from_rows(ents, orders.pop())
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


# -- c literals ---------------------------------------------------------------

_FACTOR = re.compile(r"\s*(?:zeta\(\s*(\d+)\s*\)(?:\^\s*(-?\d+))?|(-?\d+)(?:\s*/\s*(\d+))?)\s*")


def parse_c_literal(text: str) -> CycNum:
    """Parse "3/2", "zeta(8)", "zeta(8)^3" and products of these joined by "*"."""
    rat = Fraction(1)
    roots: list[tuple[int, int]] = []
    for part in text.split("*"):
        m = _FACTOR.fullmatch(part)
        if m is None:
            raise FormatError(f"cannot parse c literal {text!r}")
        if m.group(1) is not None:
            L = int(m.group(1))
            if L < 1:
                raise FormatError("zeta order must be positive")
            roots.append((L, int(m.group(2)) if m.group(2) else 1))
        else:
            den = int(m.group(4)) if m.group(4) else 1
            if den == 0:
                raise FormatError("zero denominator in c literal")
            rat *= Fraction(int(m.group(3)), den)
    order = math.lcm(*(L for L, _ in roots)) if roots else 1
    value = rational(rat, order)
    for L, k in roots:
        value = value * change_order(zeta(L, k), order)
    return value


# -- representation records ------------------------------------------------------


@dataclass(frozen=True)
class RepRecord:
    spec: RepSpec
    pair: MatrixPair
    with_floats: bool = False

    @classmethod
    def from_spec(cls, spec: RepSpec, with_floats: bool = False) -> RepRecord:
        return cls(spec, build_matrices(spec), with_floats)


def rep_record_to_json(rec: RepRecord) -> dict:
    spec = rec.spec
    out = {
        "p": str(spec.params.p),
        "q": str(spec.params.q),
        "dim": str(spec.dim),
        "ell": str(spec.ell),
        "t": str(spec.t),
        "s": str(spec.s),
        "c": cyc_to_json(spec.c),
        "matrices": {"A": matrix_to_json(rec.pair.A), "B": matrix_to_json(rec.pair.B)},
    }
    if rec.with_floats:
        out["float_render"] = {"A": float_render(rec.pair.A), "B": float_render(rec.pair.B)}
    return out


def rep_record_from_json(data) -> RepRecord:
    """Parse a record; spec invariants are not enforced (that is `verify`'s job)."""
    if not isinstance(data, dict):
        raise FormatError("representation record must be a JSON object")
    try:
        params = BSParams(_int(data["p"], "p"), _int(data["q"], "q"))
        spec = RepSpec(params, _int(data["dim"], "dim"), _int(data["ell"], "ell"),
                       _int(data["t"], "t"), _int(data["s"], "s"), cyc_from_json(data["c"]))
        A = matrix_from_json(data["matrices"]["A"])
        B = matrix_from_json(data["matrices"]["B"])
    except (KeyError, TypeError) as exc:
        raise FormatError(f"missing or malformed field: {exc}") from exc
    except FormatError:
        raise
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    if A.shape != (spec.dim, spec.dim) or B.shape != (spec.dim, spec.dim):
        raise FormatError(f"matrices must be {spec.dim}x{spec.dim}")
    if A.order != B.order:
        raise FormatError(f"A and B have different orders {A.order} and {B.order}")
    return RepRecord(spec, MatrixPair(A, B, spec.ell), "float_render" in data)


# -- reports ------------------------------------------------------------------


def _record_to_json(rec: ClassRecord) -> dict:
    out = {
        "ell": str(rec.ell),
        "s": str(rec.s),
        "irreducible": rec.irreducible,
        "orbit_size": str(rec.orbit_size),
        "class_count": str(rec.class_count),
        "orbit_reps": None if rec.orbit_reps is None else [str(t) for t in rec.orbit_reps],
    }
    if rec.oracle is not None:
        out["oracle_irreducible"] = rec.oracle
    return out


def _record_from_json(data) -> ClassRecord:
    reps = data["orbit_reps"]
    return ClassRecord(
        ell=_int(data["ell"], "ell"),
        s=_int(data["s"], "s"),
        orbit_reps=None if reps is None else tuple(_int(t, "orbit rep") for t in reps),
        irreducible=bool(data["irreducible"]),
        orbit_size=_int(data["orbit_size"], "orbit_size"),
        class_count=_int(data["class_count"], "class_count"),
        oracle=data.get("oracle_irreducible"),
    )


def report_to_json(report: ClassificationReport) -> dict:
    return {
        "params": {
            "p": str(report.params.p),
            "q": str(report.params.q),
            "sign_normalized": report.params.sign_flipped,
        },
        "dim": str(report.dim),
        "modulus": str(report.modulus),
        "factorization": [{"prime": str(p), "exponent": str(e)} for p, e in report.factorization],
        "records": [_record_to_json(r) for r in report.records],
        "count_irreducibles": str(report.count_irreducibles()),
        "hopfian_status": report.params.hopfian_status().value,
        "max_ell": None if report.max_ell is None else str(report.max_ell),
        "truncated": report.truncated,
        "oracle_checked": report.oracle_checked,
    }


def report_from_json(data) -> ClassificationReport:
    try:
        params = BSParams(_int(data["params"]["p"], "p"), _int(data["params"]["q"], "q"))
        fac = nt.Factorization(tuple(
            (_int(f["prime"], "prime"), _int(f["exponent"], "exponent"))
            for f in data["factorization"]
        ))
        records = tuple(_record_from_json(r) for r in data["records"])
        max_ell = data.get("max_ell")
        return ClassificationReport(
            params=params,
            dim=_int(data["dim"], "dim"),
            modulus=_int(data["modulus"], "modulus"),
            factorization=fac,
            records=records,
            max_ell=None if max_ell is None else _int(max_ell, "max_ell"),
            truncated=bool(data.get("truncated", False)),
            oracle_checked=bool(data.get("oracle_checked", False)),
            hopfian=params.hopfian_status(),
        )
    except (KeyError, TypeError) as exc:
        raise FormatError(f"missing or malformed field: {exc}") from exc


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
