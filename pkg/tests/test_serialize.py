from __future__ import annotations

import json
import math
import random
from fractions import Fraction
from pathlib import Path

import jsonschema
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bsirrep import serialize as ser
from bsirrep.classify import classify_dimension, with_oracle
from bsirrep.cyclotomic import CycNum, rational, zeta
from bsirrep.oracle import burnside_irreducible
from bsirrep.repcore import BSParams, RepSpec

from conftest import coprime_params, random_cyc

DOCS = Path(__file__).resolve().parents[1] / "docs"


def _schema(name):
    return json.loads((DOCS / name).read_text(encoding="utf-8"))


REP_SCHEMA = _schema("rep_record.schema.json")
REPORT_SCHEMA = _schema("report.schema.json")


@pytest.mark.parametrize("text, value", [
    ("1", rational(1)),
    ("3/2", rational(Fraction(3, 2))),
    ("-5/7", rational(Fraction(-5, 7))),
    ("zeta(8)", zeta(8)),
    ("zeta(8)^3", zeta(8, 3)),
    ("zeta(8)^-1", zeta(8, 7)),
    ("3/2*zeta(8)^3", zeta(8, 3).scale(Fraction(3, 2))),
    ("zeta(4) * zeta(6)", zeta(12, 5)),
    ("2 * 3", rational(6)),
])
def test_c_literals(text, value):
    assert ser.parse_c_literal(text) == value


@pytest.mark.parametrize("text", ["", "zeta", "zeta(0)", "1/0", "x", "2**3", "zeta(8)^"])
def test_bad_c_literals(text):
    with pytest.raises(ser.FormatError):
        ser.parse_c_literal(text)


def test_integers_are_strings():
    spec = RepSpec.make(BSParams(2, 5), 3, 117, 5)
    data = ser.rep_record_to_json(ser.RepRecord.from_spec(spec))
    for key in ("p", "q", "dim", "ell", "t", "s"):
        assert isinstance(data[key], str)
    report = ser.report_to_json(classify_dimension(BSParams(2, 5), 3))
    assert report["modulus"] == "117"
    assert report["factorization"] == [{"prime": "3", "exponent": "2"},
                                       {"prime": "13", "exponent": "1"}]


def test_large_modulus_is_exact():
    report = classify_dimension(BSParams(5, 7), 20, max_ell=50)
    data = json.loads(ser.dumps(ser.report_to_json(report)))
    assert int(data["modulus"]) == 7**20 - 5**20
    jsonschema.validate(data, REPORT_SCHEMA)


def test_round_float():
    assert ser.round_float(0.1234567890123456789) == 0.123456789012346
    assert ser.round_float(1 / 3) == 0.333333333333333
    assert ser.round_float(-0.0) == 0.0


def test_float_render():
    spec = RepSpec.make(BSParams(2, 5), 3, 9, 1)
    rec = ser.RepRecord.from_spec(spec, with_floats=True)
    data = ser.rep_record_to_json(rec)
    jsonschema.validate(data, REP_SCHEMA)
    z = data["float_render"]["B"][0][0]
    assert z == {"re": ser.round_float(math.cos(2 * math.pi / 9)),
                 "im": ser.round_float(math.sin(2 * math.pi / 9))}


def _random_spec(rng: random.Random) -> RepSpec:
    while True:
        params = coprime_params(rng)
        dim = rng.randint(1, 4)
        m = abs(params.modulus(dim))
        ells = [d for d in range(1, min(m, 200) + 1) if m % d == 0 and math.gcd(d, params.q) == 1]
        if ells:
            break
    ell = rng.choice(ells)
    units = [t for t in range(ell) if math.gcd(t, ell) == 1] or [0]
    c = random_cyc(rng, rng.choice([1, 3, 4, 5]))
    if not c:
        c = rational(1)
    return RepSpec.make(params, dim, ell, rng.choice(units), c)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9), st.booleans())
def test_rep_record_round_trip(seed, floats):
    spec = _random_spec(random.Random(seed))
    rec = ser.RepRecord.from_spec(spec, with_floats=floats)
    data = json.loads(ser.dumps(ser.rep_record_to_json(rec)))
    jsonschema.validate(data, REP_SCHEMA)
    back = ser.rep_record_from_json(data)
    assert back.spec == spec
    assert back.pair == rec.pair
    assert back.with_floats == floats
    assert ser.rep_record_to_json(back) == data


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9), st.booleans())
def test_report_round_trip(seed, oracle):
    rng = random.Random(seed)
    params = coprime_params(rng, 9)
    max_ell = 100 if oracle else rng.choice([None, 100])
    report = classify_dimension(params, rng.randint(1, 5), max_ell=max_ell)
    if oracle:
        report = with_oracle(report, burnside_irreducible)
    data = json.loads(ser.dumps(ser.report_to_json(report)))
    jsonschema.validate(data, REPORT_SCHEMA)
    assert [int(r["ell"]) for r in data["records"]] == sorted(int(r["ell"]) for r in data["records"])
    back = ser.report_from_json(data)
    assert back == report
    assert ser.report_to_json(back) == data


def test_cyc_literal_validation():
    good = ser.cyc_to_json(zeta(5, 2) + Fraction(1, 3))
    assert ser.cyc_from_json(good) == zeta(5, 2) + Fraction(1, 3)
    for bad in (
        {"order": 5, "coeffs": good["coeffs"][:3]},
        {"order": 0, "coeffs": []},
        {"order": 1, "coeffs": [{"num": 1, "den": "1"}]},
        {"order": 1, "coeffs": [{"num": "2", "den": "4"}]},
        {"order": 1, "coeffs": [{"num": "2", "den": "0"}]},
        {"coeffs": []},
        "zeta(5)",
    ):
        with pytest.raises(ser.FormatError):
            ser.cyc_from_json(bad)


def test_rep_record_format_errors():
    spec = RepSpec.make(BSParams(2, 5), 3, 9, 1)
    data = ser.rep_record_to_json(ser.RepRecord.from_spec(spec))
    for mutate in (
        lambda d: d.pop("matrices"),
        lambda d: d.__setitem__("p", 2),
        lambda d: d.__setitem__("q", "4"),
        lambda d: d["matrices"]["A"].pop(),
        lambda d: d["matrices"].__setitem__("B", [[ser.cyc_to_json(rational(1, 3))] * 3] * 3),
    ):
        broken = json.loads(json.dumps(data))
        mutate(broken)
        with pytest.raises(ser.FormatError):
            ser.rep_record_from_json(broken)
    with pytest.raises(ser.FormatError):
        ser.rep_record_from_json([])


def test_parsed_record_keeps_spec_violations():
    # parsing does not validate; verify reports the problem instead
    spec = RepSpec.make(BSParams(2, 5), 3, 9, 1)
    data = ser.rep_record_to_json(ser.RepRecord.from_spec(spec))
    data["ell"] = "7"
    rec = ser.rep_record_from_json(data)
    assert any("existence" in v for v in rec.spec.violations())


def test_cycnum_json_matches_coefficients(rng):
    for _ in range(20):
        x = random_cyc(rng, rng.choice([1, 7, 12, 30]))
        data = ser.cyc_to_json(x)
        assert [Fraction(int(c["num"]), int(c["den"])) for c in data["coeffs"]] == list(x.coeffs)
        assert isinstance(ser.cyc_from_json(data), CycNum)
