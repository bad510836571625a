import json
from fractions import Fraction

import pytest

from qgenocchi.algebra import PolyXY, RatFuncQ
from qgenocchi.audit import (
    CLASSICAL,
    IDENTITIES,
    SYMBOLIC,
    RationalRing,
    audit_all,
    compare_with_expectations,
    expectation_text,
    load_expectations,
    report_json,
    residual_cor8,
    residual_cor10,
    residual_distribution,
    residual_thm2,
    residual_thm3,
    residual_thm4,
    residual_thm7,
    residual_thm9,
)

q = RatFuncQ.q()
x = PolyXY.x()


@pytest.fixture(scope="module")
def records():
    return audit_all(10)


def test_small_cases():
    assert residual_thm2(0).is_zero()
    assert residual_thm3(0).is_zero()
    assert residual_thm4(1).is_zero()
    for n in range(11):
        assert (residual_thm4(n) - residual_thm3(n)).is_zero()


def test_thm7_printed_n0():
    r = residual_thm7(0, "printed")
    assert r == x * (2 * (1 - q) / q)
    assert r.specialize_q(1).is_zero()


def test_cor8_printed():
    assert residual_cor8(0, "printed").is_zero()
    assert not residual_cor8(1, "printed").is_zero()


def test_thm9_variants():
    assert residual_thm9(0, "corrected").is_zero()
    assert not residual_thm9(0, "printed").is_zero()
    for n in range(11):
        for variant in ("printed", "printed-derivation"):
            assert residual_thm9(n, variant).specialize_q(1).is_zero()


def test_cor10_small():
    assert residual_cor10(0, CLASSICAL).is_zero()
    assert residual_cor10(1, CLASSICAL).is_zero()


def test_distribution_examples():
    assert residual_distribution(1, 3, "corrected").is_zero()
    r = residual_distribution(1, 3, "printed")
    assert r == PolyXY.constant(2 / (1 + q) - (1 - q + q * q) * 2 / (1 + q))
    for n in range(6):
        assert residual_distribution(n, 1, "printed").is_zero()


def test_distribution_rejects_even_d():
    with pytest.raises(ValueError):
        residual_distribution(2, 2, "corrected")


def test_audit_n_max_guard():
    with pytest.raises(ValueError):
        audit_all(1)


def test_verdict_matches_residual(records):
    for r in records:
        assert (r.verdict == "holds") == (not r.failing_n)
        if r.verdict == "holds" and r.residual is not None:
            assert r.residual.is_zero()


def test_expected_records(records):
    by_id = {r.identity_id: r.verdict for r in records}
    assert by_id["thm1"] == "holds"
    assert by_id["thm7-printed"] == "fails"
    assert by_id["thm7-corrected"] == "holds"
    assert by_id["distribution-corrected d=3"] == "holds"


def test_expectation_table_byte_for_byte(records):
    assert expectation_text(records) == load_expectations()
    assert compare_with_expectations(records) == []


def test_mismatch_is_reported(records):
    rows = json.loads(load_expectations())
    rows[0]["verdict"] = "fails"
    problems = compare_with_expectations(records, json.dumps(rows))
    assert problems == ["thm1: expected fails, got holds"]


def test_report_json_roundtrip(records):
    text = report_json(records)
    assert json.dumps(json.loads(text), indent=2, ensure_ascii=False) + "\n" == text


# residual specialized at (q, x, y) = (1/2, 3, 2) against pure Fraction evaluation
POINT = (Fraction(1, 2), Fraction(3), Fraction(2))


@pytest.mark.parametrize(
    "identity", [i for i in IDENTITIES if not i.numeric], ids=lambda i: i.identity_id
)
def test_symbolic_numeric_consistency(identity):
    q0, x0, y0 = POINT
    ring = CLASSICAL if identity.classical else SYMBOLIC
    point_q = Fraction(1) if identity.classical else q0
    numeric = RationalRing(point_q, x0, y0)
    for n in range(identity.n_min, 7):
        sym = PolyXY.coerce(identity.residual(n, ring))
        assert sym.evaluate(x0, y0, point_q) == identity.residual(n, numeric)
