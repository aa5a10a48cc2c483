import json

import pytest

from psl3.characters import char_of_weight
from psl3.qseries import Series
from psl3.recursions import (
    TAGS,
    IdentityID,
    ParameterRangeError,
    admissible_identities,
    check_identity,
    identity_expr,
    residual,
    verify_all,
)
from psl3.rootdata import AffineHW


def test_shift1_level_one_vanishes():
    res = residual(IdentityID("SHIFT1", 1), 3, 8)
    assert res.is_zero()
    assert (res.max_charge, res.s_max) == (3, 8)


def test_four1_level_two_vanishes():
    res = residual(IdentityID("FOUR1", 2, 1), 3, 6)
    assert res.is_zero()
    # x1 q^2, x2 q^-2 substitutions reach below q^0
    assert res.s_min < 0


def test_four_needs_i_below_k():
    with pytest.raises(ParameterRangeError):
        IdentityID("FOUR1", 2, 2)
    with pytest.raises(ParameterRangeError):
        IdentityID("FOUR2", 1, 1)


@pytest.mark.parametrize("args", [
    ("SEQ1", 2, 0), ("SEQ1", 2, 3), ("INV2", 1, None), ("SHIFT1", 1, 1),
    ("LEVEL1A", 2, None), ("NOPE", 1, None), ("BOUNDARY", 0, None),
])
def test_range_errors(args):
    with pytest.raises(ParameterRangeError):
        IdentityID(*args)


def test_level_one_identity_set():
    ids = admissible_identities(1)
    names = [str(x) for x in ids]
    assert names == [
        "SHIFT1", "SHIFT2", "SEQ1(i=1)", "SEQ2(i=1)", "INV1(i=1)", "INV2(i=1)",
        "BOUNDARY", "LEVEL1A", "LEVEL1B",
    ]
    report = verify_all(1, 4, 8)
    assert report.passed
    assert not any(r.ident.tag.startswith("FOUR") for r in report.results)


@pytest.mark.parametrize("k", [2, 3])
def test_all_identities_vanish(k):
    report = verify_all(k, 4, 8)
    assert report.passed, [r.to_dict() for r in report.results if not r.passed]
    count = {tag: sum(r.ident.tag == tag for r in report.results) for tag in TAGS}
    assert count["FOUR1"] == count["FOUR2"] == k - 1
    assert count["SEQ1"] == count["INV2"] == k


def test_certified_window_reported():
    res = check_identity(IdentityID("FOUR2", 3, 1), 4, 8)
    assert res.passed
    c, lo, hi = res.certified
    assert c == 4 and hi == 8 and lo <= 0


def _tamper(hw, C, s_max):
    out = char_of_weight(hw, C, s_max)
    if hw == AffineHW(0, 1, 0) and C >= 1 and s_max >= 5:
        out = out + Series({(1, 0, 5): 1}, out.envelope)
    return out


def test_tampered_character_is_caught():
    report = verify_all(1, 3, 8, characters=_tamper)
    failed = {r.ident.tag for r in report.results if not r.passed}
    assert "SHIFT1" in failed and "BOUNDARY" in failed
    # identities not involving W(L1) still pass
    assert "LEVEL1A" not in failed and "SHIFT2" not in failed
    first = next(r for r in report.results if r.ident.tag == "SHIFT1").first_failure
    assert (first["r1"], first["r2"], first["s"], first["coeff"]) == (1, 0, 5, "1")


def test_report_json_schema():
    report = verify_all(2, 2, 4)
    doc = json.loads(report.to_json())
    assert doc["level"] == 2 and doc["window"] == {"C": 2, "sMax": 4}
    entry = next(e for e in doc["results"] if e["id"] == "FOUR1")
    assert entry["i"] == 1 and entry["pass"] is True and entry["firstFailure"] is None
    assert set(entry["certified"]) == {"C", "qWindow"}


def test_four_identities_clear_negative_powers():
    expr = identity_expr(IdentityID("FOUR1", 3, 1))
    assert min(t.x2 for t in expr.terms) == -2
