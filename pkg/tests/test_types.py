import pytest

from binsum.libs.types import (INFINITY, CheckFailure, CheckKind, SplitRecord, SumRange, SumSpec, TheoremRecord,
                               Valuation)


# ---------------------------------------------------------------------------
# Valuation ordering
# ---------------------------------------------------------------------------

def test_infinity_exceeds_every_finite_value():
    assert INFINITY > Valuation(10 ** 6)
    assert INFINITY >= 0
    assert INFINITY > 10 ** 100
    assert not INFINITY < 5


def test_finite_compares_with_plain_ints():
    v = Valuation(4)
    assert v == 4
    assert v >= 3
    assert v < 5
    assert not v >= 5


def test_negative_int_never_equals_a_valuation():
    assert Valuation(0) != -1
    assert not Valuation(0) < -1


def test_infinity_is_a_singleton_value():
    assert Valuation.infinity() is INFINITY
    assert Valuation(None) == INFINITY
    assert hash(Valuation(None)) == hash(INFINITY)
    assert INFINITY.is_infinite
    assert not Valuation(0).is_infinite


def test_min_over_mixed_valuations():
    assert min([INFINITY, Valuation(3), Valuation(1)]) == 1
    assert min([INFINITY, INFINITY]) == INFINITY


def test_negative_valuation_rejected():
    with pytest.raises(ValueError):
        Valuation(-1)


def test_int_of_infinity_raises():
    assert int(Valuation(7)) == 7
    with pytest.raises(OverflowError):
        int(INFINITY)


# ---------------------------------------------------------------------------
# Slack
# ---------------------------------------------------------------------------

def test_minus_bound():
    assert Valuation(4).minus(3) == 1
    assert Valuation(3).minus(3) == 0
    assert INFINITY.minus(10 ** 9) is INFINITY


def test_minus_below_bound_raises():
    with pytest.raises(ValueError):
        Valuation(2).minus(3)


# ---------------------------------------------------------------------------
# Wire form
# ---------------------------------------------------------------------------

def test_json_form():
    assert INFINITY.to_json() == "inf"
    assert Valuation(12).to_json() == 12
    assert Valuation.from_json("inf") is INFINITY
    assert Valuation.from_json(12) == 12
    assert str(INFINITY) == "inf"
    assert str(Valuation(3)) == "3"


@pytest.mark.parametrize("raw", ["12", 1.5, True, None, "Infinity"])
def test_json_form_rejects_other_shapes(raw):
    with pytest.raises(ValueError):
        Valuation.from_json(raw)


# ---------------------------------------------------------------------------
# SumSpec
# ---------------------------------------------------------------------------

def test_sum_spec_defaults_to_full_range():
    assert SumSpec(3, 2).range is SumRange.FULL


@pytest.mark.parametrize("n, exponent", [(-1, 0), (0, -1)])
def test_sum_spec_rejects_negatives(n, exponent):
    with pytest.raises(ValueError):
        SumSpec(n, exponent)


# ---------------------------------------------------------------------------
# TheoremRecord
# ---------------------------------------------------------------------------

def test_record_build_pass():
    rec = TheoremRecord.build(n=2, r=1, f_value=16, nu2=Valuation(4), bound=3)
    assert rec.passed
    assert rec.slack == 1
    assert rec.consistent()


def test_record_build_zero_f_has_infinite_slack():
    rec = TheoremRecord.build(n=0, r=3, f_value=0, nu2=INFINITY, bound=0)
    assert rec.passed
    assert rec.slack is INFINITY


def test_record_build_fail_has_no_slack():
    rec = TheoremRecord.build(n=5, r=5, f_value=2, nu2=Valuation(1), bound=8)
    assert not rec.passed
    assert rec.slack is None
    assert rec.consistent()


def test_inconsistent_record_detected():
    rec = TheoremRecord(n=2, r=1, f_value=16, nu2=Valuation(4), bound=3, slack=Valuation(2), passed=True)
    assert not rec.consistent()


def test_split_record_passed_needs_both():
    assert SplitRecord(3, 1, 4, 5, True, True).passed
    assert not SplitRecord(3, 1, 4, 5, True, False).passed


# ---------------------------------------------------------------------------
# CheckKind
# ---------------------------------------------------------------------------

def test_parse_all():
    assert CheckKind.parse_list("all") == tuple(CheckKind)


def test_parse_list_is_ordered_and_deduplicated():
    kinds = CheckKind.parse_list("shapiro, theorem,shapiro")
    assert kinds == (CheckKind.THEOREM, CheckKind.SHAPIRO)


@pytest.mark.parametrize("text", ["", " , ", "theorem,bogus"])
def test_parse_list_rejects(text):
    with pytest.raises(ValueError):
        CheckKind.parse_list(text)


def test_unknown_check_message_lists_known_names():
    with pytest.raises(ValueError, match="guo-zeng"):
        CheckKind.parse_list("nope")


def test_failure_sort_key_orders_by_cell_then_kind():
    a = CheckFailure(CheckKind.SHAPIRO, 1, 0, "x")
    b = CheckFailure(CheckKind.THEOREM, 1, 0, "x")
    c = CheckFailure(CheckKind.THEOREM, 0, 5, "x")
    assert sorted([a, b, c], key=CheckFailure.sort_key) == [c, b, a]
