from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from octomagic.dyadic import DenominatorError, HalfRational, common_scale

dyadics = st.builds(HalfRational, st.integers(-10**6, 10**6), st.integers(0, 6))


def test_canonical_form():
    h = HalfRational(6, 2)
    assert (h.numerator, h.log2_denominator) == (3, 1)
    assert HalfRational(0, 5).log2_denominator == 0
    assert HalfRational(4, 1) == HalfRational(2)


@pytest.mark.parametrize("text,value", [("5", Fraction(5)), ("-7/2", Fraction(-7, 2)),
                                        ("3/4", Fraction(3, 4)), ("6/4", Fraction(3, 2))])
def test_parse(text, value):
    assert HalfRational.coerce(text).to_fraction() == value


def test_parse_rejects_non_dyadic():
    with pytest.raises(DenominatorError):
        HalfRational.coerce("1/3")
    with pytest.raises(ValueError):
        HalfRational.coerce("x")


def test_str_round_trip():
    for s in ("0", "-3", "5/2", "-1/4"):
        assert str(HalfRational.coerce(s)) == s


@given(dyadics, dyadics)
def test_arithmetic_matches_fraction(x, y):
    fx, fy = x.to_fraction(), y.to_fraction()
    assert (x + y).to_fraction() == fx + fy
    assert (x - y).to_fraction() == fx - fy
    assert (x * y).to_fraction() == fx * fy
    assert (x < y) == (fx < fy)
    assert (x == y) == (fx == fy)


@given(dyadics)
def test_hash_consistent_with_int(x):
    if x.is_integer():
        assert hash(x) == hash(int(x))
    assert hash(x) == hash(HalfRational.coerce(str(x)))


def test_immutable():
    with pytest.raises(AttributeError):
        HalfRational(1).numerator = 3


def test_common_scale():
    nums, k = common_scale(["1/2", 3, "-1/4"])
    assert (nums, k) == ([2, 12, -1], 2)
