from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bellgames.numeric import (
    ONE,
    SQRT2,
    ZERO,
    QuadExt,
    ScalarParseError,
    as_scalar,
    compare,
    parse_scalar,
    render,
)

rationals = st.fractions(max_denominator=10**6).filter(lambda q: abs(q) < 10**6)
scalars = st.builds(QuadExt, rationals, rationals)


@pytest.mark.parametrize(
    "text, rat, root2",
    [
        ("1/2", Fraction(1, 2), 0),
        ("-3", -3, 0),
        ("0.30602", Fraction(30602, 100000), 0),
        ("1/2+1/4*sqrt2", Fraction(1, 2), Fraction(1, 4)),
        ("1/2 - 1/4 * sqrt2", Fraction(1, 2), Fraction(-1, 4)),
        ("1/8*sqrt2", 0, Fraction(1, 8)),
        ("-1/8*sqrt2", 0, Fraction(-1, 8)),
        ("+2", 2, 0),
        ("0.1+0.2*sqrt2", Fraction(1, 10), Fraction(1, 5)),
    ],
)
def test_parse_examples(text, rat, root2):
    assert parse_scalar(text) == QuadExt(rat, root2)


@pytest.mark.parametrize("bad", ["", "abc", "1/0", "1//2", "sqrt2", "1+sqrt2*2", "1e5", "1/2*sqrt2+1/3*sqrt2", "0x10"])
def test_parse_rejects(bad):
    with pytest.raises(ScalarParseError):
        parse_scalar(bad)


def test_parse_error_keeps_token():
    with pytest.raises(ScalarParseError) as info:
        parse_scalar("1/0")
    assert info.value.token == "1/0"


def test_decimals_are_exact():
    assert parse_scalar("0.1") + parse_scalar("0.2") == parse_scalar("0.3")


@pytest.mark.parametrize(
    "value, text",
    [
        (QuadExt(Fraction(1, 2)), "1/2"),
        (QuadExt(Fraction(1, 2), Fraction(1, 4)), "1/2+1/4*sqrt2"),
        (QuadExt(0, Fraction(-1, 8)), "-1/8*sqrt2"),
        (QuadExt(-1, Fraction(1, 2)), "-1+1/2*sqrt2"),
        (ZERO, "0"),
        (SQRT2, "1*sqrt2"),
    ],
)
def test_render_examples(value, text):
    assert render(value) == text


def test_compare_examples():
    assert compare(QuadExt(Fraction(1, 2), Fraction(1, 4)), Fraction(17, 20)) == 1
    assert compare(SQRT2 / 2, Fraction(7071, 10000)) == 1
    assert compare(SQRT2 / 2, Fraction(7072, 10000)) == -1
    x = QuadExt(3, -2)
    assert compare(x, x) == 0


def test_field_operations():
    x = QuadExt(1, 1)
    assert x * x.inverse() == ONE
    assert x * x == QuadExt(3, 2)
    assert SQRT2 ** 2 == 2
    assert x ** -2 == (x * x).inverse()
    assert (x - x) == ZERO and not (x - x)
    assert 1 / SQRT2 == SQRT2 / 2
    assert abs(QuadExt(1, -1)) == QuadExt(-1, 1)
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_interop_with_builtins():
    assert QuadExt(2) == 2 and QuadExt(Fraction(1, 3)) == Fraction(1, 3)
    assert hash(QuadExt(5)) == hash(5)
    assert 1 < SQRT2 < 2
    assert sorted([SQRT2, 1, Fraction(3, 2)]) == [1, SQRT2, Fraction(3, 2)]
    assert float(SQRT2) == pytest.approx(2 ** 0.5)


def test_as_scalar_rejects_floats_and_bools():
    with pytest.raises(TypeError):
        as_scalar(0.5)
    with pytest.raises(TypeError):
        as_scalar(True)


def test_to_decimal():
    assert str(SQRT2.to_decimal(10)) == "1.414213562"
    assert (SQRT2 / 2).approx(4) == "0.7071"


def _mp(x):
    return mpmath.mpf(x.rat.numerator) / x.rat.denominator + (
        mpmath.mpf(x.root2.numerator) / x.root2.denominator
    ) * mpmath.sqrt(2)


@settings(max_examples=1000, deadline=None)
@given(scalars, scalars)
def test_sign_matches_high_precision(x, y):
    with mpmath.workprec(60):
        approx = _mp(x) - _mp(y)
        # skip values too close to zero for 60 bits to resolve
        if approx != 0 and abs(approx) < mpmath.mpf(2) ** -40 * (1 + abs(_mp(x)) + abs(_mp(y))):
            return
        expected = 0 if approx == 0 else (1 if approx > 0 else -1)
    assert (x - y).sign() == expected


@given(scalars)
def test_render_round_trip(x):
    assert parse_scalar(render(x)) == x


@given(rationals, rationals)
def test_norm_identity(a, b):
    assert QuadExt(a, b) * QuadExt(a, -b) == a * a - 2 * b * b
    assert QuadExt(a, b).norm() == a * a - 2 * b * b


@given(scalars, scalars, scalars)
def test_field_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    if y:
        assert (x / y) * y == x


@given(scalars, scalars)
def test_order_is_total_and_consistent(x, y):
    assert (x < y) + (x == y) + (x > y) == 1
    assert (x < y) == ((y - x).sign() > 0)
