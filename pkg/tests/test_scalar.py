from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sedgeo.errors import DegreeOverflow, NonAffineInR, NotRepresentable
from sedgeo.scalar import (
    SQRT2,
    SQRT3,
    SQRT6,
    QuadScalar,
    RAffine,
    format_rational,
    parse_rational,
    quad_sqrt,
    raffine_eval,
    rational_sqrt,
)

small = st.fractions(min_value=-20, max_value=20, max_denominator=12)
quads = st.builds(QuadScalar, small, small, small, small)


def test_radical_products():
    assert SQRT2 * SQRT2 == 2
    assert SQRT3 * SQRT3 == 3
    assert SQRT2 * SQRT3 == SQRT6
    assert SQRT6 * SQRT6 == 6
    assert SQRT6 * SQRT2 == 2 * SQRT3


def test_sqrt3_over_6_squared():
    s = SQRT3 * Fraction(1, 6)
    assert s * s == Fraction(1, 12)


@given(quads, quads, quads)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@given(quads)
def test_inverse(a):
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            a.inverse()
    else:
        assert a * a.inverse() == 1
        assert (1 / a) * a == 1


@given(quads)
def test_sign_matches_float(a):
    f = float(a)
    if abs(f) > 1e-6:
        assert a.sign() == (1 if f > 0 else -1)
    if a.is_zero():
        assert a.sign() == 0


def test_sign_near_cancellation():
    # 577^2 - 2*408^2 = 1 and 1393^2 - 2*985^2 = -1: tiny values of opposite sign
    assert QuadScalar(577, -408).sign() == 1
    assert QuadScalar(1393, -985).sign() == -1
    assert QuadScalar(-1393, 985).sign() == 1
    # sqrt2 + sqrt3 - sqrt6 - 1/2 > 0 (about 0.196)
    y = SQRT2 + SQRT3 - SQRT6 - Fraction(1, 2)
    assert y > 0


def test_rational_hash_agrees_with_fraction():
    assert hash(QuadScalar(Fraction(1, 3))) == hash(Fraction(1, 3))
    assert QuadScalar(Fraction(1, 3)) == Fraction(1, 3)
    assert {QuadScalar(2): "a"}[2] == "a"


@pytest.mark.parametrize(
    "q, expected",
    [
        (Fraction(4), QuadScalar(2)),
        (Fraction(1, 2), SQRT2 * Fraction(1, 2)),
        (Fraction(3), SQRT3),
        (Fraction(3, 2), SQRT6 * Fraction(1, 2)),
        (Fraction(6), SQRT6),
        (Fraction(9, 4), QuadScalar(Fraction(3, 2))),
        (Fraction(1, 3), SQRT3 * Fraction(1, 3)),
        (Fraction(4, 9), QuadScalar(Fraction(2, 3))),
        (Fraction(1, 6), SQRT6 * Fraction(1, 6)),
    ],
)
def test_quad_sqrt(q, expected):
    root = quad_sqrt(q)
    assert root == expected
    assert root * root == q
    assert root.sign() > 0


@pytest.mark.parametrize("q", [Fraction(5), Fraction(9, 5), Fraction(-1), Fraction(7, 3)])
def test_quad_sqrt_not_representable(q):
    with pytest.raises(NotRepresentable):
        quad_sqrt(q)


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 16)) == Fraction(3, 4)
    with pytest.raises(NotRepresentable):
        rational_sqrt(Fraction(2))


def test_tuple_round_trip():
    x = QuadScalar(Fraction(1, 2), -3, 0, Fraction(7, 9))
    assert QuadScalar.from_tuple_str(x.to_tuple_str()) == x
    assert math.isclose(float(x), 0.5 - 3 * math.sqrt(2) + 7 / 9 * math.sqrt(6))


@given(small)
def test_rational_text_round_trip(q):
    assert parse_rational(format_rational(q)) == q


def test_raffine_arithmetic():
    a = RAffine(1, Fraction(-9, 4))
    assert a(Fraction(4, 9)) == 0
    assert raffine_eval(a, 0) == 1
    assert (a + RAffine(0, Fraction(9, 4))) == RAffine(1)
    assert a * 2 == RAffine(2, Fraction(-9, 2))
    assert str(a) == "(1) + (-9/4) r"
    assert RAffine.parse(str(a)) == a
    with pytest.raises(DegreeOverflow):
        a * RAffine(0, 1)


def test_raffine_fit():
    line = RAffine.fit([(Fraction(1, 4), Fraction(15, 8)), (1, Fraction(15, 2)), (Fraction(4, 9), Fraction(10, 3))])
    assert line == RAffine(0, Fraction(15, 2))
    with pytest.raises(NonAffineInR):
        RAffine.fit([(0, 0), (1, 1), (2, 4)])


@given(quads, quads)
def test_canonical_form(a, b):
    assert (a == b) == (a.coords == b.coords)


def test_raffine_eval_examples():
    assert raffine_eval(RAffine(1, Fraction(-9, 4)), Fraction(4, 9)) == 0
    assert raffine_eval(RAffine(50, Fraction(-15, 2)), Fraction(20, 3)) == 0
    assert raffine_eval(RAffine(Fraction(3, 7)), 123) == Fraction(3, 7)
