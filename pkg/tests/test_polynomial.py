from __future__ import annotations

from fractions import Fraction

import pytest

from sedgeo import golden
from sedgeo.polynomial import Poly, QuarticForm
from sedgeo.scalar import SQRT3, RAffine


def test_poly_arithmetic_mixes_scalars():
    x, y = Poly.var(0), Poly.var(1, SQRT3)
    p = (x + y) * (x - y)
    assert p.terms == {(0, 0): 1, (1, 1): -3}
    assert (p * 2 - p - p).is_zero()
    assert 3 * x == x * 3
    assert p.degree_set() == {2}


def test_quartic_from_poly():
    x, y = Poly.var(0), Poly.var(11)
    f = QuarticForm.from_poly(x * x * y * y * Fraction(1, 2))
    assert f[(11, 0, 11, 0)] == RAffine(Fraction(1, 2))


def test_quartic_rejects_wrong_degree():
    with pytest.raises(ValueError):
        QuarticForm({(0, 1): 1})


def test_quartic_drops_zeros():
    f = QuarticForm({(0, 0, 11, 11): RAffine(1, 1)})
    g = f - f
    assert len(g) == 0
    assert f.at(-1) == QuarticForm()


def test_specialization_and_evaluation():
    f = QuarticForm({(0, 0, 12, 12): RAffine(1, Fraction(-9, 4)), (0, 1, 11, 12): RAffine(0, 2)})
    point = [0] * 22
    point[0], point[1], point[11], point[12] = 1, 2, 3, 4
    r = Fraction(1, 3)
    assert f.evaluate(point, r) == Fraction(1, 4) * 16 + Fraction(2, 3) * 24
    assert f.at(r).is_constant()
    assert not f.is_constant()


def test_text_round_trip_on_reference_file():
    text = golden.read_text("fr_poly.txt")
    f = QuarticForm.from_text(text)
    assert len(f) == 285
    assert QuarticForm.from_text(f.to_text()) == f


def test_text_rejects_duplicates():
    with pytest.raises(ValueError):
        QuarticForm.from_text("0 0 11 11: (1) + (0) r\n0 0 11 11: (2) + (0) r\n")


def test_first_difference():
    f = QuarticForm({(0, 0, 11, 11): 1, (1, 1, 12, 12): 2})
    g = QuarticForm({(0, 0, 11, 11): 1, (1, 1, 12, 12): 3})
    assert f.first_difference(g) == (1, 1, 12, 12)
    assert f.first_difference(f) is None
