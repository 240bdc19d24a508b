from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sedgeo import acceptance
from sedgeo.cayley_dickson import (
    CdElement,
    ZeroDivisorPair,
    annihilator_basis,
    annihilator_bound,
    annihilator_dim,
    cd_multiply,
    characterization_check,
    conjugate,
    format_element,
    format_pair,
    im_part,
    inner,
    is_zero_divisor_pair,
    norm_sq,
    octonion_criterion,
    parse_element,
    parse_pair,
    re_part,
    recursive_multiply,
    standard_zero_divisors,
    structure_table,
)
from sedgeo.errors import LevelMismatch, ParseError, ZeroInput

coef = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def elements(level):
    return st.lists(coef, min_size=1 << level, max_size=1 << level).map(lambda c: CdElement(level, tuple(c)))


e = parse_element


def test_imaginary_unit_squares_to_minus_one():
    assert cd_multiply(CdElement.basis(2, 1), CdElement.basis(2, 1)) == CdElement.basis(2, 0, -1)


def test_standard_pair_multiplies_to_zero():
    assert cd_multiply(e("e4+e13"), e("e6+e15")).is_zero()


def test_level_mismatch():
    with pytest.raises(LevelMismatch):
        cd_multiply(CdElement.basis(3, 1), CdElement.basis(4, 1))


@pytest.mark.parametrize("level", [1, 2, 3, 4, 5])
def test_table_agrees_with_recursion(level):
    rng = random.Random(level)
    for _ in range(10):
        x = CdElement(level, tuple(Fraction(rng.randint(-3, 3)) for _ in range(1 << level)))
        y = CdElement(level, tuple(Fraction(rng.randint(-3, 3)) for _ in range(1 << level)))
        assert cd_multiply(x, y) == recursive_multiply(x, y)
    assert len(structure_table(level)) == 1 << level


@settings(max_examples=40)
@given(elements(4), elements(4))
def test_flexible(x, y):
    assert cd_multiply(cd_multiply(x, y), x) == cd_multiply(x, cd_multiply(y, x))


@settings(max_examples=40)
@given(elements(4))
def test_power_associative(x):
    xx = cd_multiply(x, x)
    assert cd_multiply(xx, x) == cd_multiply(x, xx)
    assert cd_multiply(cd_multiply(xx, x), x) == cd_multiply(xx, xx)


@settings(max_examples=40)
@given(elements(3), elements(3))
def test_octonions_alternative(a, b):
    assert cd_multiply(a, cd_multiply(a, b)) == cd_multiply(cd_multiply(a, a), b)


def test_sedenions_not_alternative():
    x, y = e("e1+e10"), e("e1+e12")
    assert cd_multiply(x, cd_multiply(x, y)) != cd_multiply(cd_multiply(x, x), y)


@settings(max_examples=40)
@given(elements(4))
def test_norm_is_x_times_conjugate(x):
    prod = cd_multiply(x, conjugate(x))
    assert prod == CdElement.basis(4, 0, norm_sq(x))
    assert inner(x, x) == sum(c * c for c in x.coords)


def test_conjugate_and_parts():
    x = e("e0+e5", level=3)
    assert conjugate(x) == e("e0-e5", level=3)
    assert re_part(x) == e("e0", level=3)
    assert im_part(x) == e("e5", level=3)
    assert inner(CdElement.basis(3, 3), CdElement.basis(3, 3)) == 1


def test_annihilator_of_octonion_is_trivial():
    assert annihilator_basis(CdElement.basis(3, 1)) == []


def test_annihilator_of_e1_e10():
    basis = annihilator_basis(e("e1+e10"))
    assert len(basis) == 4
    assert all(cd_multiply(e("e1+e10"), z).is_zero() for z in basis)


def test_annihilator_zero_input():
    with pytest.raises(ZeroInput):
        annihilator_basis(CdElement.zero(4))


def test_annihilator_bound():
    assert annihilator_bound(4) == 4
    assert annihilator_bound(5) == 16


def test_table1_annihilators():
    for p in standard_zero_divisors():
        for u in (p.u, p.v):
            assert annihilator_dim(u) == 4
            assert annihilator_dim(u) % 4 == 0
            assert re_part(u).is_zero()


def test_standard_zero_divisors_match_golden_table():
    pairs = standard_zero_divisors()
    assert len(pairs) == 84
    assert {format_pair(p) for p in pairs} == acceptance.load_table()
    assert "(e1+e10,e4-e15)" in {format_pair(p) for p in pairs}
    assert all(is_zero_divisor_pair(p.u, p.v) for p in pairs)


def test_annihilation_is_symmetric():
    for p in standard_zero_divisors():
        assert cd_multiply(p.v, p.u).is_zero()


def test_zero_divisor_pair_validation():
    with pytest.raises(ValueError):
        ZeroDivisorPair(e("e1+e10"), e("e1+e10"))


@pytest.mark.parametrize(
    "a, b, expected",
    [("e1", "e2", True), ("e1", "e1", False), ("e0", "e2", False), ("e1+e2", "e1+e3", False), ("e1+e2", "e3-e4", True), ("e1", "2e2", False), ("e1+e2", "e4+e5", True)],
)
def test_octonion_characterization(a, b, expected):
    a, b = e(a, level=3), e(b, level=3)
    assert characterization_check(a, b) is expected
    assert octonion_criterion(a, b) is expected


@settings(max_examples=25)
@given(st.lists(st.integers(-2, 2), min_size=14, max_size=14))
def test_characterization_agrees_on_random_imaginary(cs):
    a = CdElement(3, (Fraction(0),) + tuple(Fraction(c) for c in cs[:7]))
    b = CdElement(3, (Fraction(0),) + tuple(Fraction(c) for c in cs[7:]))
    if a.is_zero() and b.is_zero():
        return
    assert characterization_check(a, b) == octonion_criterion(a, b)


@pytest.mark.parametrize(
    "text, coords",
    [("e4+e13", {4: 1, 13: 1}), ("e1 - 1/2 e3", {1: 1, 3: Fraction(-1, 2)}), ("2*e0", {0: 2}), (" -e15 + 3e2 ", {15: -1, 2: 3})],
)
def test_parse_element(text, coords):
    x = parse_element(text)
    assert {k: c for k, c in enumerate(x.coords) if c} == coords
    assert parse_element(format_element(x)) == x


@pytest.mark.parametrize("text, pos", [("e4+x", 2), ("", 0), ("e16", 1), ("e1 e2", 3)])
def test_parse_errors(text, pos):
    with pytest.raises(ParseError) as info:
        parse_element(text)
    assert info.value.position == pos


def test_pair_round_trip():
    u, v = parse_pair("(e4+e13,e6+e15)")
    assert format_pair((u, v)) == "(e4+e13,e6+e15)"


def test_json_round_trip():
    x = e("e1 - 1/2 e3")
    assert CdElement.from_json(x.to_json()) == x
