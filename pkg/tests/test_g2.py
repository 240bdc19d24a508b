from __future__ import annotations

from fractions import Fraction

import pytest

from sedgeo import g2
from sedgeo.cayley_dickson import CdElement, parse_element
from sedgeo.errors import BracketNotInSpan, ZeroInput
from sedgeo.scalar import SQRT3, QuadScalar


def test_basis_matrices_are_skew_derivations():
    for x in g2.basis():
        assert x.is_skew()
        assert g2.is_derivation(x)


def test_non_derivation_detected():
    assert not g2.is_derivation(g2.So8Matrix.elementary(1, 2))


def test_orthonormal():
    xs = g2.basis()
    for i in range(14):
        for j in range(14):
            assert g2.bi_form(xs[i], xs[j]) == (1 if i == j else 0)


def test_bracket_closure_and_antisymmetry():
    table = g2.bracket_table()
    xs = g2.basis()
    for i in range(14):
        for j in range(14):
            v = g2.G2Vector([table[i][j].get(k, 0) for k in range(14)])
            assert v.to_matrix() == g2.bracket(xs[i], xs[j])
            assert {k: -c for k, c in table[j][i].items()} == table[i][j]


def test_jacobi():
    for a in range(0, 14, 3):
        for b in range(1, 14, 4):
            for c in range(2, 14, 5):
                x, y, z = (g2.G2Vector.unit(k) for k in (a, b, c))
                br = g2.bracket_vectors
                total = br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y))
                assert total.is_zero()


def test_k0_commutes_with_m0():
    table = g2.bracket_table()
    for i in g2.SubspaceLabel.k0.indices:
        for j in g2.SubspaceLabel.m0.indices:
            assert table[i][j] == {}


def test_k0_is_subalgebra():
    table = g2.bracket_table()
    for i in (0, 1, 2):
        for j in (0, 1, 2):
            assert set(table[i][j]) <= {0, 1, 2}


def test_structure_constant_field():
    # constants lie in Q + Q*sqrt3
    for row in g2.structure_constants():
        for col in row:
            for c in col:
                assert c.coords[1] == 0 and c.coords[3] == 0


def test_subspace_label():
    assert g2.SubspaceLabel.of(4) is g2.SubspaceLabel.m0
    assert g2.SubspaceLabel.of(13) is g2.SubspaceLabel.m2
    with pytest.raises(IndexError):
        g2.SubspaceLabel.of(14)


def test_basis_entry_transcription():
    x3 = g2.basis()[3]
    s = SQRT3 * Fraction(1, 6)
    # -s * (2 E_23 - E_45 + E_67): entry (2,3) of E_23 is -1
    assert x3.rows[2][3] == 2 * s
    assert x3.rows[3][2] == -2 * s
    assert x3.rows[4][5] == -s


def test_from_matrix_rejects_outside_span():
    with pytest.raises(BracketNotInSpan):
        g2.G2Vector.from_matrix(g2.So8Matrix.elementary(0, 1))


def test_isotropy_of_e1_e10_is_k0():
    iso = g2.isotropy_subalgebra(parse_element("e1+e10"))
    assert g2.span_equals(iso, (0, 1, 2))


def test_pair_isotropy_is_trivial():
    assert g2.isotropy_subalgebra(parse_element("e4+e13"), parse_element("e6+e15")) == []


def test_isotropy_of_real_unit_is_everything():
    iso = g2.isotropy_subalgebra(CdElement.basis(4, 0))
    assert g2.span_equals(iso, tuple(range(14)))


def test_isotropy_zero_input():
    with pytest.raises(ZeroInput):
        g2.isotropy_subalgebra(CdElement.zero(4))


def test_export_document_shape():
    doc = g2.export_document()
    assert len(doc["basis"]) == 14
    i, j, k, c = doc["structure_constants"][0]
    assert QuadScalar.from_tuple_str(c) == g2.bracket_table()[i][j][k]


def test_first_basis_matrix_entries():
    x0 = g2.basis()[0]
    half = Fraction(1, 2)
    nonzero = {(i, j): x0.rows[i][j] for i in range(8) for j in range(8) if x0.rows[i][j]}
    assert nonzero == {(4, 5): -half, (6, 7): -half, (5, 4): half, (7, 6): half}


def test_structure_constants_totally_antisymmetric():
    c = g2.structure_constants()
    for i in range(14):
        for j in range(14):
            for k in range(14):
                assert c[i][j][k] == -c[j][i][k] == c[j][k][i]


def test_bi_form_ad_invariant():
    xs = g2.basis()
    for a in range(0, 14, 2):
        for b in range(14):
            for c in range(1, 14, 3):
                lhs = g2.bi_form(g2.bracket(xs[a], xs[b]), xs[c]) + g2.bi_form(xs[b], g2.bracket(xs[a], xs[c]))
                assert lhs == 0


@pytest.mark.parametrize("block", [(0, 1, 2), (3, 4, 5), (0, 1, 2, 3, 4, 5)])
def test_subalgebras_closed(block):
    table = g2.bracket_table()
    for i in block:
        for j in block:
            assert set(table[i][j]) <= set(block)


def test_action_on_sedenions():
    u0 = parse_element("e1+e10")
    for k in (0, 1, 2):
        assert g2.act_on_sedenion(g2.basis()[k], u0).is_zero()
    for x in g2.basis():
        assert all(not row[0] for row in x.rows)
        assert g2.act_on_sedenion(x, CdElement.basis(4, 0)).is_zero()


def test_isotropy_dimension_of_u0():
    assert len(g2.isotropy_subalgebra(parse_element("e1+e10"))) == 3
