from __future__ import annotations

from fractions import Fraction

import pytest

from adeh.coefficients import (
    E7_U_TABLE,
    E8_U_TABLE,
    closed_form_reference,
    coeff_ratio,
    coeff_table,
    consistency_constant,
    cosecant_sum,
    dedekind_check,
    m_invariance,
    rho_norm,
    tangent_sum,
)
from adeh.cyclo import CycloNum
from adeh.golden import ALL_TYPES, golden_record, load_golden
from adeh.roots import WeylWord, build_root_system, weyl_word
from adeh.spectral import coxeter_data


def sqrt3():
    return CycloNum.zeta(12) + CycloNum.zeta(12, -1)


def test_a1_values():
    ct = coeff_table("A1")
    assert ct.a_values[0] == Fraction(1, 16)
    assert ct.b_values[0] == 1
    assert ct.g_values[0] == Fraction(1, 2)


def test_a1_ratio_across_reflection():
    rs = build_root_system("A1")
    cd = coxeter_data(rs)
    assert coeff_ratio(rs, cd, (1,), WeylWord((1,))) == 1


def test_a2_ratio_is_one():
    rs = build_root_system("A2")
    cd = coxeter_data(rs)
    a, b = cd.reps
    assert coeff_ratio(rs, cd, a, weyl_word(rs, a, b)) == 1


def test_e6_ratio():
    rs = build_root_system("E6")
    cd = coxeter_data(rs)
    a1, a2 = rs.simple_roots[0], rs.simple_roots[1]
    r = coeff_ratio(rs, cd, a2, weyl_word(rs, a2, a1))
    assert r == 16 - 8 * sqrt3()


def test_ratio_rejects_non_root():
    rs = build_root_system("A2")
    cd = coxeter_data(rs)
    with pytest.raises(ValueError):
        coeff_ratio(rs, cd, (2, 0), WeylWord(()))


def test_d4_table():
    g = coeff_table("D4").g_values
    assert [x.to_fraction() for x in g] == [Fraction(1, 2), Fraction(9, 2), Fraction(9, 2), Fraction(9, 2)]


def test_e6_table():
    r3 = sqrt3()
    assert coeff_table("E6").g_values == (16 + 8 * r3, 7 + 4 * r3, 16 - 8 * r3, 7 - 4 * r3, 16 - 8 * r3, 16 + 8 * r3)


def test_e7_g3():
    assert coeff_table("E7").g_values[2] == Fraction(3, 2)


def test_a3_closed_form():
    assert [g.to_fraction() for g in closed_form_reference("A3")] == [2, 1, 2]


def test_e8_g1_closed_form():
    u = (CycloNum.zeta(30) + CycloNum.zeta(30, -1)) / 2
    g1 = Fraction(33, 2) + 80 * u + 72 * u * u - 16 * u ** 3
    assert closed_form_reference("E8")[0] == g1
    assert coeff_table("E8").g_values[0] == g1


@pytest.mark.parametrize("t", ALL_TYPES)
def test_table_matches_closed_form(t):
    ct = coeff_table(t)
    assert ct.g_values == closed_form_reference(t)
    for r in ct.ratios:
        assert r.conj() == r
        assert r.approx().real > 0
    rs = build_root_system(t)
    assert sum(ct.a_values, CycloNum.zero(ct.h)) * ct.h == consistency_constant(rs)
    total, family = dedekind_check(t, ct)
    assert total == family == rho_norm(rs)


def test_dedekind_examples():
    assert dedekind_check("A4")[0] == 10
    assert dedekind_check("D5")[0] == 30
    assert dedekind_check("E6")[0] == 78
    assert dedekind_check("A6")[0] == 28


@pytest.mark.parametrize("n", range(4, 12))
def test_tangent_sum(n):
    s, ref = tangent_sum(n)
    assert s == ref


@pytest.mark.parametrize("n", range(1, 12))
def test_cosecant_sum(n):
    s, ref = cosecant_sum(n)
    assert s == ref


def test_u_tables_cancel():
    for table, total in ((E7_U_TABLE, Fraction(399, 2)), (E8_U_TABLE, Fraction(620))):
        width = max(len(r) for r in table)
        sums = [sum(Fraction(r[k]) for r in table if k < len(r)) for k in range(width)]
        assert sums[0] == total
        assert all(s == 0 for s in sums[1:])


@pytest.mark.parametrize("t", ["A4", "D5", "E6", "E8"])
def test_m_invariance(t):
    rs = build_root_system(t)
    cd = coxeter_data(rs)
    for r in cd.reps:
        assert m_invariance(rs, cd, r) == 1


def test_word_independence_d4():
    rs = build_root_system("D4")
    cd = coxeter_data(rs)
    fwd, bwd = [1, 2, 3, 4], [4, 3, 2, 1]
    seen_distinct = False
    for a in cd.reps:
        for b in cd.reps:
            w1 = weyl_word(rs, a, b, fwd)
            w2 = weyl_word(rs, a, b, bwd)
            seen_distinct |= w1.letters != w2.letters
            assert coeff_ratio(rs, cd, a, w1) == coeff_ratio(rs, cd, a, w2)
    assert seen_distinct


@pytest.mark.parametrize("t", ALL_TYPES)
def test_golden_files(t):
    assert load_golden(t) == closed_form_reference(t)
    rec = golden_record(t)
    assert rec["sum_g"] == str(rho_norm(build_root_system(t)))
