from __future__ import annotations

import json
from fractions import Fraction

import pytest

from adeh.acceptance import negative_control_tau, soliton
from adeh.coefficients import coeff_table, rho_norm
from adeh.cyclo import CycloNum
from adeh.hirota import (
    DiffPoly,
    HirotaSystem,
    HVar,
    TauSeries,
    TruncationError,
    apply,
    from_q_index,
    generate,
    kw_kernel,
    lambda_presentation_check,
    mono_from_json,
    mono_json,
    orbit_sum_zeta0,
    to_q_variables,
    variables,
    zeta0_part,
)
from adeh.roots import build_root_system
from adeh.spectral import coxeter_data


def setup(t):
    rs = build_root_system(t)
    cd = coxeter_data(rs)
    return rs, cd, coeff_table(rs, cd)


def test_a1_variables():
    _, cd, _ = setup("A1")
    assert [v.m for v in variables(cd, 6)] == [1, 3, 5]


def test_d4_variables_carry_tags():
    _, cd, _ = setup("D4")
    ms = [v.m for v in variables(cd, 6)]
    assert ms.count(3) == 2
    assert sorted(set(ms)) == [1, 3, 5]


@pytest.mark.parametrize("t", ["A1", "A3", "D4", "E6"])
def test_weight_zero_identity(t):
    s = generate(t, max_weight=2)
    assert not s.equations[()]


def test_kernel_zeta0_scalar_and_cross_term():
    _, cd, ct = setup("A2")
    for i in range(len(cd.reps)):
        k0 = kw_kernel(cd, ct, i, 1)[0]
        by = {(y, d): c for c, _k, y, d in k0.terms}
        assert by[((), ())] == ct.g_values[i]
        for v in variables(cd, 1):
            key = (v.m % cd.h, v.tag)
            b, bs = cd.beta[i][key], cd.beta_dual[i][key]
            expected = -(2 * b * bs * ct.g_values[i]) / v.m
            assert by[(((v, 1),), ((v, 1),))] == expected


def test_kernel_rejects_negative_degree():
    _, cd, ct = setup("A1")
    with pytest.raises(ValueError):
        kw_kernel(cd, ct, 0, -1)


@pytest.mark.parametrize("t", ["A2", "D4"])
def test_branch_independence(t):
    rs, cd, ct = setup(t)
    for i in range(len(cd.reps)):
        summed = orbit_sum_zeta0(rs, cd, ct, i, 3)
        rep = zeta0_part(cd, cd.beta[i], cd.beta_dual[i], ct.g_values[i], 3)
        assert set(summed) == set(rep)
        for y in rep:
            assert summed[y].terms == rep[y].terms


@pytest.mark.parametrize("t", ["A1", "A3", "D4", "E6"])
def test_lambda_presentation(t):
    _, cd, _ = setup(t)
    assert lambda_presentation_check(cd, 2) == []


def test_q_variables_a1():
    _, cd, _ = setup("A1")
    q = to_q_variables(cd, 5)
    assert [q["factors"][v] for v in variables(cd, 5)] == [1, 3, 15]
    for v, (mbar, tag, k) in q["index"].items():
        assert from_q_index(cd.h, mbar, tag, k) == v


def test_system_json_round_trip():
    s = generate("A2", max_weight=3)
    back = HirotaSystem.from_json(json.loads(json.dumps(s.to_json())))
    assert back.to_json() == s.to_json()
    assert back.equations == s.equations


def test_rhs_terms_a1():
    s = generate("A1", max_weight=3)
    assert s.rho_norm == rho_norm(build_root_system("A1"))
    assert s.counts_by_weight()[0] == 0


def test_monomial_json():
    mono = ((HVar(1), 2), (HVar(3, 1), 1))
    assert mono_from_json(mono_json(mono)) == mono


@pytest.mark.parametrize("t", ["A1", "A2", "A3", "D4"])
def test_phi_one(t):
    assert apply(generate(t, max_weight=4), TauSeries.one(4)) == []


@pytest.mark.parametrize("t,orbits", [("A1", 1), ("A2", 2), ("A3", 3), ("D4", 4)])
def test_solitons(t, orbits):
    s = generate(t, max_weight=6)
    for i in range(orbits):
        assert apply(s, soliton(t, i, 2, 6)) == []


def test_e6_soliton():
    assert apply(generate("E6", max_weight=6), soliton("E6", 0, 2, 6)) == []


@pytest.mark.parametrize("t", ["A1", "A2", "D4"])
def test_scaled_soliton_fails(t):
    assert apply(generate(t, max_weight=6), soliton(t, 0, 2, 6, scale=3))


def _schur(sign):
    one = CycloNum.one(2)
    coeffs = {((HVar(1), 3),): {0: one / 3}, ((HVar(3), 1),): {2: one * sign}}
    return TauSeries(6, coeffs, 2)


def test_a1_schur():
    s = generate("A1", max_weight=6)
    assert apply(s, _schur(-1)) == []
    assert apply(s, _schur(1))


def test_negative_control_residual():
    res = apply(generate("A1", max_weight=4), negative_control_tau(4))
    assert res
    ys = {r.y_monomial for r in res}
    assert ((HVar(1), 1), (HVar(3), 1)) in ys


def test_truncation_error():
    with pytest.raises(TruncationError, match="requires truncation >= 4"):
        apply(generate("A1", max_weight=4), TauSeries.one(2))


def test_foreign_variable_rejected():
    tau = TauSeries(4, {((HVar(2), 1),): {0: CycloNum.one(2)}}, 2)
    with pytest.raises(ValueError):
        apply(generate("A1", max_weight=4), tau)


def test_tau_json_round_trip():
    tau = soliton("A2", 1, 2, 4)
    back = TauSeries.from_json(json.loads(json.dumps(tau.to_json())))
    assert back.coeffs == tau.coeffs
    assert back.truncation_weight == 4


def test_tau_json_rationals():
    data = {"truncation_weight": 3, "coeffs": [
        {"monomial": [], "hbar_poly": [["1", 0]]},
        {"monomial": [[1, 3]], "hbar_poly": [["1/3", 0]]},
        {"monomial": [[3, 1]], "hbar_poly": [["-1", 2]]},
    ]}
    tau = TauSeries.from_json(data)
    assert tau.coeffs[((HVar(1), 3),)][0].to_fraction() == Fraction(1, 3)


@pytest.mark.parametrize("bad", [
    {},
    {"truncation_weight": -1, "coeffs": []},
    {"truncation_weight": 2, "coeffs": [{"monomial": [[1, 3]], "hbar_poly": [["1", 0]]}]},
    {"truncation_weight": 2, "coeffs": [{"monomial": [], "hbar_poly": [["1"]]}]},
])
def test_tau_json_rejects(bad):
    with pytest.raises((ValueError, KeyError, TypeError)):
        TauSeries.from_json(bad)


def test_diffpoly_json_round_trip():
    s = generate("A1", max_weight=3)
    for p in s.equations.values():
        assert DiffPoly.from_json(json.loads(json.dumps(p.to_json()))) == p
