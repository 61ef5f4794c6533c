from __future__ import annotations

import json
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adeh.cyclo import (
    CycloNum,
    cyclo_arith,
    cyclo_galois,
    cyclotomic_poly,
    embed_complex,
    euler_phi,
    parse_rational,
)


def test_cyclotomic_small():
    assert cyclotomic_poly(1) == [-1, 1]
    assert cyclotomic_poly(2) == [1, 1]
    assert cyclotomic_poly(3) == [1, 1, 1]
    assert cyclotomic_poly(12) == [1, 0, -1, 0, 1]


@pytest.mark.parametrize("n", range(1, 40))
def test_cyclotomic_degree_and_monic(n):
    p = cyclotomic_poly(n)
    assert len(p) - 1 == euler_phi(n)
    assert p[-1] == 1


def test_cyclotomic_rejects_zero():
    with pytest.raises(ValueError):
        cyclotomic_poly(0)


def test_sum_of_cube_roots_vanishes():
    z = CycloNum.zeta(3)
    assert (1 + z + z * z).is_zero()


@pytest.mark.parametrize("n", [2, 5, 12, 18, 30])
def test_zeta_times_inverse_power(n):
    assert CycloNum.zeta(n) * CycloNum.zeta(n, n - 1) == 1


def test_sqrt3():
    r3 = CycloNum.zeta(12) + CycloNum.zeta(12, 11)
    assert r3 * r3 == 3
    assert r3.is_real()


def test_division_and_inverse():
    r3 = CycloNum.zeta(12) + CycloNum.zeta(12, -1)
    a = 16 + 8 * r3
    b = 7 + 4 * r3
    assert a / b == 16 - 8 * r3
    assert cyclo_arith(a, b, "div") == 16 - 8 * r3
    assert a * a.inverse() == 1


def test_errors():
    with pytest.raises(ValueError):
        CycloNum.zeta(3) + CycloNum.zeta(4)
    with pytest.raises(ZeroDivisionError):
        CycloNum.one(5) / CycloNum.zero(5)
    with pytest.raises(ValueError):
        cyclo_arith(CycloNum.one(3), CycloNum.one(3), "pow")
    with pytest.raises(ValueError):
        cyclo_galois(CycloNum.zeta(6), 2)


def test_galois():
    z = CycloNum.zeta(3)
    assert cyclo_galois(z, 2) == -1 - z
    a = CycloNum(15, [1, Fraction(2, 3), 0, -5])
    assert a.galois(2).galois(7) == a.galois(14)
    real = a + a.conj()
    assert real.galois(14) == real


def test_embedding_values():
    v = embed_complex(CycloNum.zeta(4), 30)
    assert abs(v - mpmath.mpc(0, 1)) < mpmath.mpf(10) ** -30
    v = (16 + 8 * (CycloNum.zeta(12) + CycloNum.zeta(12, 11))).embed(20)
    with mpmath.workdps(30):
        assert abs(v.real - (16 + 8 * mpmath.sqrt(3))) < mpmath.mpf(10) ** -18
        assert abs(v.imag) < mpmath.mpf(10) ** -18


def test_embedding_of_cyclotomic_relation():
    # Phi_n(zeta_n) built without reduction: sum of coefficients times powers
    for n in (5, 9, 12, 30):
        coeffs = cyclotomic_poly(n)
        total = mpmath.mpc(0)
        with mpmath.workdps(40):
            for k, c in enumerate(coeffs):
                total += c * embed_complex(CycloNum.zeta(n, k), 30)
        assert abs(total) < mpmath.mpf(10) ** -28


def test_embedding_digits_bounds():
    with pytest.raises(ValueError):
        embed_complex(CycloNum.one(3), 0)
    with pytest.raises(ValueError):
        embed_complex(CycloNum.one(3), 10_000)


def test_json_round_trip():
    a = CycloNum(18, [Fraction(51, 2), 24, 24, 0, -6, -18])
    data = json.loads(json.dumps(a.to_json()))
    assert data == {"order": 18, "coeffs": ["51/2", "24", "24", "0", "-6", "-18"]}
    assert CycloNum.from_json(data) == a
    with pytest.raises(ValueError):
        CycloNum.from_json({"order": 18, "coeffs": ["1"]})
    with pytest.raises(ValueError):
        CycloNum.from_json({"order": 3, "coeffs": ["0.5", "1"]})


def test_parse_rational():
    assert parse_rational("-3/2") == Fraction(-3, 2)
    assert parse_rational(7) == 7
    for bad in ("1.5", "1e3", ""):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_rational_comparisons_and_hash():
    assert CycloNum.rational(7, "3/4") == Fraction(3, 4)
    assert hash(CycloNum.rational(7, 2)) == hash(2)
    assert CycloNum.zeta(7) != 1
    assert "z12" in repr(CycloNum.zeta(12))


orders = st.sampled_from([1, 2, 3, 4, 5, 7, 8, 9, 12, 15, 18, 30])
small = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def triples(draw):
    n = draw(orders)
    d = euler_phi(n)
    mk = lambda: CycloNum(n, draw(st.lists(small, min_size=d, max_size=d)))
    return mk(), mk(), mk()


@settings(max_examples=100, deadline=None)
@given(triples())
def test_field_axioms(abc):
    a, b, c = abc
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == 0
    if not a.is_zero():
        assert a * a.inverse() == 1
        assert (b / a) * a == b


@settings(max_examples=30, deadline=None)
@given(triples())
def test_realness_matches_embedding(abc):
    a = abc[0]
    real = a + a.conj()
    assert abs(real.embed(20).imag) < 1e-15
    if not a.is_real():
        assert abs(a.embed(20).imag) > 1e-15
