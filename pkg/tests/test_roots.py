from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from adeh.golden import ALL_TYPES
from adeh.roots import (
    AdeType,
    WeylWord,
    build_root_system,
    coxeter_element,
    coxeter_orbits,
    coxeter_word,
    matrix_order,
    reflect,
    representatives,
    weyl_word,
)

EXPECTED_COUNTS = {"A2": (6, 3), "D4": (24, 6), "E6": (72, 12), "E7": (126, 18), "E8": (240, 30)}


@pytest.mark.parametrize("t,expected", EXPECTED_COUNTS.items())
def test_counts(t, expected):
    rs = build_root_system(t)
    assert (rs.root_count, rs.coxeter_number) == expected


@pytest.mark.parametrize("t", ALL_TYPES)
def test_structure(t):
    rs = build_root_system(t)
    n = rs.rank
    assert rs.root_count == n * rs.coxeter_number
    for r in rs.roots:
        assert rs.form(r, r) == 2
    pos = set(rs.positive_roots)
    assert all(tuple(-x for x in p) not in pos for p in pos)
    assert len(pos) * 2 == rs.root_count
    M = coxeter_element(rs)
    assert matrix_order(M) == rs.coxeter_number
    assert round(np.linalg.det((M - np.eye(n)).astype(float))) != 0
    orbits = coxeter_orbits(rs, M)
    assert len(orbits) == n
    assert all(len(o) == rs.coxeter_number for o in orbits)


def test_family_counts():
    for n in range(1, 9):
        assert build_root_system(f"A{n}").root_count == n * (n + 1)
    for n in range(4, 9):
        assert build_root_system(f"D{n}").root_count == 2 * n * (n - 1)


def test_pairings_in_range():
    rs = build_root_system("D5")
    for a in rs.roots:
        for b in rs.roots:
            p = rs.form(a, b)
            assert p in (-2, -1, 0, 1, 2)
            if abs(p) == 2:
                assert a == b or a == tuple(-x for x in b)


def test_parse_and_errors():
    assert str(AdeType.parse("E6")) == "E6"
    assert AdeType.parse("A_3") == AdeType("A", 3)
    for bad in ("B3", "D3", "E9", "A0", "X"):
        with pytest.raises(ValueError):
            AdeType.parse(bad)


def test_e6_cartan_labels():
    rs = build_root_system("E6")
    edges = {(i + 1, j + 1) for i in range(6) for j in range(i + 1, 6) if rs.cartan[i][j] == -1}
    assert edges == {(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)}


def test_e8_ambient_model():
    rs = build_root_system("E8")
    amb = rs.ambient(rs.simple_roots[0])
    assert amb == tuple(Fraction(x, 2) for x in (1, -1, -1, -1, -1, -1, -1, 1))
    for r in rs.roots:
        x = rs.ambient(r)
        assert sum(c * c for c in x) == 2


def test_reflect():
    rs = build_root_system("A3")
    a = rs.simple_roots[0]
    assert reflect(rs, a, a) == tuple(-x for x in a)
    v = rs.simple_roots[2]
    assert reflect(rs, a, v) == v
    w = (Fraction(1, 3), 2, -5)
    assert reflect(rs, a, reflect(rs, a, w)) == w
    with pytest.raises(ValueError):
        reflect(rs, (2, 0, 0), w)


def test_reflect_preserves_roots():
    rs = build_root_system("D4")
    roots = set(rs.roots)
    for m in rs.positive_roots:
        assert {reflect(rs, m, r) for r in roots} == roots


def test_a_coxeter_is_cyclic_shift():
    rs = build_root_system("A3")
    M = coxeter_element(rs)
    for r in rs.roots:
        x = rs.ambient(r)
        y = rs.ambient(tuple(int(c) for c in M @ np.array(r)))
        assert y == x[1:] + x[:1]


def test_d_coxeter_action():
    rs = build_root_system("D5")
    M = coxeter_element(rs)
    for r in rs.roots:
        z = rs.ambient(r)
        y = rs.ambient(tuple(int(c) for c in M @ np.array(r)))
        assert y == (z[1], z[2], z[3], -z[0], -z[4])


def test_e_words():
    assert coxeter_word(build_root_system("E6")).letters == (1, 4, 6, 2, 3, 5)
    assert coxeter_word(build_root_system("E8")).letters == (1, 4, 6, 8, 2, 3, 5, 7)


def test_representatives_distinct_orbits():
    for t in ("A4", "D4", "D7", "E7"):
        rs = build_root_system(t)
        reps = representatives(rs)
        orbits = coxeter_orbits(rs, coxeter_element(rs))
        assert [o[0] for o in orbits] == reps


def test_weyl_word():
    rs = build_root_system("A1")
    a = rs.simple_roots[0]
    assert weyl_word(rs, a, a) == WeylWord(())
    assert weyl_word(rs, a, (-1,)).letters == (1,)
    rs = build_root_system("A2")
    for s in rs.roots:
        for t in rs.roots:
            assert weyl_word(rs, s, t).apply(rs, s) == t


def test_word_matrix_matches_apply():
    rs = build_root_system("E6")
    w = WeylWord((1, 3, 4, 2))
    M = w.matrix(rs)
    for r in rs.positive_roots[:20]:
        assert tuple(int(x) for x in M @ np.array(r)) == w.apply(rs, r)
