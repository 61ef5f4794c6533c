"""Vertex-operator coefficients a_alpha and g_i = h^3 a_alpha."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cyclo import CycloNum
from .roots import AdeType, RootSystem, WeylWord, build_root_system, coxeter_word, weyl_word
from .spectral import CoxeterData, coxeter_data

__all__ = [
    "CoeffTable",
    "coeff_ratio",
    "coeff_table",
    "closed_form_reference",
    "dedekind_check",
    "family_sum",
    "rho_norm",
    "hertling_sum",
    "consistency_constant",
]


def consistency_constant(rs: RootSystem) -> Fraction:
    """N(h+1)/(12h), the required value of the sum of a_alpha over all roots."""
    n, h = rs.rank, rs.coxeter_number
    return Fraction(n * (h + 1), 12 * h)


def rho_norm(t: AdeType | RootSystem) -> Fraction:
    """<rho, rho> = N h (h+1)/12."""
    rs = t if isinstance(t, RootSystem) else build_root_system(t)
    n, h = rs.rank, rs.coxeter_number
    return Fraction(n * h * (h + 1), 12)


def hertling_sum(exps: Sequence[int], h: int) -> Fraction:
    """sum over exponents of m(h-m)/(2h^2)."""
    return sum((Fraction(m * (h - m), 2 * h * h) for m in exps), Fraction(0))


@dataclass(frozen=True)
class CoeffTable:
    ade_type: AdeType
    h: int
    reps: tuple
    ratios: tuple[CycloNum, ...]
    a_values: tuple[CycloNum, ...]
    g_values: tuple[CycloNum, ...]

    @property
    def b_values(self) -> tuple[CycloNum, ...]:
        return tuple(a * 16 for a in self.a_values)

    @property
    def approx(self) -> tuple[float, ...]:
        return tuple(g.approx().real for g in self.g_values)

    def sum_g(self) -> Fraction:
        total = CycloNum.zero(self.h)
        for g in self.g_values:
            total = total + g
        return total.to_fraction()


def _kappa_row(rs: RootSystem, kappa) -> list[CycloNum]:
    # kappa^T C, so that <kappa, v> = sum_j row[j] v_j for integer v
    n = rs.rank
    return [rs.form(kappa, [int(i == j) for i in range(n)]) for j in range(n)]


def _pair(row: Sequence[CycloNum], v: Sequence[int]) -> CycloNum:
    acc = None
    for c, x in zip(row, v):
        if x:
            term = c * x
            acc = term if acc is None else acc + term
    return acc


def coeff_ratio(rs: RootSystem, cd: CoxeterData, alpha: Sequence[int], w: WeylWord) -> CycloNum:
    """a_beta / a_alpha for beta = w(alpha).

    Uses prod over positive gamma of (<kappa,gamma>/<kappa,w gamma>)^(<alpha,gamma>^2),
    which only involves integer exponents.
    """
    alpha = tuple(alpha)
    if not rs.is_root(alpha):
        raise ValueError(f"{alpha} is not a root of {rs.ade_type}")
    row = _kappa_row(rs, cd.kappa)
    num = CycloNum.one(cd.h)
    den = CycloNum.one(cd.h)
    for g in rs.positive_roots:
        e = rs.form(alpha, g) ** 2
        if not e:
            continue
        p = _pair(row, g)
        q = _pair(row, w.apply(rs, g))
        if p is None or q is None or p.is_zero() or q.is_zero():
            raise RuntimeError("kappa is not regular")
        num = num * p ** e
        den = den * q ** e
    return num / den


def coeff_table(rs: RootSystem | AdeType | str, cd: CoxeterData | None = None) -> CoeffTable:
    if not isinstance(rs, RootSystem):
        rs = build_root_system(rs)
    cd = cd or coxeter_data(rs)
    h, reps = cd.h, cd.reps
    ratios = []
    for r in reps:
        w = weyl_word(rs, reps[0], r)
        q = coeff_ratio(rs, cd, reps[0], w)
        if q.galois(-1) != q:
            raise RuntimeError(f"coefficient ratio for {r} is not real")
        if q.approx().real <= 0:
            raise RuntimeError(f"coefficient ratio for {r} is not positive")
        ratios.append(q)
    total = CycloNum.zero(h)
    for q in ratios:
        total = total + q
    a1 = CycloNum.rational(h, consistency_constant(rs)) / (total * h)
    a_values = tuple(q * a1 for q in ratios)
    g_values = tuple(a * h ** 3 for a in a_values)
    return CoeffTable(rs.ade_type, h, tuple(reps), tuple(ratios), a_values, g_values)


def m_invariance(rs: RootSystem, cd: CoxeterData, alpha: Sequence[int]) -> CycloNum:
    """coeff_ratio along the Coxeter word itself; equals 1."""
    return coeff_ratio(rs, cd, alpha, coxeter_word(rs))


# closed forms ------------------------------------------------------------


def _cos_poly(order: int, coeffs: Sequence[Fraction | int]) -> CycloNum:
    """sum c_k u^k with u = (zeta + zeta^-1)/2 in Q(zeta_order)."""
    u = (CycloNum.zeta(order) + CycloNum.zeta(order, -1)) / 2
    acc = CycloNum.zero(order)
    p = CycloNum.one(order)
    for c in coeffs:
        acc = acc + p * Fraction(c)
        p = p * u
    return acc


_H = Fraction(1, 2)

E7_U_TABLE = [
    (27 * _H, 36, 24),
    (225 * _H, 36, -144),
    (3 * _H,),
    (147 * _H, 12, -96),
    (9 * _H, -72, 72),
    (-21 * _H, -48, 72),
    (9 * _H, 36, 72),
]

E8_U_TABLE = [
    (33 * _H, 80, 72, -16),
    (273 * _H, 132, -136, -128),
    (-123 * _H, 568, 376, -912),
    (109 * _H, -368, -72, 400),
    (745 * _H, 584, -376, -624),
    (257 * _H, -1220, -232, 1376),
    (-35 * _H, 156, 136, -256),
    (-19 * _H, 68, 232, 160),
]


def closed_form_reference(t: AdeType | str) -> tuple[CycloNum, ...]:
    """The g_i written down directly from the known closed forms, exactly in Q(zeta_h)."""
    if isinstance(t, str):
        t = AdeType.parse(t)
    n = t.rank
    if t.family == "A":
        h = n + 1
        out = []
        for i in range(1, n + 1):
            s = 2 - CycloNum.zeta(h, i) - CycloNum.zeta(h, -i)
            out.append(CycloNum.rational(h, n + 1) / s)
        return tuple(out)
    if t.family == "D":
        h = 2 * n - 2
        out = []
        for i in range(1, n - 1):
            c = CycloNum.zeta(h, i) + CycloNum.zeta(h, -i)
            out.append((2 - c) / (2 + c) * Fraction(n - 1, 2))
        out += [CycloNum.rational(h, Fraction((n - 1) ** 2, 2))] * 2
        return tuple(out)
    if n == 6:
        r3 = CycloNum.zeta(12) + CycloNum.zeta(12, -1)
        big_p, big_m = 16 + 8 * r3, 16 - 8 * r3
        small_p, small_m = 7 + 4 * r3, 7 - 4 * r3
        return (big_p, small_p, big_m, small_m, big_m, big_p)
    if n == 7:
        return tuple(_cos_poly(18, c) for c in E7_U_TABLE)
    return tuple(_cos_poly(30, c) for c in E8_U_TABLE)


def family_sum(t: AdeType | str) -> Fraction:
    """Closed form for the sum of the g_i in each family."""
    if isinstance(t, str):
        t = AdeType.parse(t)
    n = t.rank
    if t.family == "A":
        return Fraction(n * (n + 1) * (n + 2), 12)
    if t.family == "D":
        return Fraction((n - 1) * n * (2 * n - 1), 6)
    return {6: Fraction(78), 7: Fraction(399, 2), 8: Fraction(620)}[n]


def tangent_sum(n: int) -> tuple[Fraction, Fraction]:
    """sum_{k=1}^{n-2} tan^2(pi k/(2n-2)) evaluated exactly, and (n-2)(2n-3)/3."""
    h = 2 * n - 2
    acc = CycloNum.zero(h)
    for k in range(1, n - 1):
        c = CycloNum.zeta(h, k) + CycloNum.zeta(h, -k)
        acc = acc + (2 - c) / (2 + c)
    return acc.to_fraction(), Fraction((n - 2) * (2 * n - 3), 3)


def cosecant_sum(n: int) -> tuple[Fraction, Fraction]:
    """sum_{k=1}^{n} 1/sin^2(pi k/(n+1)) evaluated exactly, and n(n+2)/3."""
    h = n + 1
    acc = CycloNum.zero(h)
    for k in range(1, n + 1):
        acc = acc + 4 / (2 - CycloNum.zeta(h, k) - CycloNum.zeta(h, -k))
    return acc.to_fraction(), Fraction(n * (n + 2), 3)


def dedekind_check(t: AdeType | str, table: CoeffTable | None = None) -> tuple[Fraction, Fraction]:
    """(sum of computed g_i, closed-form sum for the family)."""
    if isinstance(t, str):
        t = AdeType.parse(t)
    table = table or coeff_table(t)
    return table.sum_g(), family_sum(t)
