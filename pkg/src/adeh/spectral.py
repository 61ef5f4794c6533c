"""Exact spectral data of a Coxeter element over Q(zeta_h)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Sequence

import numpy as np

from .cyclo import CycloNum, _field
from .roots import RootSystem, coxeter_element, matrix_order, representatives

__all__ = [
    "CoxeterData",
    "coxeter_data",
    "spectral_projector",
    "exponents",
    "compute_kappa",
    "beta_coordinates",
    "solve",
]

CVector = tuple[CycloNum, ...]
# eigenvector key: (exponent residue m in 1..h-1, tag for repeated exponents)
Key = tuple[int, int]


def _powers(M: np.ndarray, h: int) -> np.ndarray:
    n = M.shape[0]
    out = np.empty((h, n, n), dtype=object)
    P = np.eye(n, dtype=object)
    Mo = M.astype(object)
    for k in range(h):
        out[k] = P
        P = P.dot(Mo)
    return out


def spectral_projector(M: np.ndarray, m: int, h: int | None = None) -> list[list[CycloNum]]:
    """Projector (1/h) sum_k zeta_h^(-mk) M^k onto the zeta_h^m eigenspace."""
    h = h or matrix_order(M)
    F = _field(h)
    pw = _powers(M, h)
    n = M.shape[0]
    acc = np.zeros((n, n, F.phi), dtype=object)
    for k in range(h):
        z = np.array(F.xpow[(-m * k) % h], dtype=object)
        acc += pw[k][:, :, None] * z[None, None, :]
    return [[CycloNum._raw(h, list(acc[r, c]), h) for c in range(n)] for r in range(n)]


def exponents(M: np.ndarray, h: int | None = None) -> list[int]:
    """Exponents of M: each m in 1..h-1 repeated trace(P_m) times."""
    h = h or matrix_order(M)
    pw = _powers(M, h)
    traces = [int(np.trace(pw[k])) for k in range(h)]
    out = []
    for m in range(h):
        coeffs = [0] * h
        for k in range(h):
            coeffs[(-m * k) % h] += traces[k]
        tr = CycloNum.from_int_poly(h, coeffs, h)
        mult = tr.to_fraction()
        if mult.denominator != 1 or mult < 0:
            raise RuntimeError(f"non-integral eigenvalue multiplicity {mult} for m={m}")
        if m == 0 and mult:
            raise RuntimeError("Coxeter element has eigenvalue 1")
        out.extend([m] * int(mult))
    return out


def _matvec(P: Sequence[Sequence[CycloNum]], v: Sequence) -> CVector:
    out = []
    for row in P:
        acc = None
        for a, x in zip(row, v):
            if x:
                term = a * x
                acc = term if acc is None else acc + term
        out.append(acc if acc is not None else row[0] * 0)
    return tuple(out)


def _int_matvec(M: np.ndarray, v: Sequence[CycloNum]) -> CVector:
    n = M.shape[0]
    out = []
    for r in range(n):
        acc = v[0] * 0
        for c in range(n):
            k = int(M[r, c])
            if k:
                acc = acc + v[c] * k
        out.append(acc)
    return tuple(out)


def _is_zero(v: Sequence[CycloNum]) -> bool:
    return all(x.is_zero() for x in v)


def compute_kappa(
    M: np.ndarray,
    seed: Sequence[int | Fraction] | None = None,
    rs: RootSystem | None = None,
    h: int | None = None,
) -> CVector:
    """Eigenvector of M with eigenvalue zeta_h, obtained as P_1 applied to a seed.

    If the projection of ``seed`` vanishes the standard basis vectors are tried
    in turn.  With ``rs`` given, regularity <kappa, gamma> != 0 is verified for
    every root.
    """
    h = h or matrix_order(M)
    n = M.shape[0]
    P1 = spectral_projector(M, 1, h)
    seeds = [] if seed is None else [list(seed)]
    seeds += [[int(i == j) for j in range(n)] for i in range(n)]
    for s in seeds:
        kappa = _matvec(P1, s)
        if not _is_zero(kappa):
            break
    else:
        raise RuntimeError("P_1 annihilates every standard seed")
    z = CycloNum.zeta(h)
    if _int_matvec(M, kappa) != tuple(z * x for x in kappa):
        raise RuntimeError("M kappa != zeta_h kappa")
    if rs is not None:
        for g in rs.positive_roots:
            if rs.form(kappa, g).is_zero():
                raise RuntimeError(f"kappa lies on the mirror of {g}")
    return kappa


def solve(A: Sequence[Sequence[CycloNum]], rhs: Sequence[Sequence[CycloNum]]) -> list[list[CycloNum]]:
    """Solve A X = B by Gauss-Jordan elimination; ``rhs`` lists the columns of B."""
    n = len(A)
    k = len(rhs)
    rows = [list(A[r]) + [rhs[j][r] for j in range(k)] for r in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not rows[r][col].is_zero()), None)
        if piv is None:
            raise RuntimeError("singular matrix")
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = rows[col][col].inverse()
        rows[col] = [x * inv for x in rows[col]]
        for r in range(n):
            if r != col and not rows[r][col].is_zero():
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return [[rows[r][n + j] for r in range(n)] for j in range(k)]


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


@dataclass(frozen=True, eq=False)
class CoxeterData:
    """Spectral data of the Coxeter element of a root system.

    ``keys`` enumerates the eigenbasis as (m, tag) with M H = zeta_h^m H.
    Normalization: <H_m, H_{h-m}> = 1/h for m < h/2 (H_m is P_m applied to
    the first standard basis vector it does not annihilate, the partner is
    rescaled).  The self-paired eigenvalue -1 gets a Gram-Schmidt orthogonal
    basis, each vector scaled to h<H, H> = 1 whenever that takes only a
    rational square root.

    ``beta[i][key]`` are coordinates of the i-th orbit representative in the
    eigenbasis; ``beta_dual[i][key] = h <alpha_i, H_key>`` are its coordinates
    along the paired eigenvectors (the coefficients of d/dy in the vertex
    operators).
    """

    rs: RootSystem
    M: np.ndarray
    h: int
    exponents: tuple[int, ...]
    kappa: CVector
    keys: tuple[Key, ...]
    eigenbasis: dict
    reps: tuple[tuple[int, ...], ...]
    beta: tuple[dict, ...]
    beta_dual: tuple[dict, ...]
    seeds: dict

    def coordinates(self, v: Sequence) -> dict:
        """Coordinates of v in the eigenbasis, by exact linear solve."""
        return self._coords([v])[0]

    def _coords(self, vs: Sequence[Sequence]) -> list[dict]:
        cols = [self.eigenbasis[k] for k in self.keys]
        n = len(cols)
        A = [[cols[j][r] for j in range(n)] for r in range(n)]
        one = CycloNum.one(self.h)
        rhs = [[one * x for x in v] for v in vs]
        sol = solve(A, rhs)
        return [dict(zip(self.keys, s)) for s in sol]

    def dual_coordinates(self, v: Sequence) -> dict:
        return {k: self.rs.form(v, self.eigenbasis[k]) * self.h for k in self.keys}

    def keys_for(self, m: int) -> list[Key]:
        """Eigenbasis keys attached to a variable of weight m (m mod h)."""
        r = m % self.h
        return [k for k in self.keys if k[0] == r]


def _eigenbasis(rs: RootSystem, M: np.ndarray, h: int, exps: Sequence[int]):
    n = rs.rank
    std = [[int(i == j) for j in range(n)] for i in range(n)]
    basis: dict[Key, CVector] = {}
    seeds: dict[Key, int] = {}
    mult = {m: exps.count(m) for m in set(exps)}
    for m in sorted(mult):
        if 2 * m > h:
            continue
        P = spectral_projector(M, m, h)
        if 2 * m < h:
            if mult[m] != 1 or mult.get(h - m) != 1:
                raise RuntimeError(f"unexpected multiplicity for exponent {m}")
            Pc = spectral_projector(M, h - m, h)
            for j, s in enumerate(std):
                H = _matvec(P, s)
                if not _is_zero(H):
                    break
            partner = _matvec(Pc, std[j])
            c = rs.form(H, partner)
            partner = tuple(x / (c * h) for x in partner)
            basis[(m, 0)] = H
            basis[(h - m, 0)] = partner
            seeds[(m, 0)] = seeds[(h - m, 0)] = j
            continue
        # self-paired eigenvalue -1: rational eigenspace
        found: list[CVector] = []
        for j, s in enumerate(std):
            H = _matvec(P, s)
            for G in found:
                H = tuple(x - g * (rs.form(H, G) / rs.form(G, G)) for x, g in zip(H, G))
            if not _is_zero(H):
                seeds[(m, len(found))] = j
                found.append(H)
            if len(found) == mult[m]:
                break
        for tag, H in enumerate(found):
            root = _rational_sqrt((rs.form(H, H) * h).to_fraction())
            if root is not None:
                H = tuple(x / root for x in H)
            basis[(m, tag)] = H
    keys = tuple(sorted(basis))
    return keys, basis, seeds


def beta_coordinates(cd: CoxeterData, reps: Sequence[Sequence[int]]) -> list[dict]:
    """Coordinates beta_{i,m} of each representative in the eigenbasis."""
    return cd._coords(reps)


def coxeter_data(rs: RootSystem) -> CoxeterData:
    """Spectral data for rs; cached per root system (the result is read-only)."""
    return _coxeter_data(rs)


@lru_cache(maxsize=None)
def _coxeter_data(rs: RootSystem) -> CoxeterData:
    M = coxeter_element(rs)
    h = rs.coxeter_number
    exps = exponents(M, h)
    kappa = compute_kappa(M, None, rs, h)
    keys, basis, seeds = _eigenbasis(rs, M, h, exps)
    z = CycloNum.zeta(h)
    for (m, _), H in basis.items():
        if _int_matvec(M, H) != tuple(z ** m * x for x in H):
            raise RuntimeError(f"eigenvector check failed for exponent {m}")
    reps = tuple(representatives(rs))
    partial = CoxeterData(
        rs=rs, M=M, h=h, exponents=tuple(exps), kappa=kappa, keys=keys,
        eigenbasis=basis, reps=reps, beta=(), beta_dual=(), seeds=seeds,
    )
    beta = tuple(beta_coordinates(partial, reps))
    beta_dual = tuple(partial.dual_coordinates(r) for r in reps)
    return CoxeterData(
        rs=rs, M=M, h=h, exponents=tuple(exps), kappa=kappa, keys=keys,
        eigenbasis=basis, reps=reps, beta=beta, beta_dual=beta_dual, seeds=seeds,
    )
