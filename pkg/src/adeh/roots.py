"""Simply-laced root systems A_N, D_N, E_6, E_7, E_8.

Roots are stored as integer coefficient vectors in the basis of simple roots,
and ``<x, y> = x^T C y`` with C the Cartan matrix.  The classical coordinate
models (sum-zero hyperplane of Q^(N+1) for A_N, Q^N for D_N, the even model of
E_8 in Q^8) are used to construct the roots and are kept for display.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "AdeType",
    "RootSystem",
    "WeylWord",
    "build_root_system",
    "reflect",
    "coxeter_word",
    "coxeter_element",
    "coxeter_orbits",
    "representatives",
    "weyl_word",
    "matrix_order",
    "SUPPORTED",
]

Vector = tuple[int, ...]

SUPPORTED = "A_N (N>=1), D_N (N>=4), E6, E7, E8"


@dataclass(frozen=True)
class AdeType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in ("A", "D", "E"):
            raise ValueError(f"unsupported family {self.family!r}; supported: {SUPPORTED}")
        ok = {
            "A": self.rank >= 1,
            "D": self.rank >= 4,
            "E": self.rank in (6, 7, 8),
        }[self.family]
        if not ok:
            raise ValueError(f"invalid rank for {self.family}{self.rank}; supported: {SUPPORTED}")

    @classmethod
    def parse(cls, text: str) -> "AdeType":
        m = re.fullmatch(r"\s*([A-Za-z])_?(\d+)\s*", str(text))
        if not m:
            raise ValueError(f"cannot parse root system type {text!r}; supported: {SUPPORTED}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class WeylWord:
    """Product s_{l_1} s_{l_2} ... s_{l_k} of simple reflections (1-based).

    Acts on vectors right to left: the last letter is applied first.
    """

    letters: tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def apply(self, rs: "RootSystem", v: Sequence) -> tuple:
        out = tuple(v)
        for i in reversed(self.letters):
            out = rs.simple_reflect(i, out)
        return out

    def matrix(self, rs: "RootSystem") -> np.ndarray:
        mat = np.eye(rs.rank, dtype=np.int64)
        for i in self.letters:
            mat = mat @ rs.reflection_matrix(i)
        return mat


@dataclass(frozen=True, eq=False)
class RootSystem:
    ade_type: AdeType
    ambient_dim: int
    simple_ambient: tuple[tuple[Fraction, ...], ...]
    cartan: tuple[tuple[int, ...], ...]
    roots: tuple[Vector, ...]
    positive_roots: tuple[Vector, ...]
    _root_set: frozenset = field(repr=False)

    @property
    def rank(self) -> int:
        return self.ade_type.rank

    @property
    def gram(self) -> tuple[tuple[int, ...], ...]:
        return self.cartan

    @property
    def root_count(self) -> int:
        return len(self.roots)

    @property
    def coxeter_number(self) -> int:
        return self.root_count // self.rank

    @property
    def simple_roots(self) -> tuple[Vector, ...]:
        n = self.rank
        return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))

    def is_root(self, v: Sequence) -> bool:
        return tuple(v) in self._root_set

    def form(self, x: Sequence, y: Sequence):
        """<x, y> for vectors in simple-root coordinates (any exact scalars)."""
        total = 0
        C = self.cartan
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = C[i]
            s = 0
            for j, yj in enumerate(y):
                if row[j]:
                    s = s + row[j] * yj
            total = total + xi * s
        return total

    def coroot_pairing(self, i: int, v: Sequence):
        """<alpha_i, v> for the 1-based simple root alpha_i."""
        row = self.cartan[i - 1]
        total = 0
        for c, x in zip(row, v):
            if c:
                total = total + c * x
        return total

    def simple_reflect(self, i: int, v: Sequence) -> tuple:
        p = self.coroot_pairing(i, v)
        out = list(v)
        out[i - 1] = out[i - 1] - p
        return tuple(out)

    def reflection_matrix(self, i: int) -> np.ndarray:
        n = self.rank
        mat = np.eye(n, dtype=np.int64)
        mat[i - 1, :] -= np.array(self.cartan[i - 1], dtype=np.int64)
        return mat

    def ambient(self, v: Sequence) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * self.ambient_dim
        for c, s in zip(v, self.simple_ambient):
            if c:
                for k in range(self.ambient_dim):
                    out[k] += c * s[k]
        return tuple(out)

    def from_ambient(self, x: Sequence) -> Vector:
        coeffs = _solve_simple(self.simple_ambient, self.cartan, x)
        if any(c.denominator != 1 for c in coeffs):
            raise ValueError(f"{tuple(x)} is not in the root lattice")
        return tuple(int(c) for c in coeffs)


def _dot(x: Sequence, y: Sequence):
    return sum(a * b for a, b in zip(x, y))


def _solve_simple(simple, cartan, x) -> list[Fraction]:
    """Coordinates of ambient vector x in the simple-root basis (x must lie in their span)."""
    n = len(simple)
    rhs = [Fraction(_dot(s, x)) for s in simple]
    A = [[Fraction(c) for c in row] + [rhs[i]] for i, row in enumerate(cartan)]
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        p = A[col][col]
        A[col] = [a / p for a in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return [A[i][n] for i in range(n)]


def _unit(dim: int, *pairs: tuple[int, int]) -> tuple[Fraction, ...]:
    v = [Fraction(0)] * dim
    for idx, c in pairs:
        v[idx] += c
    return tuple(v)


def _ambient_model(t: AdeType) -> tuple[int, list[tuple[Fraction, ...]], list[tuple[Fraction, ...]]]:
    """Ambient dimension, all roots, and ordered simple roots of the coordinate model."""
    n = t.rank
    if t.family == "A":
        dim = n + 1
        roots = [_unit(dim, (i, 1), (j, -1)) for i in range(dim) for j in range(dim) if i != j]
        simple = [_unit(dim, (i - 1, 1), (i, -1)) for i in range(1, n + 1)]
        return dim, roots, simple
    if t.family == "D":
        dim = n
        roots = [
            _unit(dim, (i, si), (j, sj))
            for i, j in itertools.combinations(range(dim), 2)
            for si in (1, -1)
            for sj in (1, -1)
        ]
        simple = [_unit(dim, (i, 1), (i + 1, -1)) for i in range(n - 1)]
        simple.append(_unit(dim, (n - 2, 1), (n - 1, 1)))
        return dim, roots, simple
    # E_8 even model; E_7, E_6 are the sub-systems spanned by the first simple roots
    dim = 8
    half = Fraction(1, 2)
    roots = [
        _unit(dim, (i, si), (j, sj))
        for i, j in itertools.combinations(range(dim), 2)
        for si in (1, -1)
        for sj in (1, -1)
    ]
    for signs in itertools.product((1, -1), repeat=8):
        if signs.count(-1) % 2 == 0:
            roots.append(tuple(half * s for s in signs))
    simple = [
        tuple(half * s for s in (1, -1, -1, -1, -1, -1, -1, 1)),
        _unit(dim, (0, 1), (1, 1)),
        _unit(dim, (0, -1), (1, 1)),
        _unit(dim, (1, -1), (2, 1)),
        _unit(dim, (2, -1), (3, 1)),
        _unit(dim, (3, -1), (4, 1)),
        _unit(dim, (4, -1), (5, 1)),
        _unit(dim, (5, -1), (6, 1)),
    ]
    return dim, roots, simple


def build_root_system(t: AdeType | str) -> RootSystem:
    """Build the root system of type ``t`` with simple roots in the standard labeling.

    For E_N the labels follow the diagram with alpha_4 at the branch node and
    alpha_2 on the short branch.
    """
    if not isinstance(t, AdeType):
        t = AdeType.parse(t)
    return _build(t)


@lru_cache(maxsize=None)
def _build(t: AdeType) -> RootSystem:
    # RootSystem is immutable, so one instance per type is shared
    dim, amb_roots, simple = _ambient_model(t)
    if t.family == "E":
        e8_simple = simple
        cartan8 = tuple(tuple(int(_dot(a, b)) for b in e8_simple) for a in e8_simple)
        n = t.rank
        simple = e8_simple[:n]
        keep = []
        for r in amb_roots:
            c = _solve_simple(e8_simple, cartan8, r)
            if all(x == 0 for x in c[n:]):
                keep.append(r)
        amb_roots = keep
    cartan = tuple(tuple(int(_dot(a, b)) for b in simple) for a in simple)
    coords = []
    for r in amb_roots:
        c = _solve_simple(simple, cartan, r)
        if any(x.denominator != 1 for x in c):
            raise RuntimeError(f"root {r} not in the root lattice")
        coords.append(tuple(int(x) for x in c))
    positive = sorted(
        (c for c in coords if all(x >= 0 for x in c)), key=lambda v: (sum(v), tuple(-x for x in v))
    )
    negative = [tuple(-x for x in v) for v in positive]
    if len(positive) * 2 != len(coords):
        raise RuntimeError("roots do not split into positive and negative halves")
    roots = tuple(positive) + tuple(negative)
    return RootSystem(
        ade_type=t,
        ambient_dim=dim,
        simple_ambient=tuple(simple),
        cartan=cartan,
        roots=roots,
        positive_roots=tuple(positive),
        _root_set=frozenset(roots),
    )


def reflect(rs: RootSystem, mirror: Sequence[int], v: Sequence) -> tuple:
    """Reflection v - <mirror, v> mirror in the hyperplane orthogonal to a root."""
    if not rs.is_root(mirror):
        raise ValueError(f"{tuple(mirror)} is not a root of {rs.ade_type}")
    p = rs.form(mirror, v)
    return tuple(x - p * m for x, m in zip(v, mirror))


def coxeter_word(rs: RootSystem) -> WeylWord:
    t = rs.ade_type
    n = t.rank
    if t.family == "A":
        # ambient action (z_0, ..., z_N) -> (z_1, ..., z_N, z_0)
        return WeylWord(tuple(range(n, 0, -1)))
    if t.family == "D":
        # ambient action (z_1, ..., z_N) -> (z_2, ..., z_{N-1}, -z_1, -z_N)
        return WeylWord((n - 1, n) + tuple(range(n - 2, 0, -1)))
    return WeylWord({6: (1, 4, 6, 2, 3, 5), 7: (1, 4, 6, 2, 3, 5, 7), 8: (1, 4, 6, 8, 2, 3, 5, 7)}[n])


def matrix_order(M: np.ndarray, limit: int = 1000) -> int:
    ident = np.eye(M.shape[0], dtype=M.dtype)
    P = M.copy()
    for k in range(1, limit + 1):
        if np.array_equal(P, ident):
            return k
        P = P @ M
    raise RuntimeError("matrix order exceeds limit")


def coxeter_element(rs: RootSystem) -> np.ndarray:
    """Integer matrix of the Coxeter element in simple-root coordinates."""
    M = coxeter_word(rs).matrix(rs)
    h = rs.coxeter_number
    if matrix_order(M) != h:
        raise RuntimeError(f"Coxeter element of {rs.ade_type} does not have order {h}")
    return M


def representatives(rs: RootSystem) -> list[Vector]:
    """One root per Coxeter orbit, in the fixed ordering used for the g_i tables.

    A_N: e_0 - e_i.  D_N: e_{N-1} - e_i (i <= N-2), e_{N-1} - e_N, e_{N-1} + e_N.
    E_N: the simple roots alpha_1, ..., alpha_N.
    """
    t = rs.ade_type
    n, dim = t.rank, rs.ambient_dim
    if t.family == "A":
        amb = [_unit(dim, (0, 1), (i, -1)) for i in range(1, n + 1)]
    elif t.family == "D":
        a = n - 2  # zero-based index of e_{N-1}
        amb = [_unit(dim, (a, 1), (i, -1)) for i in range(n - 2)]
        amb.append(_unit(dim, (a, 1), (n - 1, -1)))
        amb.append(_unit(dim, (a, 1), (n - 1, 1)))
    else:
        return list(rs.simple_roots)
    return [rs.from_ambient(x) for x in amb]


def _apply(M: np.ndarray, v: Sequence[int]) -> Vector:
    return tuple(int(x) for x in M @ np.asarray(v, dtype=np.int64))


def coxeter_orbits(rs: RootSystem, M: np.ndarray) -> list[tuple[Vector, ...]]:
    """Partition of the roots into N cyclically ordered M-orbits.

    Orbit i starts at the i-th representative, so orbit order matches
    :func:`representatives`.
    """
    h = rs.coxeter_number
    orbits = []
    seen: set[Vector] = set()
    for rep in representatives(rs):
        if rep in seen:
            raise RuntimeError(f"representatives of {rs.ade_type} share an M-orbit")
        orbit = [rep]
        cur = _apply(M, rep)
        while cur != rep:
            orbit.append(cur)
            cur = _apply(M, cur)
        if len(orbit) != h:
            raise RuntimeError(f"orbit of {rep} has {len(orbit)} elements, expected {h}")
        seen.update(orbit)
        orbits.append(tuple(orbit))
    if len(seen) != rs.root_count:
        raise RuntimeError("M-orbits of the representatives do not cover the roots")
    return orbits


def weyl_word(
    rs: RootSystem,
    source: Sequence[int],
    target: Sequence[int],
    order: Iterable[int] | None = None,
) -> WeylWord:
    """Breadth-first search for w with w(source) = target.

    ``order`` is the sequence in which simple reflections are tried; different
    orders generally yield different words.
    """
    source, target = tuple(source), tuple(target)
    if not (rs.is_root(source) and rs.is_root(target)):
        raise ValueError("source and target must be roots")
    gens = list(order) if order is not None else list(range(1, rs.rank + 1))
    parent: dict[Vector, tuple[Vector, int] | None] = {source: None}
    queue = deque([source])
    while queue:
        cur = queue.popleft()
        if cur == target:
            break
        for i in gens:
            nxt = rs.simple_reflect(i, cur)
            if nxt not in parent:
                parent[nxt] = (cur, i)
                queue.append(nxt)
    applied = []
    node = target
    while parent[node] is not None:
        node, i = parent[node]
        applied.append(i)
    # applied lists letters from the last application back to the first
    return WeylWord(tuple(applied))
