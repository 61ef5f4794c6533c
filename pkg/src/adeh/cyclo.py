"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are stored in the power basis 1, z, ..., z^(phi(n)-1) of Q(zeta_n),
reduced modulo the n-th cyclotomic polynomial, so equality is coefficient-wise.
Internally the coefficients are integers over one positive common denominator;
``CycloNum.coeffs`` exposes them as :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import mpmath

__all__ = [
    "CycloNum",
    "cyclotomic_poly",
    "cyclo_arith",
    "cyclo_galois",
    "embed_complex",
    "euler_phi",
    "parse_rational",
    "MAX_DIGITS",
]

MAX_DIGITS = 500


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (low-to-high), ``den`` monic."""
    num = list(num)
    dq = len(den) - 1
    out = [0] * (len(num) - dq)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + dq]
        out[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def _cyclotomic(n: int) -> tuple[int, ...]:
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly = _poly_divexact(poly, list(_cyclotomic(d)))
    return tuple(poly)


def cyclotomic_poly(n: int) -> list[int]:
    """Coefficients (constant term first) of the n-th cyclotomic polynomial.

    >>> cyclotomic_poly(12)
    [1, 0, -1, 0, 1]
    """
    if n < 1:
        raise ValueError(f"cyclotomic order must be >= 1, got {n}")
    return list(_cyclotomic(n))


class _Field:
    """Per-order tables: reductions of x^k modulo Phi_n and powers of zeta."""

    def __init__(self, n: int):
        self.n = n
        self.phi = euler_phi(n)
        self.poly = _cyclotomic(n)
        d = self.phi
        # x^k mod Phi_n for 0 <= k < max(2d - 1, n)
        top = max(2 * d - 1, n)
        table = []
        cur = [0] * d
        cur[0] = 1
        for _ in range(top):
            table.append(tuple(cur))
            # multiply by x
            carry = cur[-1]
            cur = [0] + cur[:-1]
            if carry:
                for j in range(d):
                    cur[j] -= carry * self.poly[j]
        self.xpow = table

    def reduce(self, coeffs: Sequence[int]) -> list[int]:
        d = self.phi
        out = list(coeffs[:d]) + [0] * max(0, d - len(coeffs))
        for k in range(d, len(coeffs)):
            c = coeffs[k]
            if c:
                row = self.xpow[k]
                for j in range(d):
                    out[j] += c * row[j]
        return out


@lru_cache(maxsize=None)
def _field(n: int) -> _Field:
    return _Field(n)


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse a decimal-free rational such as ``"-3/2"`` or ``"7"``."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    s = str(text).strip()
    if not s or any(ch in s for ch in ".eE"):
        raise ValueError(f"not a decimal-free rational: {text!r}")
    return Fraction(s)


class CycloNum:
    """An element of Q(zeta_n), immutable and hashable."""

    __slots__ = ("order", "_num", "_den")

    def __init__(self, order: int, coeffs: Iterable[int | Fraction] = ()):
        if order < 1:
            raise ValueError(f"cyclotomic order must be >= 1, got {order}")
        F = _field(order)
        vals = [Fraction(c) for c in coeffs]
        if len(vals) > F.phi:
            raise ValueError(f"expected at most {F.phi} coefficients for order {order}")
        vals += [Fraction(0)] * (F.phi - len(vals))
        den = math.lcm(*(v.denominator for v in vals)) if vals else 1
        self._set(order, [int(v * den) for v in vals], den)

    def _set(self, order: int, num: list[int], den: int) -> None:
        g = math.gcd(den, *num)
        if g != 1:
            num = [x // g for x in num]
            den //= g
        self.order = order
        self._num = tuple(num)
        self._den = den

    @classmethod
    def _raw(cls, order: int, num: list[int], den: int) -> "CycloNum":
        obj = cls.__new__(cls)
        if den < 0:
            num, den = [-x for x in num], -den
        obj._set(order, num, den)
        return obj

    # constructors ---------------------------------------------------------

    @classmethod
    def rational(cls, order: int, value: int | Fraction | str) -> "CycloNum":
        q = parse_rational(value)
        d = _field(order).phi
        return cls._raw(order, [q.numerator] + [0] * (d - 1), q.denominator)

    @classmethod
    def zero(cls, order: int) -> "CycloNum":
        return cls.rational(order, 0)

    @classmethod
    def one(cls, order: int) -> "CycloNum":
        return cls.rational(order, 1)

    @classmethod
    def zeta(cls, order: int, k: int = 1) -> "CycloNum":
        """zeta_n^k for any integer k."""
        F = _field(order)
        return cls._raw(order, list(F.xpow[k % order]), 1)

    @classmethod
    def from_int_poly(cls, order: int, coeffs: Sequence[int], den: int = 1) -> "CycloNum":
        """Sum c_k zeta^k for an arbitrary-length integer coefficient list."""
        F = _field(order)
        acc = [0] * F.phi
        for k, c in enumerate(coeffs):
            if c:
                row = F.xpow[k % order]
                for j in range(F.phi):
                    acc[j] += c * row[j]
        return cls._raw(order, acc, den)

    # accessors ------------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self._den) for x in self._num)

    @property
    def degree(self) -> int:
        return len(self._num)

    def is_zero(self) -> bool:
        return not any(self._num)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self._num[0], self._den)

    def is_real(self) -> bool:
        """Fixed by complex conjugation zeta -> zeta^-1."""
        return self == self.conj()

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "CycloNum":
        if isinstance(other, CycloNum):
            if other.order != self.order:
                raise ValueError(
                    f"cyclotomic order mismatch: {self.order} vs {other.order}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNum.rational(self.order, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        da, db = self._den, o._den
        return CycloNum._raw(
            self.order, [a * db + b * da for a, b in zip(self._num, o._num)], da * db
        )

    __radd__ = __add__

    def __neg__(self):
        return CycloNum._raw(self.order, [-a for a in self._num], self._den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CycloNum._raw(
                self.order, [a * q.numerator for a in self._num], self._den * q.denominator
            )
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self._num, o._num
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return CycloNum._raw(self.order, _field(self.order).reduce(prod), self._den * o._den)

    __rmul__ = __mul__

    def inverse(self) -> "CycloNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_%d)" % self.order)
        F = _field(self.order)
        inv = _poly_inverse_mod([Fraction(x) for x in self._num], [Fraction(c) for c in F.poly])
        return CycloNum(self.order, [c * self._den for c in inv])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = CycloNum.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparisons ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.to_fraction() == other
        if not isinstance(other, CycloNum):
            return NotImplemented
        return (self.order, self._num, self._den) == (other.order, other._num, other._den)

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(self._num[0], self._den))
        return hash((self.order, self._num, self._den))

    # galois / embedding ---------------------------------------------------

    def galois(self, k: int) -> "CycloNum":
        """Apply the automorphism zeta -> zeta^k (k coprime to the order)."""
        n = self.order
        if math.gcd(k, n) != 1:
            raise ValueError(f"k={k} is not coprime to the order {n}")
        coeffs = [0] * n
        for j, c in enumerate(self._num):
            if c:
                coeffs[(j * k) % n] += c
        return CycloNum.from_int_poly(n, coeffs, self._den)

    def conj(self) -> "CycloNum":
        return self.galois(-1)

    def embed(self, digits: int = 15) -> mpmath.mpc:
        return embed_complex(self, digits)

    def approx(self) -> complex:
        return complex(embed_complex(self, 17))

    # serialization --------------------------------------------------------

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "CycloNum":
        try:
            order = int(data["order"])
            coeffs = [parse_rational(c) for c in data["coeffs"]]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed CycloNum: {data!r}") from exc
        if len(coeffs) != euler_phi(order):
            raise ValueError(
                f"order {order} needs {euler_phi(order)} coefficients, got {len(coeffs)}"
            )
        return cls(order, coeffs)

    def __repr__(self) -> str:
        return f"CycloNum({self})"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else (f"z{self.order}" if k == 1 else f"z{self.order}^{k}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    if len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        k = len(a) - len(b)
        q[k] = c
        for j, bj in enumerate(b):
            a[k + j] -= c * bj
        _poly_trim(a)
    return q, a


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _poly_trim([x - y for x, y in zip(a, b)])


def _poly_inverse_mod(a: list[Fraction], m: list[Fraction]) -> list[Fraction]:
    """Inverse of a modulo m over Q via the extended Euclidean algorithm."""
    r0, r1 = _poly_trim(list(m)), _poly_trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if not r1:
        raise ZeroDivisionError("element is not invertible")
    c = r1[0]
    return [x / c for x in s1]


def cyclo_arith(a: CycloNum, b: CycloNum, op: str) -> CycloNum:
    """Field operation ``op`` in {"add", "sub", "mul", "div"}."""
    if a.order != b.order:
        raise ValueError(f"cyclotomic order mismatch: {a.order} vs {b.order}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def cyclo_galois(a: CycloNum, k: int) -> CycloNum:
    return a.galois(k)


def embed_complex(a: CycloNum, digits: int = 15) -> mpmath.mpc:
    """Numerical value of ``a`` under zeta_n = exp(2 pi i / n).

    Evaluated with 10 guard digits; the absolute error is below
    10**-digits * sum(|c_k|), the sum of the absolute power-basis coefficients.
    """
    if not 1 <= digits <= MAX_DIGITS:
        raise ValueError(f"digits must be in 1..{MAX_DIGITS}")
    with mpmath.workdps(digits + 10):
        n = a.order
        total = mpmath.mpc(0)
        for k, c in enumerate(a.coeffs):
            if c:
                total += mpmath.mpf(c.numerator) / c.denominator * mpmath.expjpi(mpmath.mpf(2 * k) / n)
        return +total
