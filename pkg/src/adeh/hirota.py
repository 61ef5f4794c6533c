"""Hirota quadratic equations in the (zeta, t_m) presentation.

The kernel for the i-th Coxeter orbit is

    g_i exp(sum_m 2 beta_{i,m} hbar^(-1/2) y_m zeta^m)
        exp(-sum_m beta*_{i,m} hbar^(1/2) d/dy_m zeta^(-m) / m)

and the hierarchy is: zeta^0 part of the sum over orbits, minus
(2h sum_m m y_m d/dy_m + <rho, rho>), applied to Phi(x+y) Phi(x-y), vanishes.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable, Iterator, Mapping, Sequence

from .coefficients import CoeffTable, coeff_table, rho_norm
from .cyclo import CycloNum, parse_rational
from .roots import AdeType, RootSystem, build_root_system
from .spectral import CoxeterData, coxeter_data

__all__ = [
    "HVar",
    "DiffPoly",
    "HirotaSystem",
    "TauSeries",
    "TruncationError",
    "variables",
    "kw_kernel",
    "zeta0_part",
    "generate",
    "to_q_variables",
    "apply",
    "orbit_sum_zeta0",
    "lambda_presentation_check",
]


@dataclass(frozen=True, order=True)
class HVar:
    """The variable t_m (or x_m, y_m); ``tag`` separates equal weights in D_even."""

    m: int
    tag: int = 0

    @property
    def weight(self) -> int:
        return self.m

    def to_json(self) -> list[int]:
        return [self.m] if not self.tag else [self.m, self.tag]

    def __str__(self) -> str:
        return f"{self.m}" if not self.tag else f"{self.m}.{self.tag}"


# A monomial is a sorted tuple of (HVar, exponent) pairs with positive exponents.
Monomial = tuple[tuple[HVar, int], ...]
ONE: Monomial = ()


def mono_weight(mono: Monomial) -> int:
    return sum(v.m * a for v, a in mono)


def mono_degree(mono: Monomial) -> int:
    return sum(a for _, a in mono)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_json(mono: Monomial) -> list[list[int]]:
    return [v.to_json()[:1] + [a] + v.to_json()[1:] for v, a in mono]


def mono_from_json(data) -> Monomial:
    d: dict[HVar, int] = {}
    for item in data:
        if not isinstance(item, list) or len(item) not in (2, 3):
            raise ValueError(f"bad monomial entry {item!r}")
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in item):
            raise ValueError(f"bad monomial entry {item!r}")
        m, a = item[0], item[1]
        tag = item[2] if len(item) == 3 else 0
        if m < 1 or a < 1 or tag < 0:
            raise ValueError(f"bad monomial entry {item!r}")
        v = HVar(m, tag)
        d[v] = d.get(v, 0) + a
    return tuple(sorted(d.items()))


def mono_str(mono: Monomial, name: str) -> str:
    if not mono:
        return "1"
    parts = []
    for v, a in mono:
        s = f"{name}{v}"
        parts.append(s if a == 1 else f"{s}^{a}")
    return "*".join(parts)


def monomials_of_weight(vs: Sequence[HVar], w: int) -> Iterator[Monomial]:
    """All monomials in ``vs`` of total weight exactly w, in a fixed order."""
    vs = sorted(vs)

    def rec(j: int, left: int):
        if left == 0:
            yield ()
            return
        if j == len(vs):
            return
        v = vs[j]
        for a in range(left // v.m, -1, -1):
            for rest in rec(j + 1, left - a * v.m):
                yield (((v, a),) if a else ()) + rest

    yield from rec(0, w)


def variables(cd: CoxeterData, max_weight: int) -> tuple[HVar, ...]:
    """Variables t_m with m in E_+ and m <= max_weight."""
    out = []
    for mbar, tag in cd.keys:
        m = mbar
        while m <= max_weight:
            out.append(HVar(m, tag))
            m += cd.h
    return tuple(sorted(out))


def _key(cd: CoxeterData, v: HVar) -> tuple[int, int]:
    return (v.m % cd.h, v.tag)


@dataclass(frozen=True)
class DiffPoly:
    """sum of coeff * hbar^(k/2) * y^mono * d^mono, canonically merged and sorted."""

    terms: tuple[tuple[CycloNum, int, Monomial, Monomial], ...] = ()

    @classmethod
    def build(cls, terms: Iterable[tuple[CycloNum, int, Monomial, Monomial]]) -> "DiffPoly":
        acc: dict[tuple[int, Monomial, Monomial], CycloNum] = {}
        for c, k, y, d in terms:
            key = (k, y, d)
            acc[key] = acc[key] + c if key in acc else c
        out = [(c, k, y, d) for (k, y, d), c in acc.items() if not c.is_zero()]
        out.sort(key=lambda t: (t[2], t[3], t[1]))
        return cls(tuple(out))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def weights(self) -> set[tuple[int, int]]:
        """(y-weight, d-weight) pairs occurring in the terms."""
        return {(mono_weight(y), mono_weight(d)) for _, _, y, d in self.terms}

    def scale(self, c) -> "DiffPoly":
        return DiffPoly.build((t[0] * c, t[1], t[2], t[3]) for t in self.terms)

    def to_json(self) -> list[dict]:
        return [
            {"coeff": c.to_json(), "hbar_half": k, "y": mono_json(y), "d": mono_json(d)}
            for c, k, y, d in self.terms
        ]

    @classmethod
    def from_json(cls, data: list) -> "DiffPoly":
        return cls.build(
            (CycloNum.from_json(t["coeff"]), int(t["hbar_half"]), mono_from_json(t["y"]), mono_from_json(t["d"]))
            for t in data
        )

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for c, k, y, d in self.terms:
            s = f"({c})"
            if k:
                s += f"*hbar^({k}/2)"
            if y:
                s += "*" + mono_str(y, "y")
            if d:
                s += "*" + mono_str(d, "d")
            parts.append(s)
        return " + ".join(parts)


@dataclass(frozen=True)
class HirotaSystem:
    ade_type: AdeType
    h: int
    max_weight: int
    variables: tuple[HVar, ...]
    equations: dict  # Monomial -> DiffPoly, every y-monomial of weight <= max_weight
    rho_norm: Fraction

    @property
    def rhs_descriptor(self) -> str:
        return f"{2 * self.h} sum_m m y_m d/dy_m + {self.rho_norm}"

    def nonzero(self) -> dict:
        return {k: p for k, p in self.equations.items() if p}

    def counts_by_weight(self) -> dict[int, int]:
        counts = {w: 0 for w in range(self.max_weight + 1)}
        for mono, p in self.equations.items():
            if p:
                counts[mono_weight(mono)] += 1
        return counts

    def to_json(self) -> dict:
        return {
            "type": str(self.ade_type),
            "h": self.h,
            "max_weight": self.max_weight,
            "rho_norm": str(self.rho_norm),
            "variables": [v.to_json() for v in self.variables],
            "equations": [
                {"y_monomial": mono_json(mono), "terms": self.equations[mono].to_json()}
                for mono in sorted(self.equations, key=lambda m: (mono_weight(m), m))
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "HirotaSystem":
        t = AdeType.parse(data["type"])
        eqs = {mono_from_json(e["y_monomial"]): DiffPoly.from_json(e["terms"]) for e in data["equations"]}
        vs = tuple(sorted(HVar(*v) for v in data["variables"]))
        return cls(t, int(data["h"]), int(data["max_weight"]), vs, eqs, parse_rational(data["rho_norm"]))


# kernels -----------------------------------------------------------------


def _creation(cd: CoxeterData, beta: Mapping, v: HVar) -> CycloNum:
    return beta[_key(cd, v)] * 2


def _annihilation(cd: CoxeterData, beta_dual: Mapping, v: HVar) -> CycloNum:
    return -beta_dual[_key(cd, v)] / v.m


def _exp_coeff(coeffs: Mapping[HVar, CycloNum], mono: Monomial, h: int) -> CycloNum:
    out = CycloNum.one(h)
    for v, a in mono:
        out = out * coeffs[v] ** a / factorial(a)
    return out


def kw_kernel(cd: CoxeterData, ct: CoeffTable, i: int, max_zeta: int) -> dict[int, DiffPoly]:
    """Normal-ordered kernel of the i-th orbit (0-based), by zeta-degree in [-max_zeta, max_zeta]."""
    if max_zeta < 0:
        raise ValueError("max_zeta must be >= 0")
    vs = variables(cd, max_zeta)
    cre = {v: _creation(cd, cd.beta[i], v) for v in vs}
    ann = {v: _annihilation(cd, cd.beta_dual[i], v) for v in vs}
    ys = [(w, y, _exp_coeff(cre, y, cd.h)) for w in range(max_zeta + 1) for y in monomials_of_weight(vs, w)]
    ds = [(w, d, _exp_coeff(ann, d, cd.h)) for w in range(max_zeta + 1) for d in monomials_of_weight(vs, w)]
    g = ct.g_values[i]
    by_deg: dict[int, list] = defaultdict(list)
    for wy, y, cy in ys:
        for wd, d, cdd in ds:
            deg = wy - wd
            if abs(deg) <= max_zeta:
                by_deg[deg].append((g * cy * cdd, mono_degree(d) - mono_degree(y), y, d))
    return {deg: DiffPoly.build(terms) for deg, terms in sorted(by_deg.items())}


def zeta0_part(cd: CoxeterData, beta: Mapping, beta_dual: Mapping, weight: Fraction | CycloNum | int,
               max_weight: int) -> dict[Monomial, DiffPoly]:
    """zeta^0 part of weight * exp(creation) exp(annihilation), grouped by y-monomial."""
    vs = variables(cd, max_weight)
    cre = {v: _creation(cd, beta, v) for v in vs}
    ann = {v: _annihilation(cd, beta_dual, v) for v in vs}
    out = {}
    for w in range(max_weight + 1):
        ds = [(d, _exp_coeff(ann, d, cd.h)) for d in monomials_of_weight(vs, w)]
        for y in monomials_of_weight(vs, w):
            cy = _exp_coeff(cre, y, cd.h) * weight
            out[y] = DiffPoly.build(
                (cy * cdd, mono_degree(d) - mono_degree(y), y, d) for d, cdd in ds
            )
    return out


def generate(
    rs: RootSystem | AdeType | str,
    cd: CoxeterData | None = None,
    ct: CoeffTable | None = None,
    max_weight: int = 0,
) -> HirotaSystem:
    if max_weight < 0:
        raise ValueError("max_weight must be >= 0")
    if not isinstance(rs, RootSystem):
        rs = build_root_system(rs)
    cd = cd or coxeter_data(rs)
    ct = ct or coeff_table(rs, cd)
    h = cd.h
    vs = variables(cd, max_weight)
    collected: dict[Monomial, list] = defaultdict(list)
    for i in range(rs.rank):
        part = zeta0_part(cd, cd.beta[i], cd.beta_dual[i], ct.g_values[i], max_weight)
        for y, p in part.items():
            collected[y].extend(p.terms)
    rho = rho_norm(rs)
    collected[ONE].append((CycloNum.rational(h, -rho), 0, ONE, ONE))
    for v in vs:
        y = ((v, 1),)
        collected[y].append((CycloNum.rational(h, -2 * h * v.m), 0, y, y))
    eqs = {y: DiffPoly.build(collected[y]) for y in sorted(collected, key=lambda m: (mono_weight(m), m))}
    return HirotaSystem(rs.ade_type, h, max_weight, vs, eqs, rho)


def orbit_sum_zeta0(rs: RootSystem, cd: CoxeterData, ct: CoeffTable, i: int, max_weight: int) -> dict[Monomial, DiffPoly]:
    """zeta^0 part of (g_i/h) times the sum of kernels over every root of the i-th orbit.

    Coordinates of each orbit element are solved for directly, not derived from
    the representative, so agreement with the representative kernel checks that
    the zeta^0 extraction does not depend on the choice of branch zeta -> zeta_h^k zeta.
    """
    from .roots import coxeter_orbits

    orbit = coxeter_orbits(rs, cd.M)[i]
    weight = ct.g_values[i] / cd.h
    collected: dict[Monomial, list] = defaultdict(list)
    for root in orbit:
        beta = cd.coordinates(root)
        dual = cd.dual_coordinates(root)
        for y, p in zeta0_part(cd, beta, dual, weight, max_weight).items():
            collected[y].extend(p.terms)
    return {y: DiffPoly.build(t) for y, t in collected.items()}


# changes of variables ----------------------------------------------------


def to_q_variables(sys_or_cd: HirotaSystem | CoxeterData, max_weight: int | None = None) -> dict:
    """Rescaling q_k^a = prod_{r=0}^k (m_a + r h) t_{m_a + k h}, per variable.

    Returns {"factors": {HVar: int}, "index": {HVar: (mbar, tag, k)}, "split": ...}.
    """
    if isinstance(sys_or_cd, HirotaSystem):
        h, vs = sys_or_cd.h, sys_or_cd.variables
    else:
        h = sys_or_cd.h
        vs = variables(sys_or_cd, max_weight if max_weight is not None else h)
    factors = {}
    index = {}
    for v in vs:
        mbar, k = v.m % h, v.m // h
        f = 1
        for r in range(k + 1):
            f *= mbar + r * h
        factors[v] = f
        index[v] = (mbar, v.tag, k)
    return {"factors": factors, "index": index, "split": "x_m = (t'_m + t''_m)/2, y_m = (t'_m - t''_m)/2"}


def from_q_index(h: int, mbar: int, tag: int, k: int) -> HVar:
    return HVar(mbar + k * h, tag)


@dataclass(frozen=True)
class _Power:
    """c * (h lambda)^s."""

    c: CycloNum
    s: Fraction

    def diff(self, h: int) -> "_Power":
        return _Power(self.c * (self.s * h), self.s - 1)

    def integrate(self, h: int) -> "_Power":
        return _Power(self.c / (h * (self.s + 1)), self.s + 1)


def lambda_presentation_check(cd: CoxeterData, max_weight: int = 2) -> list[str]:
    """Rebuild the vertex-operator exponents from period components in lambda.

    Components beta m^-1 (h lambda)^(m/h) are integrated / differentiated in
    lambda, rescaled to t-variables, and compared with the kernel coefficients
    (zeta = (h lambda)^(1/h)).  Returns a list of mismatch descriptions.
    """
    h = cd.h
    q = to_q_variables(cd, max_weight)
    problems = []
    for i in range(len(cd.reps)):
        for v in variables(cd, max_weight):
            mbar, tag, k = q["index"][v]
            key = (mbar, tag)
            # creation: k-fold antiderivative of I^(-1), doubled by t' - t'' = 2y
            p = _Power(cd.beta[i][key] / mbar, Fraction(mbar, h))
            for _ in range(k):
                p = p.integrate(h)
            cre = p.c * q["factors"][v] * 2
            if p.s * h != v.m or cre != _creation(cd, cd.beta[i], v):
                problems.append(f"orbit {i + 1}, t_{v}: creation mismatch")
            # annihilation: -(-1)^k (d/dlambda)^(k+1) of the dual component
            p = _Power(cd.beta_dual[i][key] / (h - mbar), Fraction(h - mbar, h))
            for _ in range(k + 1):
                p = p.diff(h)
            ann = p.c * (-1 if k % 2 == 0 else 1) / q["factors"][v]
            if p.s * h != -v.m or ann != _annihilation(cd, cd.beta_dual[i], v):
                problems.append(f"orbit {i + 1}, t_{v}: annihilation mismatch")
    return problems


# tau series --------------------------------------------------------------


class TruncationError(ValueError):
    pass


# hbar polynomial: {half_power: CycloNum}
HbarPoly = dict


def _hp_add(a: HbarPoly, b: HbarPoly) -> HbarPoly:
    out = dict(a)
    for k, c in b.items():
        out[k] = out[k] + c if k in out else c
    return {k: c for k, c in out.items() if not c.is_zero()}


def _hp_mul(a: HbarPoly, b: HbarPoly) -> HbarPoly:
    out: dict[int, CycloNum] = {}
    for k1, c1 in a.items():
        for k2, c2 in b.items():
            k = k1 + k2
            c = c1 * c2
            out[k] = out[k] + c if k in out else c
    return {k: c for k, c in out.items() if not c.is_zero()}


def _hp_scale(a: HbarPoly, c, shift: int = 0) -> HbarPoly:
    out = {k + shift: x * c for k, x in a.items()}
    return {k: x for k, x in out.items() if not x.is_zero()}


@dataclass
class TauSeries:
    """Truncated Phi = sum over monomials in t of (polynomial in hbar^(+-1/2)) t^mono."""

    truncation_weight: int
    coeffs: dict = field(default_factory=dict)  # Monomial -> HbarPoly
    order: int = 1  # cyclotomic order of the coefficients

    def __post_init__(self):
        for mono in self.coeffs:
            if mono_weight(mono) > self.truncation_weight:
                raise ValueError(f"monomial {mono_str(mono, 't')} exceeds truncation weight")

    @property
    def variables(self) -> tuple[HVar, ...]:
        return tuple(sorted({v for mono in self.coeffs for v, _ in mono}))

    @classmethod
    def one(cls, truncation_weight: int, order: int = 1) -> "TauSeries":
        return cls(truncation_weight, {ONE: {0: CycloNum.one(order)}}, order)

    def with_order(self, h: int) -> "TauSeries":
        """Re-express all coefficients in Q(zeta_h) (they must be rational or already there)."""
        if self.order == h:
            return self
        out = {}
        for mono, hp in self.coeffs.items():
            out[mono] = {k: CycloNum.rational(h, c.to_fraction()) for k, c in hp.items()}
        return TauSeries(self.truncation_weight, out, h)

    @classmethod
    def exp_linear(cls, linear: Mapping[HVar, CycloNum], truncation_weight: int, hbar_half: int = -1,
                   constant: CycloNum | None = None, order: int | None = None) -> "TauSeries":
        """constant + exp(hbar^(k/2) sum_v c_v t_v), truncated; ``constant`` defaults to none."""
        h = order or next(iter(linear.values())).order
        vs = sorted(linear)
        coeffs: dict[Monomial, HbarPoly] = {}
        for w in range(truncation_weight + 1):
            for mono in monomials_of_weight(vs, w):
                c = _exp_coeff(linear, mono, h)
                if not c.is_zero():
                    coeffs[mono] = {hbar_half * mono_degree(mono): c}
        if constant is not None:
            coeffs[ONE] = _hp_add(coeffs.get(ONE, {}), {0: constant})
        return cls(truncation_weight, coeffs, h)

    def to_json(self) -> dict:
        rows = []
        for mono in sorted(self.coeffs, key=lambda m: (mono_weight(m), m)):
            hp = []
            for k in sorted(self.coeffs[mono]):
                c = self.coeffs[mono][k]
                hp.append([str(c.to_fraction()) if c.is_rational() else c.to_json(), k])
            rows.append({"monomial": mono_json(mono), "hbar_poly": hp})
        return {"truncation_weight": self.truncation_weight, "coeffs": rows}

    @classmethod
    def from_json(cls, data: dict) -> "TauSeries":
        if not isinstance(data, dict) or "truncation_weight" not in data or "coeffs" not in data:
            raise ValueError("tau file needs 'truncation_weight' and 'coeffs'")
        T = data["truncation_weight"]
        if not isinstance(T, int) or isinstance(T, bool) or T < 0:
            raise ValueError("truncation_weight must be a non-negative integer")
        raw = []
        order = 1
        for row in data["coeffs"]:
            mono = mono_from_json(row["monomial"])
            terms = []
            for entry in row["hbar_poly"]:
                if not isinstance(entry, list) or len(entry) != 2 or not isinstance(entry[1], int):
                    raise ValueError(f"bad hbar_poly entry {entry!r}")
                c = entry[0]
                if isinstance(c, dict):
                    c = CycloNum.from_json(c)
                    if order not in (1, c.order):
                        raise ValueError("mixed cyclotomic orders in tau file")
                    order = c.order
                else:
                    c = parse_rational(c)
                terms.append((entry[1], c))
            raw.append((mono, terms))
        coeffs: dict[Monomial, HbarPoly] = {}
        for mono, terms in raw:
            hp = coeffs.get(mono, {})
            for k, c in terms:
                c = c if isinstance(c, CycloNum) else CycloNum.rational(order, c)
                hp = _hp_add(hp, {k: c})
            coeffs[mono] = hp
        return cls(T, coeffs, order)


def _shifted(tau: TauSeries, sign: int) -> dict[tuple[Monomial, Monomial], HbarPoly]:
    """Phi(x + sign*y) as a map (x-monomial, y-monomial) -> hbar polynomial."""
    out: dict[tuple[Monomial, Monomial], HbarPoly] = {}
    for mono, hp in tau.coeffs.items():
        # prod_v (x_v + s y_v)^a = prod_v sum_j C(a, j) x_v^(a-j) (s y_v)^j
        parts = [((), (), 1)]
        for v, a in mono:
            new = []
            for xm, ym, c in parts:
                for j in range(a + 1):
                    cc = c * factorial(a) // (factorial(j) * factorial(a - j)) * sign ** j
                    xm2 = xm + (((v, a - j),) if a - j else ())
                    ym2 = ym + (((v, j),) if j else ())
                    new.append((xm2, ym2, cc))
            parts = new
        for xm, ym, c in parts:
            key = (tuple(sorted(xm)), tuple(sorted(ym)))
            out[key] = _hp_add(out.get(key, {}), _hp_scale(hp, c))
    return out


def _doubled(tau: TauSeries) -> dict[tuple[Monomial, Monomial], HbarPoly]:
    """Phi(x+y) Phi(x-y) truncated at the tau truncation weight."""
    T = tau.truncation_weight
    plus = [(k, v, mono_weight(k[0]) + mono_weight(k[1])) for k, v in _shifted(tau, 1).items()]
    minus = [(k, v, mono_weight(k[0]) + mono_weight(k[1])) for k, v in _shifted(tau, -1).items()]
    out: dict[tuple[Monomial, Monomial], HbarPoly] = {}
    for (x1, y1), p1, w1 in plus:
        for (x2, y2), p2, w2 in minus:
            if w1 + w2 > T:
                continue
            key = (mono_mul(x1, x2), mono_mul(y1, y2))
            out[key] = _hp_add(out.get(key, {}), _hp_mul(p1, p2))
    return {k: v for k, v in out.items() if v}


def _differentiate(ym: Monomial, d: Monomial) -> tuple[Monomial, int] | None:
    e = dict(ym)
    c = 1
    for v, a in d:
        b = e.get(v, 0)
        if b < a:
            return None
        c *= factorial(b) // factorial(b - a)
        if b == a:
            del e[v]
        else:
            e[v] = b - a
    return tuple(sorted(e.items())), c


@dataclass(frozen=True)
class Residual:
    y_monomial: Monomial
    x_monomial: Monomial
    hbar_poly: dict

    def to_json(self) -> dict:
        return {
            "y_monomial": mono_json(self.y_monomial),
            "x_monomial": mono_json(self.x_monomial),
            "hbar_poly": [[c.to_json(), k] for k, c in sorted(self.hbar_poly.items())],
        }

    def __str__(self) -> str:
        hp = " + ".join(f"({c})*hbar^({k}/2)" for k, c in sorted(self.hbar_poly.items()))
        return f"[{mono_str(self.y_monomial, 'y')} {mono_str(self.x_monomial, 'x')}] {hp}"


def apply(sys: HirotaSystem, tau: TauSeries) -> list[Residual]:
    """Nonzero Taylor coefficients of (sum_mu y^mu P_mu(d_y)) Phi(x+y) Phi(x-y).

    Only coefficients that the truncations determine completely are reported:
    y-weight <= max_weight and total weight <= truncation_weight.
    """
    W, T = sys.max_weight, tau.truncation_weight
    if T < W:
        raise TruncationError(f"max weight {W} requires truncation >= {W}, got {T}")
    h = sys.h
    for v in tau.variables:
        if not any(u.m % h == v.m % h and u.tag == v.tag for u in _residues(sys)):
            raise ValueError(f"tau variable t_{v} is not indexed by E_+ for {sys.ade_type}")
    tau = tau.with_order(h) if tau.order != h else tau
    G = _doubled(tau)
    F: dict[tuple[Monomial, Monomial], HbarPoly] = {}
    for mu, poly in sys.equations.items():
        for c, k, _y, d in poly.terms:
            for (xm, ym), hp in G.items():
                r = _differentiate(ym, d)
                if r is None:
                    continue
                rest, falling = r
                ynew = mono_mul(rest, mu)
                wy = mono_weight(ynew)
                if wy > W or wy + mono_weight(xm) > T:
                    continue
                key = (ynew, xm)
                F[key] = _hp_add(F.get(key, {}), _hp_scale(hp, c * falling, k))
    out = [Residual(y, x, hp) for (y, x), hp in F.items() if hp]
    out.sort(key=lambda r: (mono_weight(r.y_monomial), r.y_monomial, mono_weight(r.x_monomial), r.x_monomial))
    return out


def _residues(sys: HirotaSystem) -> list[HVar]:
    # residue classes of E_+ for the type (the system may be too small to show them all)
    cd = coxeter_data(build_root_system(sys.ade_type))
    return [HVar(m, tag) for m, tag in cd.keys]
