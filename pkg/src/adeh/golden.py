"""Golden g_i tables shipped with the package, one JSON file per type."""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .coefficients import E7_U_TABLE, E8_U_TABLE, closed_form_reference, family_sum
from .cyclo import CycloNum
from .roots import AdeType

ALL_TYPES = tuple(
    [f"A{n}" for n in range(1, 9)] + [f"D{n}" for n in range(4, 9)] + ["E6", "E7", "E8"]
)

_FORMULAS = {
    "A": "g_i = (N+1)/(2 - eta^i - eta^-i), eta = zeta_(N+1)",
    "D": "g_i = (N-1)/2 (2 - eta^i - eta^-i)/(2 + eta^i + eta^-i) for i <= N-2, "
         "g_(N-1) = g_N = (N-1)^2/2, eta = zeta_(2N-2)",
    "E6": "g_1 = g_6 = 16 + 8 sqrt3, g_3 = g_5 = 16 - 8 sqrt3, g_2 = 7 + 4 sqrt3, g_4 = 7 - 4 sqrt3",
    "E7": "polynomials in u = cos(pi/9)",
    "E8": "polynomials in u = cos(pi/15)",
}


def golden_record(t: AdeType | str) -> dict:
    t = AdeType.parse(str(t))
    g = closed_form_reference(t)
    key = str(t) if t.family == "E" else t.family
    rec = {
        "type": str(t),
        "h": g[0].order,
        "formula": _FORMULAS[key],
        "g": [x.to_json() for x in g],
        "approx": [round(x.approx().real, 12) for x in g],
        "sum_g": str(family_sum(t)),
    }
    if str(t) in ("E7", "E8"):
        table = E7_U_TABLE if t.rank == 7 else E8_U_TABLE
        rec["u_poly"] = [[str(c) for c in row] for row in table]
    return rec


def load_u_table(t: AdeType | str, directory: str | Path | None = None) -> list[list[Fraction]]:
    """Coefficient rows of the g_i as polynomials in u (E_7 and E_8 files only)."""
    path = Path(directory or default_dir()) / f"{t}.json"
    with open(path) as fh:
        data = json.load(fh)
    return [[Fraction(c) for c in row] for row in data["u_poly"]]


def default_dir() -> Path:
    return Path(str(resources.files("adeh") / "data" / "golden"))


def load_golden(t: AdeType | str, directory: str | Path | None = None) -> tuple[CycloNum, ...]:
    path = Path(directory or default_dir()) / f"{t}.json"
    with open(path) as fh:
        data = json.load(fh)
    return tuple(CycloNum.from_json(x) for x in data["g"])


def write_golden(directory: str | Path | None = None) -> list[Path]:
    directory = Path(directory or default_dir())
    directory.mkdir(parents=True, exist_ok=True)
    out = []
    for t in ALL_TYPES:
        path = directory / f"{t}.json"
        path.write_text(json.dumps(golden_record(t), indent=1) + "\n")
        out.append(path)
    return out
