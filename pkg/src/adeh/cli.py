"""Command-line interface: roots, coeffs, hirota, check, verify.

Exit codes: 0 success, 1 a mathematical check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import mpmath

from . import acceptance
from .coefficients import coeff_table
from .golden import ALL_TYPES
from .hirota import TauSeries, TruncationError, apply, generate, mono_str
from .roots import SUPPORTED, AdeType, build_root_system, coxeter_orbits
from .spectral import coxeter_data

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _type(text: str) -> AdeType:
    try:
        return AdeType.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _digits(text: str) -> int:
    d = int(text)
    if not 1 <= d <= 50:
        raise argparse.ArgumentTypeError("--digits must be in 1..50")
    return d


def _weight(text: str) -> int:
    w = int(text)
    if w < 0:
        raise argparse.ArgumentTypeError("--max-weight must be >= 0")
    return w


def _emit(args, payload: dict | None, text: str) -> None:
    out = json.dumps(payload, indent=2) + "\n" if args.format == "json" else text
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)


def _decimal(x, digits: int) -> str:
    z = x.embed(digits)
    return mpmath.nstr(z.real, digits)


# subcommands ---------------------------------------------------------------


def cmd_roots(args) -> int:
    t = _type(args.type)
    rs = build_root_system(t)
    cd = coxeter_data(rs)
    orbits = coxeter_orbits(rs, cd.M)
    payload = {
        "type": str(t),
        "rank": rs.rank,
        "root_count": rs.root_count,
        "h": rs.coxeter_number,
        "exponents": list(cd.exponents),
        "cartan": [list(r) for r in rs.cartan],
        "orbits": [
            {
                "index": i + 1,
                "representative": list(orb[0]),
                "representative_ambient": [str(x) for x in rs.ambient(orb[0])],
                "size": len(orb),
            }
            for i, orb in enumerate(orbits)
        ],
    }
    lines = [
        f"type {t}: rank {rs.rank}, {rs.root_count} roots, h = {rs.coxeter_number}",
        "exponents " + " ".join(map(str, cd.exponents)),
    ]
    for o in payload["orbits"]:
        amb = "(" + ", ".join(o["representative_ambient"]) + ")"
        lines.append(f"orbit {o['index']}: {o['size']} roots, representative {amb}")
    _emit(args, payload, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_coeffs(args) -> int:
    t = _type(args.type)
    ct = coeff_table(t)
    rows = []
    for i, g in enumerate(ct.g_values, start=1):
        rows.append({"i": i, "exact": g.to_json(), "approx": float(_decimal(g, min(args.digits, 17))),
                     "decimal": _decimal(g, args.digits)})
    payload = {"type": str(t), "h": ct.h, "g": rows, "sum_g": str(ct.sum_g())}
    lines = [f"type {t}, h = {ct.h}"]
    for r, g in zip(rows, ct.g_values):
        exact = str(g.to_fraction()) if g.is_rational() else str(g)
        lines.append(f"g_{r['i']} = {r['decimal']}   exact {exact}")
    lines.append(f"sum g = {payload['sum_g']}")
    _emit(args, payload, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_hirota(args) -> int:
    t = _type(args.type)
    s = generate(t, max_weight=args.max_weight)
    counts = s.counts_by_weight()
    payload = s.to_json()
    payload["counts_by_weight"] = {str(k): v for k, v in counts.items()}
    eq0 = s.equations[()]
    summary = [f"type {t}, max weight {s.max_weight}, variables "
               + (" ".join(f"y{v}" for v in s.variables) or "none"),
               "weight-0 identity: " + ("satisfied" if not eq0 else f"violated ({eq0})"),
               "equations per weight: " + ", ".join(f"{k}: {v}" for k, v in counts.items())]
    if args.format == "json":
        if args.out:
            Path(args.out).write_text(json.dumps(payload, indent=2) + "\n")
            sys.stdout.write("\n".join(summary) + "\n")
        else:
            sys.stdout.write(json.dumps(payload, indent=2) + "\n")
            sys.stderr.write("\n".join(summary) + "\n")
    else:
        lines = list(summary)
        for mono, poly in s.nonzero().items():
            lines.append(f"[{mono_str(mono, 'y')}] {poly}")
        _emit(args, None, "\n".join(lines) + "\n")
    return EXIT_OK if not eq0 else EXIT_FAIL


def _load_tau(path: str) -> TauSeries:
    try:
        with open(path) as fh:
            data = json.load(fh)
        return TauSeries.from_json(data)
    except (OSError, json.JSONDecodeError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read tau file {path}: {exc}") from None


def cmd_check(args) -> int:
    t = _type(args.type)
    tau = _load_tau(args.tau)
    if tau.truncation_weight < args.max_weight:
        raise UsageError(
            f"max weight {args.max_weight} requires truncation >= {args.max_weight}, "
            f"tau file has {tau.truncation_weight}"
        )
    s = generate(t, max_weight=args.max_weight)
    try:
        res = apply(s, tau)
    except TruncationError as exc:
        raise UsageError(str(exc)) from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    payload = {
        "type": str(t),
        "max_weight": args.max_weight,
        "truncation_weight": tau.truncation_weight,
        "satisfied": not res,
        "residuals": [r.to_json() for r in res],
    }
    if res:
        lines = [f"{len(res)} nonzero residuals:"] + [str(r) for r in res]
    else:
        lines = [f"all residuals vanish up to weight {args.max_weight}"]
    _emit(args, payload, "\n".join(lines) + "\n")
    return EXIT_FAIL if res else EXIT_OK


def cmd_verify(args) -> int:
    if args.type and not args.all:
        types = [str(_type(args.type))]
        if types[0] not in ALL_TYPES:
            raise UsageError(f"verify covers {', '.join(ALL_TYPES)}")
    else:
        types = list(ALL_TYPES)
    if args.golden and not Path(args.golden).is_dir():
        raise UsageError(f"golden directory {args.golden} does not exist")
    checks = acceptance.build_checks(types, args.golden)
    results = acceptance.run_checks(checks)
    summary = acceptance.summarize(results)
    failed = [r for r in results if not r.passed]
    if args.format == "json":
        payload = {
            "types": types,
            "checks": [
                {"criterion": r.criterion, "type": r.type, "name": r.name, "passed": r.passed, "detail": r.detail}
                for r in results
            ],
            "criteria": {str(k): v for k, v in sorted(summary.items())},
            "failures": len(failed),
        }
        _emit(args, payload, "")
    else:
        lines = [r.line() for r in results]
        for k in sorted(summary):
            lines.append(f"criterion {k} ({acceptance.CRITERIA[k]}): {'PASS' if summary[k] else 'FAIL'}")
        lines.append(f"{len(results) - len(failed)}/{len(results)} checks passed")
        _emit(args, None, "\n".join(lines) + "\n")
    return EXIT_FAIL if failed else EXIT_OK


# parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="adeh", description="Exact Hirota data for ADE root systems.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, need_type=True):
        sp.add_argument("--type", required=need_type, help=f"root system: {SUPPORTED}")
        sp.add_argument("--format", choices=["json", "table"], default="json")
        sp.add_argument("--out", help="write output to this file instead of stdout")
        sp.add_argument("--digits", type=_digits, default=15, help="digits for decimal values (1..50)")

    sp = sub.add_parser("roots", help="root system summary")
    common(sp)
    sp.set_defaults(func=cmd_roots)

    sp = sub.add_parser("coeffs", help="vertex-operator coefficients g_i")
    common(sp)
    sp.set_defaults(func=cmd_coeffs)

    sp = sub.add_parser("hirota", help="generate the Hirota equations")
    common(sp)
    sp.add_argument("--max-weight", type=_weight, default=4)
    sp.set_defaults(func=cmd_hirota)

    sp = sub.add_parser("check", help="evaluate the equations on a truncated tau series")
    common(sp)
    sp.add_argument("--max-weight", type=_weight, default=4)
    sp.add_argument("--tau", required=True, help="tau series JSON file")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("verify", help="run the acceptance checks")
    common(sp, need_type=False)
    sp.add_argument("--all", action="store_true", help="all supported types (default)")
    sp.add_argument("--golden", help="directory with golden tables (defaults to the packaged ones)")
    sp.set_defaults(func=cmd_verify, format="table")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"adeh: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
