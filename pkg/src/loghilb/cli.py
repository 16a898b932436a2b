"""Command-line front end.

Subcommands expose the fan constructions, the Chow-ring presentations with
their graded groups, the strata enumeration and the generating-function
tables, each with JSON, CSV or aligned-text output.  Every command is
deterministic, and the exit code reports the result of any cross-check the
command runs internally: 0 for success, 2 for invalid parameters, 3 for a
failed check.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Dict, List, Optional, Sequence

from .chow import (
    BaseRing,
    compare_presentations,
    graded_groups,
    ideals_equal,
    iterated_keel,
    sr_presentation,
    stratum_cycle_class,
    thmD_presentation,
)
from .fan import (
    FanError,
    StackyFan,
    fan_motive,
    hilb_fan,
    hilb_fan_two_sided,
)
from .poly import MultiPoly
from .strata import (
    MOTIVIC_P1,
    ProfileError,
    StratumProfile,
    ZetaMode,
    closed_form,
    enumerate_profiles,
    parse_profile,
    stabilizer_bounds,
    strata_sum,
    stratum_class,
)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CHECK_FAILED = 3

# caps chosen from measured runtimes on a laptop-class machine
MAX_N_FAN = 6
MAX_N_GROUPS = 4
MAX_N_MOTIVE = 12


class UsageError(ValueError):
    """Invalid parameter combination detected after parsing."""


def _cap(default: int) -> int:
    override = os.environ.get("LOGHILB_MAX_N")
    if override is not None:
        try:
            return int(override)
        except ValueError:
            raise UsageError(f"LOGHILB_MAX_N is not an integer: {override!r}")
    return default


def _check_cap(n: int, cap: int, what: str, force: bool) -> None:
    if n < 0:
        raise UsageError(f"{what}: n must be non-negative")
    if n > cap and not force:
        raise UsageError(
            f"{what}: n = {n} exceeds the safety cap {cap} "
            "(pass --force or set LOGHILB_MAX_N to override)"
        )


def _emit(payload: dict, rows: List[dict], args: argparse.Namespace) -> None:
    """Write the command result in the requested format.

    ``payload`` is the full JSON document; ``rows`` is its flat tabular
    part, used for CSV and aligned text.
    """
    fmt = args.format
    if fmt == "json":
        payload = dict(payload)
        payload["schema_version"] = SCHEMA_VERSION
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
            writer.writeheader()
            for row in rows:
                writer.writerow(row)
        text = buf.getvalue()
    else:
        lines = []
        if rows:
            headers = list(rows[0].keys())
            table = [headers] + [[str(r[h]) for h in headers] for r in rows]
            widths = [max(len(r[i]) for r in table) for i in range(len(headers))]
            for r in table:
                lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
        for key, value in payload.items():
            if key != "rows":
                lines.append(f"{key}: {value}")
        text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _groups_summary(pres) -> List[dict]:
    return [
        {"degree": g.degree, "rank": g.rank, "torsion": list(g.torsion)}
        for g in graded_groups(pres)
    ]


# ---------------------------------------------------------------------------
# subcommands


def cmd_fan(args: argparse.Namespace) -> int:
    _check_cap(args.n, _cap(MAX_N_FAN), "fan", args.force)
    if args.n < 1:
        raise UsageError("fan: need n >= 1")
    if not 0 <= args.i <= args.n:
        raise UsageError("fan: need 0 <= i <= n")
    checks: Dict[str, bool] = {}
    if args.markings == "0":
        fan = hilb_fan(args.n, args.i)
    else:
        i_inf = args.i_inf if args.i_inf is not None else args.i
        if not 0 <= i_inf <= args.n:
            raise UsageError("fan: need 0 <= i-inf <= n")
        fan = hilb_fan_two_sided(args.n, args.i, i_inf)
        if args.i == i_inf == 1:
            # the motive of the fully subdivided two-marking fan must agree
            # with the two-marking generating function, in particular at L=1
            motive = fan_motive(fan)
            expected = closed_form(MOTIVIC_P1, 2, args.n).coeffs[args.n]
            checks["motive_matches_two_marking_series"] = motive == expected
            euler = sum(motive.terms.values())
            expected_euler = sum(expected.terms.values())
            checks["euler_characteristic"] = euler == expected_euler
    checks["complete"] = fan.is_complete()
    checks["intersections_are_faces"] = fan.check_intersections_are_faces()
    census = fan.census()
    payload = {
        "command": "fan",
        "n": args.n,
        "i": args.i,
        "markings": args.markings,
        "fan": fan.to_json_dict(),
        "census": list(census),
        "motive": fan_motive(fan).to_string(),
        "checks": checks,
    }
    rows = [
        {"dimension": d, "cones": c} for d, c in enumerate(census)
    ] if args.census else [
        {"ray": ray.label, "vector": " ".join(map(str, ray.vector))}
        for ray in fan.rays
    ]
    _emit(payload, rows, args)
    return EXIT_OK if all(checks.values()) else EXIT_CHECK_FAILED


def _base_ring(args: argparse.Namespace) -> BaseRing:
    if args.curve == "p1":
        if args.ell != 1:
            raise UsageError("chow: the p1 base supports a single marking")
        return BaseRing.p1(args.n)
    return BaseRing.symbolic(args.ell)


def cmd_chow(args: argparse.Namespace) -> int:
    _check_cap(args.n, _cap(MAX_N_GROUPS), "chow", args.force)
    if args.n < 1:
        raise UsageError("chow: need n >= 1")
    if not 0 <= args.i <= args.n:
        raise UsageError("chow: need 0 <= i <= n")
    checks: Dict[str, bool] = {}
    if args.subcommand == "sr":
        pres = sr_presentation(hilb_fan(args.n, args.i))
    elif args.subcommand == "thmD":
        pres = thmD_presentation(args.n, [args.i] * args.ell, _base_ring(args))
    elif args.subcommand == "keel":
        base = _base_ring(args)
        pres = iterated_keel(args.n, args.i, base)
        checks["matches_direct_presentation"] = ideals_equal(
            pres, thmD_presentation(args.n, [args.i], base)
        )
    else:  # compare
        return _chow_compare(args)
    payload = {
        "command": f"chow {args.subcommand}",
        "n": args.n,
        "i": args.i,
        "presentation": pres.to_json_dict(),
        "checks": checks,
    }
    rows = [
        {"relation": rel.to_string(), "degree": rel.degree()}
        for rel in pres.all_relations()
    ]
    if args.groups or args.compare_sr:
        summary = _groups_summary(pres)
        payload["graded_groups"] = summary
        rows = [
            {
                "degree": g["degree"],
                "rank": g["rank"],
                "torsion": " ".join(map(str, g["torsion"])) or "-",
            }
            for g in summary
        ]
    if args.compare_sr:
        if args.subcommand == "sr" or args.curve != "p1":
            raise UsageError("chow: --compare-sr needs thmD or keel in p1 mode")
        report = _sr_comparison(args.n, args.i, pres)
        payload["sr_comparison"] = report
        checks["sr_comparison"] = report["pass"]
    _emit(payload, rows, args)
    return EXIT_OK if all(checks.values()) else EXIT_CHECK_FAILED


def _sr_comparison(n: int, i: int, pres) -> dict:
    sr = sr_presentation(hilb_fan(n, i))
    gen_map = {"H": MultiPoly.var("tau")}
    for name in pres.generators:
        level = int(name[3:].split("_")[0])
        gen_map[name] = MultiPoly.var(f"rho_{level}")
    return compare_presentations(pres, sr, gen_map)


def _chow_compare(args: argparse.Namespace) -> int:
    pres = thmD_presentation(args.n, [args.i], BaseRing.p1(args.n))
    report = _sr_comparison(args.n, args.i, pres)
    payload = {
        "command": "chow compare",
        "n": args.n,
        "i": args.i,
        "report": report,
    }
    rows = [
        {
            "degree": entry["degree"],
            "rank_blowup": entry["source"]["rank"],
            "rank_sr": entry["target"]["rank"],
            "torsion_blowup": " ".join(map(str, entry["source"]["torsion"])) or "-",
            "torsion_sr": " ".join(map(str, entry["target"]["torsion"])) or "-",
            "match": entry["match"],
        }
        for entry in report["graded"]
    ]
    _emit(payload, rows, args)
    return EXIT_OK if report["pass"] else EXIT_CHECK_FAILED


def _mode(args: argparse.Namespace) -> ZetaMode:
    return ZetaMode(args.mode, args.g)


def cmd_motive(args: argparse.Namespace) -> int:
    _check_cap(args.N, _cap(MAX_N_MOTIVE), "motive", args.force)
    if args.ell < 1:
        raise UsageError("motive: need at least one marking")
    mode = _mode(args)
    series = closed_form(mode, args.ell, args.N)
    rows = []
    all_ok = True
    for n in range(args.N + 1):
        coeff = series.coeffs[n]
        oracle = strata_sum(n, args.ell, mode)
        ok = coeff == oracle
        all_ok = all_ok and ok
        rows.append(
            {"n": n, "coefficient": coeff.to_string(), "verified": ok}
        )
    payload = {
        "command": "motive",
        "mode": args.mode,
        "g": args.g,
        "ell": args.ell,
        "N": args.N,
        "rows": rows,
        "all_verified": all_ok,
    }
    _emit(payload, rows, args)
    return EXIT_OK if all_ok else EXIT_CHECK_FAILED


def cmd_strata(args: argparse.Namespace) -> int:
    _check_cap(args.n, _cap(MAX_N_MOTIVE), "strata", args.force)
    if args.ell < 1:
        raise UsageError("strata: need at least one marking")
    mode = MOTIVIC_P1
    if args.profile is not None:
        profile = parse_profile(args.profile)
        if len(profile.nu) != args.ell:
            raise UsageError("strata: profile does not match --ell")
        if profile.total != args.n:
            raise UsageError(
                f"strata: profile totals {profile.total}, expected n = {args.n}"
            )
        profiles = [profile]
    else:
        profiles = enumerate_profiles(args.n, args.ell)
    rows = []
    total = MultiPoly.const(0)
    for profile in profiles:
        cls = stratum_class(profile, mode, args.ell)
        total = total + cls
        rows.append(
            {
                "profile": str(profile),
                "class": cls.to_string(),
                "codimension": profile.codimension,
                "cycle_class": stratum_cycle_class(profile, args.n).to_string(),
                "stabilizer_bounds": " ".join(map(str, stabilizer_bounds(profile)))
                or "-",
            }
        )
    payload = {
        "command": "strata",
        "n": args.n,
        "ell": args.ell,
        "rows": rows,
        "total": total.to_string(),
    }
    if args.profile is None:
        expected = closed_form(mode, args.ell, args.n).coeffs[args.n]
        payload["total_matches_series"] = total == expected
        if not payload["total_matches_series"]:
            _emit(payload, rows, args)
            return EXIT_CHECK_FAILED
    _emit(payload, rows, args)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("json", "csv", "text"), default="text")
    parser.add_argument("--output", help="write to this path instead of stdout")
    parser.add_argument("--force", action="store_true", help="ignore size caps")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="loghilb",
        description="Exact fans, Chow presentations and generating functions "
        "for relative Hilbert schemes of points on the line.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_fan = sub.add_parser("fan", help="build a subdivided fan")
    p_fan.add_argument("--n", type=int, required=True)
    p_fan.add_argument("--i", type=int, required=True)
    p_fan.add_argument("--markings", choices=("0", "0+inf"), default="0")
    p_fan.add_argument("--i-inf", type=int, dest="i_inf")
    p_fan.add_argument("--census", action="store_true")
    _add_common(p_fan)
    p_fan.set_defaults(func=cmd_fan)

    p_chow = sub.add_parser("chow", help="Chow-ring presentations")
    p_chow.add_argument("subcommand", choices=("sr", "thmD", "keel", "compare"))
    p_chow.add_argument("--n", type=int, required=True)
    p_chow.add_argument("--i", type=int, required=True)
    p_chow.add_argument("--curve", choices=("p1", "symbolic"), default="p1")
    p_chow.add_argument("--ell", type=int, default=1)
    p_chow.add_argument("--groups", action="store_true")
    p_chow.add_argument("--compare-sr", action="store_true", dest="compare_sr")
    _add_common(p_chow)
    p_chow.set_defaults(func=cmd_chow)

    p_motive = sub.add_parser("motive", help="generating-function table")
    p_motive.add_argument(
        "--mode",
        choices=("motivic-p1", "hodge", "poincare", "euler"),
        default="motivic-p1",
    )
    p_motive.add_argument("--g", type=int, default=0)
    p_motive.add_argument("--ell", type=int, default=1)
    p_motive.add_argument("--N", type=int, required=True)
    _add_common(p_motive)
    p_motive.set_defaults(func=cmd_motive)

    p_strata = sub.add_parser("strata", help="boundary strata listing")
    p_strata.add_argument("--n", type=int, required=True)
    p_strata.add_argument("--ell", type=int, required=True)
    p_strata.add_argument("--profile")
    _add_common(p_strata)
    p_strata.set_defaults(func=cmd_strata)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FanError as exc:
        print(f"fan invariant failed: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except (UsageError, ProfileError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
