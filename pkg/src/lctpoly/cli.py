"""Command-line entry point: ``lctpoly <subcommand> --input problem.json``.

A problem file is a JSON object::

    {"root_system": "A2" | {"ambient_dim": r, "simple_roots": [...], "simple_coroots": [...]},
     "P": <polytope JSON> | "wonderful",
     "Q": <polytope JSON> | "wonderful",
     "metric": <metric JSON>,                   # lct, newton
     "symmetries": [[[...], ...], ...],         # alpha, optional
     "integrand": {"pieces": [...], "radii": [...], "samples": n}}   # verify

Exit codes: 0 success, 2 invalid input, 3 numerical contradiction.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Any

from .errors import LctError, NotSemisimple, ValidationError
from .fan import PolyhedralCone
from .invariants import (
    CompactificationData,
    alpha_report,
    alpha_with_symmetries_report,
    fano_check,
    lct_report,
)
from .newton import PLConvexFunction, metric_from_json, metric_to_json, newton_body
from .numcheck import DEFAULT_RADII, DEFAULT_SAMPLES, criterion_report
from .polytope import RationalPolytope
from .rootsys import DEFAULT_MAX_WEYL, RootSystem, build_root_system, orbit_hull, weyl_group, wonderful_polytope

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_CONTRADICTION = 3


@dataclass
class ProblemFile:
    root_system: RootSystem
    P: RationalPolytope | None = None
    Q: RationalPolytope | None = None
    metric: Any = None
    symmetries: list = field(default_factory=list)
    integrands: list = field(default_factory=list)


def _parse_root_system(raw) -> RootSystem:
    if isinstance(raw, str):
        return build_root_system(raw)
    if isinstance(raw, dict):
        return build_root_system(
            simple_roots=raw.get("simple_roots", []),
            simple_coroots=raw.get("simple_coroots", []),
            ambient_dim=raw.get("ambient_dim"),
        )
    raise ValidationError("root_system must be a preset label or a custom block")


def _parse_polytope(raw, rs: RootSystem, cache: dict, max_weyl: int) -> RationalPolytope:
    if raw == "wonderful":
        if not rs.is_semisimple:
            raise NotSemisimple("'wonderful' needs a semisimple root system")
        if "wonderful" not in cache:
            cache["wonderful"] = wonderful_polytope(rs, weyl_group(rs, max_weyl))
        return cache["wonderful"]
    if isinstance(raw, dict):
        return RationalPolytope.from_json(raw)
    raise ValidationError("polytope must be JSON or the string 'wonderful'")


def _parse_integrand(raw: dict, dim: int) -> dict:
    if not isinstance(raw, dict) or "pieces" not in raw:
        raise ValidationError("integrand needs 'pieces'")
    l = PLConvexFunction((p["slope"], p.get("const", 0)) for p in raw["pieces"])
    cones = [PolyhedralCone.from_json(c, dim) for c in raw.get("cones", [])] or None
    return {
        "l": l,
        "cones": cones,
        "radii": tuple(raw.get("radii", DEFAULT_RADII)),
        "samples": int(raw.get("samples", DEFAULT_SAMPLES)),
    }


def parse_problem(data: dict, max_weyl: int = DEFAULT_MAX_WEYL) -> ProblemFile:
    if not isinstance(data, dict):
        raise ValidationError("problem file must be a JSON object")
    if "root_system" not in data:
        raise ValidationError("problem file needs 'root_system'")
    rs = _parse_root_system(data["root_system"])
    cache: dict = {}
    Q = _parse_polytope(data["Q"], rs, cache, max_weyl) if "Q" in data else None
    P = _parse_polytope(data["P"], rs, cache, max_weyl) if "P" in data else Q
    metric = metric_from_json(data["metric"]) if "metric" in data else None
    integrands = data.get("integrands") or ([data["integrand"]] if "integrand" in data else [])
    return ProblemFile(
        rs,
        P,
        Q,
        metric,
        list(data.get("symmetries", [])),
        [_parse_integrand(i, rs.ambient_dim) for i in integrands],
    )


def _need(problem: ProblemFile, *names: str) -> None:
    for n in names:
        if getattr(problem, n) is None:
            raise ValidationError(f"problem file needs {n!r}")


def _data(problem: ProblemFile, max_weyl: int) -> CompactificationData:
    _need(problem, "P", "Q")
    W = weyl_group(problem.root_system, max_weyl)
    return CompactificationData.build(problem.root_system, problem.P, problem.Q, W)


def cmd_alpha(problem: ProblemFile, max_weyl: int = DEFAULT_MAX_WEYL) -> tuple[dict, int]:
    data = _data(problem, max_weyl)
    if problem.symmetries:
        res = alpha_with_symmetries_report(data, problem.symmetries, max_weyl)
    else:
        res = alpha_report(data)
    return {"alpha": res.to_json()}, EXIT_OK


def cmd_lct(problem: ProblemFile, max_weyl: int = DEFAULT_MAX_WEYL) -> tuple[dict, int]:
    _need(problem, "metric")
    data = _data(problem, max_weyl)
    res = lct_report(data, problem.metric)
    return {"lct": res.to_json(), "metric": metric_to_json(problem.metric)}, EXIT_OK


def cmd_wonderful(problem: ProblemFile, max_weyl: int = DEFAULT_MAX_WEYL) -> tuple[dict, int]:
    rs = problem.root_system
    if not rs.is_semisimple:
        raise NotSemisimple("the wonderful compactification needs a semisimple root system")
    W = weyl_group(rs, max_weyl)
    Q = wonderful_polytope(rs, W)
    return {"root_system": rs.to_json(), "weyl_order": len(W), "polytope": Q.to_json()}, EXIT_OK


def cmd_fano_check(problem: ProblemFile, max_weyl: int = DEFAULT_MAX_WEYL) -> tuple[dict, int]:
    _need(problem, "Q")
    rs = problem.root_system
    H = orbit_hull(weyl_group(rs, max_weyl), tuple(2 * x for x in rs.rho))
    return {"fano_check": fano_check(problem.Q, H).to_json(), "H": H.to_json()}, EXIT_OK


def cmd_newton(problem: ProblemFile, max_weyl: int = DEFAULT_MAX_WEYL) -> tuple[dict, int]:
    _need(problem, "P", "metric")
    W = weyl_group(problem.root_system, max_weyl)
    N = newton_body(problem.metric, problem.P, W)
    return {"newton_body": N.to_json(), "metric": metric_to_json(problem.metric)}, EXIT_OK


def cmd_verify(problem: ProblemFile, seed: int = 0) -> tuple[dict, int]:
    if not problem.integrands:
        raise ValidationError("problem file needs 'integrand' or 'integrands'")
    reports = []
    code = EXIT_OK
    for i, spec in enumerate(problem.integrands):
        rep = criterion_report(
            problem.root_system, spec["l"], spec["cones"], spec["radii"], spec["samples"], seed + i
        )
        out = rep.to_json()
        out["exponent"] = spec["l"].to_json()["pieces"]
        reports.append(out)
        if rep.agree is False:
            code = EXIT_CONTRADICTION
    return {"seed": seed, "reports": reports}, code


def _text(report: dict) -> str:
    """Human-readable rendering; the headline value goes first."""
    lines = []
    for key in ("alpha", "lct"):
        if key in report:
            r = report[key]
            lines.append(r["value"])
            if "fixed_subspace_dim" in r:
                lines.append(f"fixed subspace dimension: {r['fixed_subspace_dim']}")
            if r["witness_ray"] is not None:
                lines.append("witness ray: (" + ", ".join(r["witness_ray"]) + ")")
            for c in r["active_constraints"]:
                lines.append("active: " + json.dumps(c))
            return "\n".join(lines)
    if "fano_check" in report:
        f = report["fano_check"]
        return ("fano" if f["fano"] else "not fano") + "\nslacks: " + ", ".join(f["slacks"])
    if "reports" in report:
        for r in report["reports"]:
            agree = {True: "agree", False: "CONTRADICTION", None: "inconclusive"}[r["agree"]]
            lines.append(f"exact {r['exact']}, numeric {r['numeric']['verdict']}: {agree}")
        return "\n".join(lines)
    return json.dumps(report, indent=2)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lctpoly", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("alpha", "lct", "wonderful", "fano-check", "verify", "newton"):
        p = sub.add_parser(name)
        p.add_argument("--input", "-i", default="-", help="problem file (default: stdin)")
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        p.add_argument("--max-weyl", type=int, default=DEFAULT_MAX_WEYL)
        if name == "verify":
            p.add_argument("--seed", type=int, default=0)
    return parser


COMMANDS = {
    "alpha": cmd_alpha,
    "lct": cmd_lct,
    "wonderful": cmd_wonderful,
    "fano-check": cmd_fano_check,
    "newton": cmd_newton,
}


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "verify" and not 0 <= args.seed < 2**64:
            raise ValidationError("seed must be an unsigned 64-bit integer")
        if args.input == "-":
            raw = json.load(sys.stdin)
        else:
            with open(args.input) as fh:
                raw = json.load(fh)
        problem = parse_problem(raw, args.max_weyl)
        if args.command == "verify":
            report, code = cmd_verify(problem, args.seed)
        else:
            report, code = COMMANDS[args.command](problem, args.max_weyl)
    except (LctError, ValueError, KeyError, TypeError, OSError) as exc:
        # json.JSONDecodeError is a ValueError
        err = {"error": type(exc).__name__, "message": str(exc)}
        print(json.dumps(err), file=stdout)
        return EXIT_INVALID
    if args.json:
        print(json.dumps(report, sort_keys=True), file=stdout)
    else:
        print(_text(report), file=stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
