from __future__ import annotations

import argparse
import json
from pathlib import Path
from typing import List, Optional

from . import VerbResult, arg, cli_bp
from ..core.algebra.registry import metadata, registry, registry_names
from ..core.algebra.structure import transform, validate
from ..core.errors import DomainError, UsageError
from ..core.exactcas.poly import format_rational, parse_rational, to_float
from ..core.harness.selftest import run_selftest, scoreboard
from ..core.harness.trials import antirotor_type_survey, random_isomorphism_trials
from ..core.invariants import build_report as invariant_report
from ..core.invariants import compare, epimorphism_dim_check
from ..core.norms import (
    check_duality,
    check_group_law,
    check_homogeneity,
    check_multiplicativity,
    check_path_independence,
    check_reciprocity,
    check_special_vs_det,
    check_star_inverse,
    eval_norm,
    special_metric,
)
from ..core.skewer import anti_rotor, congruent, normalized_subspace, subspace_equal
from ..infrastructure.files.algebra_file import algebra_to_json, load_algebra, save_algebra
from ..models import Algebra, CheckReport, FieldMode

_ALGEBRA = arg("algebra", help="algebra JSON file or registry:<name>[:<n>]")
_MODE = arg("--mode", default="inverse", help="inverse or power:<j>")
_GRID = arg("--grid", type=int, default=None, help="bound B of the smallest-rank search grid")
_METRIC = arg(
    "--metric",
    default=None,
    help="normalized | special | generator:<q> | inline JSON matrix",
)
_METRIC_MATRIX = arg("--metric-matrix", default=None, help="JSON file holding a metric matrix")
_POINT = arg("--point", default=None, help="comma-separated coordinates, e.g. 1.2,1/3")

CHECKS = (
    "path",
    "homogeneity",
    "reciprocity",
    "special",
    "duality",
    "group",
    "star",
    "multiplicative",
    "isomorphism",
    "survey",
)


# ------ argument helpers ------ #


def _load(args: argparse.Namespace, attr: str = "algebra") -> Algebra:
    return load_algebra(getattr(args, attr))


def _matrix_from_text(text: str, where: str) -> List[List[object]]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{where}: not a JSON matrix ({exc.msg})") from exc
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise UsageError(f"{where}: expected a list of rows")
    return [[parse_rational(v) for v in row] for row in data]


def _square(M, n: int, what: str):
    if len(M) != n or any(len(row) != n for row in M):
        raise UsageError(f"{what} must be {n}x{n}")
    return M


def _metric(alg: Algebra, text: Optional[str], matrix_file: Optional[str] = None):
    if matrix_file:
        try:
            raw = Path(matrix_file).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {matrix_file}: {exc.strerror}") from exc
        return _square(_matrix_from_text(raw, matrix_file), alg.dim, "metric")
    text = (text or "normalized").strip()
    if text.startswith("["):
        return _square(_matrix_from_text(text, "--metric"), alg.dim, "metric")
    if text == "special":
        return special_metric(alg)
    if text == "normalized":
        sub = normalized_subspace(alg, anti_rotor(alg))
        if not sub.consistent:
            raise DomainError(f"{alg.name}: no normalized uncurling metric")
        return sub.particular
    if text.startswith("generator:"):
        gens = anti_rotor(alg).generators()
        try:
            q = int(text.split(":", 1)[1])
        except ValueError as exc:
            raise UsageError(f"bad generator index in {text!r}") from exc
        if not 0 <= q < len(gens):
            raise UsageError(f"generator index must be in [0, {len(gens) - 1}]")
        return gens[q]
    raise UsageError(f"unknown metric {text!r}")


def _point(text: Optional[str], alg: Algebra) -> List[object]:
    if not text:
        if alg.unit is None:
            raise DomainError(f"{alg.name}: no unit, give --point explicitly")
        return [to_float(u) + 0.1 for u in alg.unit]
    values = [v for v in text.split(",") if v.strip()]
    if len(values) != alg.dim:
        raise UsageError(f"--point has {len(values)} coordinates, expected {alg.dim}")
    return [to_float(parse_rational(v)) for v in values]


def _rational_list(values) -> Optional[List[str]]:
    return None if values is None else [format_rational(v) for v in values]


# ------ verbs ------ #


@cli_bp.verb("validate", help="structure checks: associativity and unit", arguments=[_ALGEBRA])
def validate_verb(args):
    alg = _load(args)
    report = validate(alg)
    return VerbResult(
        {
            "dim": alg.dim,
            "associative": report.associative,
            "unital": report.unital,
            "unit": _rational_list(report.unit),
            "unit_norm_sq": None if report.unit_norm_sq is None else format_rational(report.unit_norm_sq),
        },
        alg.name,
        algebra_to_json(alg),
        report.warnings,
    )


@cli_bp.verb("antirotor", help="uncurling metrics of the algebra", arguments=[_ALGEBRA, _MODE])
def antirotor_verb(args):
    alg = _load(args)
    mode = FieldMode.parse(args.mode)
    u = anti_rotor(alg, mode)
    warnings = [] if alg.associative else ["non-associative input: s^-1 is the left-solve inverse"]
    return VerbResult({"mode": mode.label, "M_u": u}, alg.name, algebra_to_json(alg), warnings)


@cli_bp.verb("normalized", help="normalized uncurling metrics", arguments=[_ALGEBRA])
def normalized_verb(args):
    alg = _load(args)
    u = anti_rotor(alg)
    sub = normalized_subspace(alg, u)
    warnings = [] if sub.consistent else ["no normalized member"]
    return VerbResult({"M_u": u, "normalized": sub}, alg.name, algebra_to_json(alg), warnings)


@cli_bp.verb(
    "invariants", help="sextuple, det(M_u) and the tau triple", arguments=[_ALGEBRA, _MODE, _GRID]
)
def invariants_verb(args):
    alg = _load(args)
    report = invariant_report(alg, FieldMode.parse(args.mode), args.grid, args.seed)
    return VerbResult({"invariants": report}, alg.name, algebra_to_json(alg), report.warnings)


@cli_bp.verb(
    "norm-eval",
    help="evaluate a unital norm at a point",
    arguments=[_ALGEBRA, _METRIC, _METRIC_MATRIX, _POINT],
)
def norm_eval_verb(args):
    alg = _load(args)
    L = _metric(alg, args.metric, args.metric_matrix)
    evaluation = eval_norm(alg, L, _point(args.point, alg), tol=args.tol)
    warnings = []
    if evaluation.flagged:
        warnings.append("quadrature error estimate exceeds the tolerance")
    return VerbResult(
        {"metric": L, "evaluation": evaluation}, alg.name, algebra_to_json(alg), warnings
    )


def _run_check(args, alg: Algebra) -> CheckReport:
    name = args.check
    if name == "special":
        return check_special_vs_det(alg, args.tol, points=args.points, seed=args.seed)
    if name == "star":
        return check_star_inverse(alg)
    if name == "isomorphism":
        matrices = None
        if args.matrix:
            matrices = [_square(_matrix_from_text(args.matrix, "--matrix"), alg.dim, "K")]
        tally = random_isomorphism_trials(
            alg, count=args.trials, seed=args.seed, invariants=True, matrices=matrices
        )
        return CheckReport(
            "isomorphism",
            tally.ok,
            {"passed": tally.passed, "failed": tally.failed, "failures": tally.failures},
        )
    if name == "survey":
        try:
            powers = [int(p) for p in args.powers.split(",") if p.strip()]
        except ValueError as exc:
            raise UsageError(f"bad --powers {args.powers!r}") from exc
        result = antirotor_type_survey(alg, powers)
        return CheckReport(
            "survey",
            result.all_equal,
            {"labels": result.labels, "dims": result.dims, "equal": result.equal},
            informational=True,
        )

    L = _metric(alg, args.metric, args.metric_matrix)
    s = _point(args.point, alg)
    if name == "path":
        return check_path_independence(alg, L, s, args.tol)
    if name == "homogeneity":
        return check_homogeneity(alg, L, s, args.tol)
    if name == "reciprocity":
        return check_reciprocity(alg, L, s, args.tol)
    if name == "duality":
        return check_duality(alg, L, s)
    if name == "group":
        L2 = _metric(alg, args.metric2 or "generator:0")
        return check_group_law(alg, L, L2, s, args.tol)
    s2 = _point(args.point2, alg) if args.point2 else s
    return check_multiplicativity(alg, L, s, s2, args.tol)


@cli_bp.verb(
    "check",
    help="numeric and exact verification checks",
    arguments=[
        arg("check", choices=CHECKS),
        _ALGEBRA,
        _METRIC,
        _METRIC_MATRIX,
        arg("--metric2", default=None, help="second metric for the group check"),
        _POINT,
        arg("--point2", default=None, help="second point for the multiplicative check"),
        arg("--points", type=int, default=20, help="sample count for the special check"),
        arg("--trials", type=int, default=50, help="random K count for the isomorphism check"),
        arg("--matrix", default=None, help="explicit K as an inline JSON matrix"),
        arg("--powers", default="-1,-2,2,3", help="exponents for the survey"),
    ],
)
def check_verb(args):
    alg = _load(args)
    report = _run_check(args, alg)
    failed = not report.passed and not report.informational
    return VerbResult(
        {"check": report.name, "status": "PASS" if report.passed else "FAIL", "report": report},
        alg.name,
        algebra_to_json(alg),
        failed=failed,
    )


@cli_bp.verb(
    "compare",
    help="invariant comparison of two algebras",
    arguments=[arg("algebra", help="first algebra"), arg("other", help="second algebra"), _GRID],
)
def compare_verb(args):
    a, b = _load(args), _load(args, "other")
    ra = invariant_report(a, grid=args.grid, seed=args.seed)
    rb = invariant_report(b, grid=args.grid, seed=args.seed)
    verdict = compare(ra, rb)
    results = {"verdict": verdict, "a": ra, "b": rb}
    if a.dim == b.dim:
        results["epimorphism"] = epimorphism_dim_check(ra, rb)
    return VerbResult(
        results,
        f"{a.name} vs {b.name}",
        {"a": algebra_to_json(a), "b": algebra_to_json(b)},
        [f"A: {w}" for w in ra.warnings] + [f"B: {w}" for w in rb.warnings],
    )


@cli_bp.verb(
    "transform",
    help="isomorphic copy under a change of basis K",
    arguments=[
        _ALGEBRA,
        arg("--matrix", required=True, help="K as an inline JSON matrix"),
        arg("--out", default=None, help="write the transformed algebra here"),
    ],
)
def transform_verb(args):
    alg = _load(args)
    K = _square(_matrix_from_text(args.matrix, "--matrix"), alg.dim, "K")
    moved = transform(alg, K)
    if args.out:
        save_algebra(moved, args.out)
    results = {"algebra": algebra_to_json(moved)}
    failed = False
    if moved.unital:
        u_new = anti_rotor(moved)
        failed = not subspace_equal(anti_rotor(alg), congruent(u_new, K))
        results["M_u"] = u_new
        results["congruent"] = not failed
    return VerbResult(results, alg.name, algebra_to_json(alg), failed=failed)


@cli_bp.verb(
    "registry",
    help="list built-in algebras or print one",
    arguments=[
        arg("name", nargs="?", default=None),
        arg("--out", default=None, help="write the algebra file here"),
    ],
)
def registry_verb(args):
    if args.name is None:
        listing = {n: metadata(n.split(":")[0]).get("title", "") for n in registry_names()}
        return VerbResult({"algebras": listing})
    alg = registry(args.name)
    if args.out:
        save_algebra(alg, args.out)
    return VerbResult(
        {"algebra": algebra_to_json(alg), "metadata": metadata(alg.name)},
        alg.name,
        algebra_to_json(alg),
    )


@cli_bp.verb(
    "selftest",
    help="replay the reference tables and properties",
    arguments=[
        arg("--only", default="", help="comma-separated groups or case names"),
        arg("--workers", type=int, default=None, help="process pool size"),
        arg("--csv", default=None, help="write the scoreboard here"),
    ],
)
def selftest_verb(args):
    results = run_selftest(args.only.split(","), workers=args.workers, progress=not args.json)
    board = scoreboard(results, timing=args.timing)
    if args.csv:
        board.to_csv(args.csv, index=False)
    failed = sum(not r.passed for r in results)
    summary = f"{len(results) - failed} passed, {failed} failed"
    cases = board.to_dict(orient="records")
    return VerbResult(
        {"cases": cases, "summary": summary},
        failed=failed > 0,
        text=board.to_string(index=False) + "\n" + summary,
    )
