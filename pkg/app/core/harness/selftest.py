"""
Self-test suite: the reference tables, the matrix and Toeplitz families,
the larger registry algebras, randomized trials, the field-type survey,
duality and a few negative controls.

Strategy
--------
Every case is a module-level function returning a short detail string and
raising CaseFailure on a mismatch, so cases can be shipped to a process
pool by name. Results are always reported in declaration order.

Public helpers
--------------
* case_names()    - every case, in order
* run_selftest()  - list[CaseResult] for the selected groups or cases
* scoreboard()    - pandas DataFrame of a run
"""
from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional

import numpy as np
import pandas as pd
from tqdm import tqdm

from app.config import Settings
from app.core.algebra.registry import registry, transpose_operator
from app.core.algebra.structure import transform
from app.core.errors import AntirotorError, UsageError
from app.core.harness.tables import (
    SMALL_UNITAL,
    SPLIT_TO_PAIR,
    THREE_DIM,
    TWO_DIM,
    hankel_generators,
)
from app.core.harness.trials import antirotor_type_survey, random_isomorphism_trials
from app.core.invariants import build_report, compare
from app.core.norms.checks import (
    check_duality,
    check_path_independence,
    check_reciprocity,
    check_special_vs_det,
    check_star_inverse,
)
from app.core.skewer.curl import anti_rotor
from app.core.skewer.subspace import normalized_subspace, subspace_equal
from app.models import CaseResult, FieldMode, ParamSymMatrix

logger = logging.getLogger(__name__)

settings = Settings()


class CaseFailure(Exception):
    pass


@dataclass(frozen=True)
class Case:
    name: str
    group: str
    fn: Callable[[], str]


def _expect(cond: bool, message: str) -> None:
    if not cond:
        raise CaseFailure(message)


def _family(n: int, gens) -> ParamSymMatrix:
    return ParamSymMatrix.from_generators(n, gens)


def _near_unit(alg, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return np.array([float(u) for u in alg.unit]) + rng.uniform(-0.1, 0.1, size=alg.dim)


# ------ reference tables ------ #


def _two_dim(name: str) -> str:
    alg = registry(name)
    row = TWO_DIM[name]
    u = anti_rotor(alg)
    _expect(subspace_equal(u, _family(2, row["generators"])), f"{name}: anti-rotor mismatch")
    report = build_report(alg)
    _expect(report.tau_reduced == row["reduced"], f"{name}: reduced triple {report.tau_reduced}")
    return f"m={u.param_count} reduced={report.tau_reduced}"


def _three_dim(name: str) -> str:
    alg = registry(name)
    row = THREE_DIM[name]
    u = anti_rotor(alg)
    _expect(subspace_equal(u, _family(3, row["generators"])), f"{name}: anti-rotor mismatch")
    report = build_report(alg)
    _expect(report.sextuple == row["sextuple"], f"{name}: sextuple {report.sextuple}")
    _expect(report.tau_reduced == row["reduced"], f"{name}: reduced triple {report.tau_reduced}")
    return f"sextuple={report.sextuple} reduced={report.tau_reduced}"


def case_complex() -> str:
    detail = _two_dim("complex")
    report = build_report(registry("complex"))
    _expect(
        report.min_nonzero_rank == 2 and report.min_rank_certainty == "certified",
        f"complex: smallest nonzero rank {report.min_nonzero_rank} ({report.min_rank_certainty})",
    )
    return detail


def case_split_complex() -> str:
    return _two_dim("split-complex")


def case_real_pair() -> str:
    return _two_dim("real-pair")


def case_dual() -> str:
    return _two_dim("dual")


def case_split_to_pair() -> str:
    moved = transform(registry("split-complex"), SPLIT_TO_PAIR)
    _expect(moved.structure == registry("real-pair").structure, "split-C under K is not R x R")
    tally = random_isomorphism_trials(registry("split-complex"), matrices=[SPLIT_TO_PAIR])
    _expect(tally.ok, f"congruence failed: {tally.failures}")
    return "K = [[1,-1],[1,1]]"


def case_real_triple() -> str:
    return _three_dim("real-triple")


def case_real_complex() -> str:
    return _three_dim("real-complex")


def case_real_dual() -> str:
    return _three_dim("real-dual")


def case_toeplitz_3_row() -> str:
    return _three_dim("toeplitz:3")


def case_square_zero_3() -> str:
    return _three_dim("square-zero-3")


def case_semidirect_3() -> str:
    return _three_dim("semidirect-3")


# ------ matrix algebras ------ #


def _matrix(k: int) -> str:
    alg = registry(f"matrix:{k}")
    u = anti_rotor(alg)
    _expect(u.param_count == 1, f"matrix:{k}: m = {u.param_count}")
    _expect(
        subspace_equal(u, _family(k * k, [transpose_operator(k)])),
        f"matrix:{k}: anti-rotor is not spanned by the transpose",
    )
    check = check_special_vs_det(alg, points=20, seed=settings.SEED)
    _expect(check.passed, f"matrix:{k}: special norm vs det^(1/{k}) {check.details}")
    return f"max deviation {check.details['max_deviation']:.2e}"


def case_matrix_2() -> str:
    return _matrix(2)


def case_matrix_3() -> str:
    return _matrix(3)


# ------ Toeplitz family ------ #


def _toeplitz(n: int) -> str:
    alg = registry(f"toeplitz:{n}")
    u = anti_rotor(alg)
    gens = hankel_generators(n)
    _expect(subspace_equal(u, _family(n, gens)), f"toeplitz:{n}: anti-rotor is not Hankel")
    sub = normalized_subspace(alg, u)
    _expect(
        _family(n, [sub.particular]).generator(0) == _family(n, [gens[0]]).generator(0),
        f"toeplitz:{n}: normalized particular {sub.particular}",
    )
    _expect(
        subspace_equal(sub.directions, _family(n, gens[1:])),
        f"toeplitz:{n}: normalized directions differ from gamma_0 = 1",
    )
    detail = f"m={u.param_count}"
    if n in (3, 4):
        check = check_special_vs_det(alg, points=20, seed=settings.SEED)
        _expect(check.passed, f"toeplitz:{n}: special norm vs x1 {check.details}")
        detail += f" special deviation {check.details['max_deviation']:.2e}"
    return detail


def case_toeplitz_2() -> str:
    return _toeplitz(2)


def case_toeplitz_3() -> str:
    return _toeplitz(3)


def case_toeplitz_4() -> str:
    return _toeplitz(4)


def case_toeplitz_5() -> str:
    return _toeplitz(5)


# ------ larger registry algebras ------ #


def case_reals_4() -> str:
    alg = registry("reals:4")
    u = anti_rotor(alg)
    diag = [[[1 if i == j == k else 0 for j in range(4)] for i in range(4)] for k in range(4)]
    _expect(subspace_equal(u, _family(4, diag)), "reals:4: anti-rotor is not diagonal")
    sub = normalized_subspace(alg, u)
    trace = sum(sub.particular[i][i] for i in range(4))
    _expect(trace == 4, f"reals:4: normalized trace {trace}")
    _expect(sub.directions.param_count == 3, "reals:4: normalized directions")
    return "sum of sigma = 4"


def case_quaternion() -> str:
    alg = registry("quaternion")
    u = anti_rotor(alg)
    metric = [[0] * 4 for _ in range(4)]
    for i, v in enumerate((1, -1, -1, -1)):
        metric[i][i] = v
    _expect(subspace_equal(u, _family(4, [metric])), "quaternion: anti-rotor mismatch")
    check = check_special_vs_det(alg, points=20, seed=settings.SEED)
    _expect(check.passed, f"quaternion: special norm {check.details}")
    return "diag(a, -a, -a, -a)"


def case_triangular_3() -> str:
    alg = registry("triangular-3")
    u = anti_rotor(alg)
    sub = normalized_subspace(alg, u)
    base = [[1, 0, 0], [0, 1, 0], [0, 0, 0]]
    step = [[1, 0, 0], [0, -1, 0], [0, 0, 0]]
    _expect(
        _family(3, [sub.particular]).generator(0) == _family(3, [base]).generator(0),
        f"triangular-3: normalized particular {sub.particular}",
    )
    _expect(subspace_equal(sub.directions, _family(3, [step])), "triangular-3: directions")
    check = check_special_vs_det(alg, points=20, seed=settings.SEED)
    _expect(check.passed, f"triangular-3: special norm vs (xy)^(1/2) {check.details}")
    return "diag(1 + s, 1 - s, 0)"


def case_triangular_5() -> str:
    check = check_special_vs_det(registry("triangular-5"), points=20, seed=settings.SEED)
    _expect(check.passed, f"triangular-5: special norm vs (xy)^(1/2) {check.details}")
    return f"max deviation {check.details['max_deviation']:.2e}"


def _star_algebra(name: str) -> str:
    alg = registry(name)
    star = check_star_inverse(alg)
    _expect(star.passed, f"{name}: s^-1 != s*/(s s*)")
    check = check_special_vs_det(alg, points=20, seed=settings.SEED)
    _expect(check.passed, f"{name}: special norm vs sqrt(s s*) {check.details}")
    return f"dim {alg.dim}"


def case_spin_2() -> str:
    return _star_algebra("spin:2")


def case_spin_3() -> str:
    return _star_algebra("spin:3")


def case_cayley_dickson_2() -> str:
    return _star_algebra("cayley-dickson:2")


def case_cayley_dickson_3() -> str:
    return _star_algebra("cayley-dickson:3")


# ------ randomized trials and the survey ------ #


def case_trials() -> str:
    failed = []
    for name in SMALL_UNITAL:
        tally = random_isomorphism_trials(registry(name), count=50, invariants=True)
        if not tally.ok:
            failed.append(f"{name}: {tally.failed}")
    _expect(not failed, f"trial failures {failed}")
    return f"{len(SMALL_UNITAL)} algebras x 50 trials"


def case_survey() -> str:
    odd = []
    for name in SMALL_UNITAL:
        result = antirotor_type_survey(registry(name), [-1, -2, 2, 3])
        if not result.all_equal:
            odd.append(name)
    _expect(not odd, f"field types disagree on {odd}")
    return f"{len(SMALL_UNITAL)} algebras"


def case_nilpotent_powers() -> str:
    alg = registry("nilpotent-3")
    dims = [anti_rotor(alg, FieldMode("power", j)).param_count for j in (2, 3, 4)]
    _expect(dims == [3, 4, 6], f"nilpotent-3 power dimensions {dims}")
    return f"dims {dims}"


# ------ duality and reciprocity ------ #


def case_duality() -> str:
    checked = 0
    for offset, name in enumerate(SMALL_UNITAL):
        alg = registry(name)
        x = _near_unit(alg, settings.SEED + offset)
        for g in anti_rotor(alg).generators():
            report = check_duality(alg, g, list(x))
            _expect(report.passed, f"{name}: duality {report.details}")
            checked += 1
    return f"{checked} generators"


def case_reciprocity() -> str:
    for offset, name in enumerate(("matrix:2", "toeplitz:3", "reals:3", "complex")):
        alg = registry(name)
        sub = normalized_subspace(alg, anti_rotor(alg))
        report = check_reciprocity(alg, sub.particular, list(_near_unit(alg, settings.SEED + offset)))
        _expect(report.passed, f"{name}: reciprocity {report.details}")
    return "4 normalized metrics"


# ------ negative controls ------ #


def case_dual_identity_path() -> str:
    alg = registry("dual")
    report = check_path_independence(alg, [[1, 0], [0, 1]], [1.5, 0.7])
    _expect(not report.passed, "identity metric on D should be path-dependent")
    return f"difference {report.details['difference']:.3g}"


def _verdict(a: str, b: str, label: str) -> str:
    verdict = compare(build_report(registry(a)), build_report(registry(b)))
    _expect(verdict.label == label, f"{a} vs {b}: {verdict.label} {verdict.reasons}")
    return verdict.label


def case_complex_vs_dual() -> str:
    return _verdict("complex", "dual", "not-isomorphic")


def case_complex_vs_split() -> str:
    return _verdict("complex", "split-complex", "not-isomorphic")


def case_split_vs_pair() -> str:
    return _verdict("split-complex", "real-pair", "indistinguishable")


CASES: List[Case] = [
    Case("complex", "tables", case_complex),
    Case("split-complex", "tables", case_split_complex),
    Case("real-pair", "tables", case_real_pair),
    Case("dual", "tables", case_dual),
    Case("split-to-pair", "tables", case_split_to_pair),
    Case("real-triple", "tables", case_real_triple),
    Case("real-complex", "tables", case_real_complex),
    Case("real-dual", "tables", case_real_dual),
    Case("toeplitz-3-row", "tables", case_toeplitz_3_row),
    Case("square-zero-3", "tables", case_square_zero_3),
    Case("semidirect-3", "tables", case_semidirect_3),
    Case("matrix-2", "matrix3", case_matrix_2),
    Case("matrix-3", "matrix3", case_matrix_3),
    Case("toeplitz-2", "toeplitz", case_toeplitz_2),
    Case("toeplitz-3", "toeplitz", case_toeplitz_3),
    Case("toeplitz-4", "toeplitz", case_toeplitz_4),
    Case("toeplitz-5", "toeplitz", case_toeplitz_5),
    Case("reals-4", "families", case_reals_4),
    Case("quaternion", "families", case_quaternion),
    Case("triangular-3", "families", case_triangular_3),
    Case("triangular-5", "families", case_triangular_5),
    Case("spin-2", "families", case_spin_2),
    Case("spin-3", "families", case_spin_3),
    Case("cayley-dickson-2", "families", case_cayley_dickson_2),
    Case("cayley-dickson-3", "families", case_cayley_dickson_3),
    Case("trials", "trials", case_trials),
    Case("survey", "survey", case_survey),
    Case("nilpotent-powers", "survey", case_nilpotent_powers),
    Case("duality", "duality", case_duality),
    Case("reciprocity", "duality", case_reciprocity),
    Case("dual-identity-path", "controls", case_dual_identity_path),
    Case("complex-vs-dual", "controls", case_complex_vs_dual),
    Case("complex-vs-split", "controls", case_complex_vs_split),
    Case("split-vs-pair", "controls", case_split_vs_pair),
]

_BY_NAME: Dict[str, Case] = {case.name: case for case in CASES}


def case_names() -> List[str]:
    return [case.name for case in CASES]


def select(only: Optional[Iterable[str]] = None) -> List[Case]:
    """Cases whose name or group appears in ``only`` (all when empty)."""
    wanted = {w.strip() for w in (only or []) if w.strip()}
    if not wanted:
        return list(CASES)
    known = set(_BY_NAME) | {case.group for case in CASES}
    unknown = sorted(wanted - known)
    if unknown:
        raise UsageError(f"unknown self-test selection {unknown}")
    return [case for case in CASES if case.name in wanted or case.group in wanted]


def _run_case(name: str) -> CaseResult:
    case = _BY_NAME[name]
    start = time.perf_counter()
    try:
        detail = case.fn()
        passed = True
    except CaseFailure as exc:
        detail, passed = str(exc), False
    except AntirotorError as exc:
        detail, passed = f"{exc.kind}: {exc}", False
    elapsed = time.perf_counter() - start
    logger.info("[selftest] %s %s (%.2fs)", name, "ok" if passed else "FAIL", elapsed)
    return CaseResult(case.name, case.group, passed, detail, elapsed)


def run_selftest(
    only: Optional[Iterable[str]] = None,
    workers: Optional[int] = None,
    progress: bool = True,
) -> List[CaseResult]:
    cases = select(only)
    names = [case.name for case in cases]
    workers = settings.WORKERS if workers is None else workers
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(tqdm(pool.map(_run_case, names), total=len(names), disable=not progress))
    else:
        results = [_run_case(name) for name in tqdm(names, disable=not progress)]
    return results


def scoreboard(results: List[CaseResult], timing: bool = False) -> pd.DataFrame:
    df = pd.DataFrame(
        {
            "group": [r.group for r in results],
            "case": [r.name for r in results],
            "status": ["PASS" if r.passed else "FAIL" for r in results],
            "detail": [r.detail for r in results],
        }
    )
    if timing:
        df["seconds"] = [round(r.seconds, 3) for r in results]
    return df
