"""
Randomized property harness.

random_isomorphism_trials : K^T u_new K == u for seeded random K in GL_n(Q)
antirotor_type_survey     : pairwise equality of anti-rotors across field types
"""
from __future__ import annotations

import logging
from typing import Iterable, List, Optional

import numpy as np
from sympy.polys.domains import QQ

from app.config import Settings
from app.core.algebra.structure import transform
from app.core.errors import UsageError
from app.core.exactcas.linalg import det_exact
from app.core.exactcas.poly import format_rational
from app.core.invariants import sextuple
from app.core.invariants.tau import tau_triple
from app.core.skewer.curl import anti_rotor
from app.core.skewer.subspace import congruent, subspace_equal
from app.models import Algebra, FieldMode, InvariantReport, SurveyResult, TrialTally

logger = logging.getLogger(__name__)

settings = Settings()

_ENTRY_RANGE = 3
_SURVEY_POWERS = frozenset(range(-3, 5)) - {0, 1}


def random_invertible(n: int, rng: np.random.Generator) -> List[List[object]]:
    while True:
        K = [[QQ(int(v)) for v in row] for row in rng.integers(-_ENTRY_RANGE, _ENTRY_RANGE + 1, size=(n, n))]
        if det_exact(K):
            return K


def certified_fields(report: InvariantReport) -> dict:
    fields = {
        "m": report.m,
        "sensitive_param_count": report.sensitive_param_count,
    }
    if report.max_rank_method == "exact":
        fields["max_rank"] = report.max_rank
    if report.min_rank_certainty == "certified":
        fields["min_nonzero_rank"] = report.min_nonzero_rank
    if report.variety.supported:
        fields["variety"] = (report.variety.dim, report.variety.component_count)
    if report.tau_raw is not None and not report.tau_undecided:
        fields["tau"] = report.tau_raw
    return fields


def _report(alg: Algebra, u) -> InvariantReport:
    report = sextuple(u)
    if alg.unital and alg.associative:
        report.tau_raw, report.tau_undecided, _ = tau_triple(alg, u)
    return report


def _shared_mismatch(a: dict, b: dict) -> List[str]:
    return [k for k in a if k in b and a[k] != b[k]]


def random_isomorphism_trials(
    alg: Algebra,
    count: int = 50,
    seed: Optional[int] = None,
    invariants: bool = False,
    matrices: Optional[Iterable] = None,
) -> TrialTally:
    """
    Transform ``alg`` by ``count`` random K (or by the given ``matrices``) and
    check u_alg == K^T u_new K exactly; with ``invariants`` also compare the
    certified invariant fields.
    """
    if alg.dim > settings.TRIAL_DIM_CAP:
        raise UsageError(
            f"{alg.name}: dimension {alg.dim} exceeds the trial cap {settings.TRIAL_DIM_CAP}"
        )
    rng = np.random.default_rng(settings.SEED if seed is None else seed)
    base = anti_rotor(alg)
    base_fields = certified_fields(_report(alg, base)) if invariants else {}
    tally = TrialTally()
    Ks = list(matrices) if matrices is not None else [random_invertible(alg.dim, rng) for _ in range(count)]
    for t, K in enumerate(Ks):
        moved = transform(alg, K)
        u_new = anti_rotor(moved)
        problems = []
        if not subspace_equal(base, congruent(u_new, K)):
            problems.append("K^T u_new K differs from u")
        if invariants:
            diff = _shared_mismatch(base_fields, certified_fields(_report(moved, u_new)))
            if diff:
                problems.append(f"certified invariants changed: {diff}")
        if problems:
            tally.failed += 1
            tally.failures.append(
                {"trial": t, "K": [[format_rational(v) for v in row] for row in K], "problems": problems}
            )
            logger.warning("[trials] %s trial %d failed: %s", alg.name, t, problems)
        else:
            tally.passed += 1
    logger.info("[trials] %s: %d passed, %d failed", alg.name, tally.passed, tally.failed)
    return tally


def antirotor_type_survey(alg: Algebra, powers: Iterable[int]) -> SurveyResult:
    powers = sorted(set(powers))
    bad = [j for j in powers if j not in _SURVEY_POWERS]
    if bad:
        raise UsageError(f"survey powers must lie in -3..4 excluding 0 and 1, got {bad}")
    if not alg.unital and any(j < 0 for j in powers):
        raise UsageError(f"{alg.name}: negative powers need a unital algebra")
    # power -1 is the inverse field
    modes = [FieldMode("inverse", -1) if j == -1 else FieldMode("power", j) for j in powers]
    rotors = [anti_rotor(alg, mode) for mode in modes]
    equal = [[subspace_equal(a, b) for b in rotors] for a in rotors]
    return SurveyResult(
        labels=[mode.label for mode in modes],
        dims=[u.param_count for u in rotors],
        equal=equal,
    )
