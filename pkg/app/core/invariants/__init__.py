"""
Invariant report for an algebra: anti-rotor ranks, det(M_u), its zero set and
the tau triple, assembled in one place.
"""
from __future__ import annotations

import logging
from typing import Optional

from app.core.invariants.sextuple import (
    det_polynomial,
    max_rank,
    min_nonzero_rank,
    sensitive_param_count,
)
from app.core.invariants.tau import tau_triple
from app.core.invariants.variety import variety_summary
from app.core.invariants.verdict import compare, epimorphism_dim_check, is_simple  # noqa: F401
from app.core.skewer.curl import anti_rotor
from app.models import Algebra, FieldMode, InvariantReport, ParamSymMatrix

logger = logging.getLogger(__name__)


def sextuple(
    u: ParamSymMatrix, grid: Optional[int] = None, seed: Optional[int] = None
) -> InvariantReport:
    det = det_polynomial(u)
    top, method = max_rank(u, det, seed)
    low, certainty = min_nonzero_rank(u, det, grid)
    sensitive = sensitive_param_count(det, u.param_count)
    warnings = []
    if method != "exact":
        warnings.append("largest rank is probabilistic")
    if certainty != "certified":
        warnings.append("smallest nonzero rank is an upper bound")
    variety = variety_summary(det, u.param_count, sensitive)
    if not variety.supported:
        warnings.append("variety shape unsupported")
    return InvariantReport(
        n=u.n,
        m=u.param_count,
        max_rank=top,
        max_rank_method=method,
        min_nonzero_rank=low,
        min_rank_certainty=certainty,
        det_poly=det,
        sensitive_param_count=sensitive,
        variety=variety,
        warnings=warnings,
    )


def build_report(
    alg: Algebra,
    mode: FieldMode = FieldMode("inverse", -1),
    grid: Optional[int] = None,
    seed: Optional[int] = None,
) -> InvariantReport:
    u = anti_rotor(alg, mode)
    report = sextuple(u, grid, seed)
    if alg.unital and mode.kind == "inverse":
        raw, undecided, warnings = tau_triple(alg, u)
        report.tau_raw = raw
        report.tau_undecided = undecided
        report.warnings.extend(warnings)
    if not alg.associative:
        report.warnings.append("non-associative input: s^-1 is the left-solve inverse")
    return report
