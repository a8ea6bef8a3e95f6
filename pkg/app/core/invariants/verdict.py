"""
Turn two invariant reports into a verdict.
Only certified fields ground a "not-isomorphic" verdict; heuristic ones
(probabilistic or upper-bound ranks, unsupported varieties, undecided
triples) are skipped and noted.
"""
from __future__ import annotations

import logging
from typing import List

from app.models import InvariantReport, Verdict

logger = logging.getLogger(__name__)


def _witnesses(a: InvariantReport, b: InvariantReport) -> List[str]:
    out = []
    if a.m != b.m:
        out.append(f"anti-rotor dimension {a.m} vs {b.m}")
    if a.max_rank_method == b.max_rank_method == "exact" and a.max_rank != b.max_rank:
        out.append(f"largest rank {a.max_rank} vs {b.max_rank}")
    if (
        a.min_rank_certainty == b.min_rank_certainty == "certified"
        and a.min_nonzero_rank != b.min_nonzero_rank
    ):
        out.append(f"smallest nonzero rank {a.min_nonzero_rank} vs {b.min_nonzero_rank}")
    if a.sensitive_param_count != b.sensitive_param_count:
        out.append(
            f"parameters in det {a.sensitive_param_count} vs {b.sensitive_param_count}"
        )
    if a.variety.supported and b.variety.supported:
        if (a.variety.dim, a.variety.component_count) != (b.variety.dim, b.variety.component_count):
            out.append(
                f"variety (dim, components) ({a.variety.dim}, {a.variety.component_count})"
                f" vs ({b.variety.dim}, {b.variety.component_count})"
            )
    if (
        a.tau_raw is not None
        and b.tau_raw is not None
        and not (a.tau_undecided or b.tau_undecided)
        and a.tau_raw != b.tau_raw
    ):
        out.append(f"tau triples {a.tau_raw} vs {b.tau_raw}")
    return out


def compare(a: InvariantReport, b: InvariantReport) -> Verdict:
    if a.n != b.n:
        return Verdict("not-isomorphic", [f"algebra dimension {a.n} vs {b.n}"])
    reasons = _witnesses(a, b)
    label = "not-isomorphic" if reasons else "indistinguishable"
    logger.info("[verdict] %s (%d witnesses)", label, len(reasons))
    return Verdict(label, reasons)


def is_simple(report: InvariantReport) -> bool:
    """One-dimensional anti-rotor containing a nonsingular member."""
    return report.m == 1 and bool(report.det_poly)


def epimorphism_dim_check(a: InvariantReport, b: InvariantReport) -> Verdict:
    reasons = []
    if b.m > a.m:
        label = "no-epimorphism"
        reasons.append(f"dim u_B = {b.m} exceeds dim u_A = {a.m}")
    else:
        label = "not-excluded"
    if is_simple(a):
        reasons.append("A is simple")
    if is_simple(b):
        reasons.append("B is simple")
    return Verdict(label, reasons)
