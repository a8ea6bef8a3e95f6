"""
Pattern classifier for the real zero set of det(M_u).

Dimensions are measured inside the subspace of sensitive parameters
(convention tag "sensitive-subspace"). Shapes recognised:

* det == 0                         -> dim m, 0 components
* nonzero constant                 -> empty set, dim "n/a"
* product of linear forms          -> one hyperplane per distinct form
* linear forms x semidefinite
  quadratic form                   -> hyperplanes plus the kernel of the
                                      form, unless a hyperplane contains it
Anything else is reported as "unsupported" together with the raw polynomial.
"""
from __future__ import annotations

import logging
from typing import List

from app.core.exactcas.linalg import rank_exact
from app.core.exactcas.poly import MultiPoly, total_degree
from app.core.invariants.sextuple import gram_matrix
from app.models import VarietySummary

logger = logging.getLogger(__name__)


def _positive_semidefinite(G: List[List[object]]) -> bool:
    """Symmetric elimination without pivoting: pivots >= 0, a zero pivot needs a zero row."""
    A = [row[:] for row in G]
    n = len(A)
    for k in range(n):
        p = A[k][k]
        if p < 0:
            return False
        if p == 0:
            if any(A[k][j] for j in range(k + 1, n)):
                return False
            continue
        for i in range(k + 1, n):
            f = A[i][k] / p
            for j in range(k + 1, n):
                A[i][j] -= f * A[k][j]
    return True


def _semidefinite(G: List[List[object]]) -> bool:
    return _positive_semidefinite(G) or _positive_semidefinite([[-v for v in row] for row in G])


def _linear_coeffs(f: MultiPoly) -> List[object]:
    R = f.ring
    return [f.coeff(g) for g in R.gens]


def variety_summary(det: MultiPoly, m: int, sensitive: int) -> VarietySummary:
    if not det:
        return VarietySummary(dim=m, component_count=0, shape="zero")
    if total_degree(det) == 0:
        return VarietySummary(dim="n/a", component_count=0, shape="empty")

    _, factors = det.factor_list()
    linear: List[MultiPoly] = []
    other: List[MultiPoly] = []
    for f, _mult in factors:
        (linear if total_degree(f) == 1 else other).append(f)

    if not other:
        return VarietySummary(dim=sensitive - 1, component_count=len(linear), shape="hyperplanes")

    if len(other) == 1 and total_degree(other[0]) == 2:
        quad = other[0]
        G = gram_matrix(quad, det.ring.ngens)
        if all(sum(mon) == 2 for mon in quad.monoms()) and _semidefinite(G):
            rank = rank_exact(G)
            # a hyperplane that contains the kernel absorbs it
            absorbed = any(rank_exact(G + [_linear_coeffs(f)]) == rank for f in linear)
            dims = [sensitive - 1] if linear else []
            if not absorbed:
                dims.append(sensitive - rank)
            return VarietySummary(
                dim=max(dims),
                component_count=len(linear) + (0 if absorbed else 1),
                shape="hyperplanes+semidefinite-quadric",
            )

    logger.warning("[invariants] variety of %s not recognised", det.as_expr())
    return VarietySummary(
        dim="unsupported", component_count="unsupported", shape="unsupported", raw=str(det.as_expr())
    )
