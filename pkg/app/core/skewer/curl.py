"""
Curl (Skewer) constraints for a symmetric metric M against a field f = p / q.

For every pair i < j the cleared curl

    q^2 (d_i [M f]_j - d_j [M f]_i)
        = sum_k M_jk (d_i p_k q - p_k d_i q) - M_ik (d_j p_k q - p_k d_j q)

is a polynomial in x whose coefficients are linear in the n(n+1)/2 upper
triangle entries of M. Each monomial contributes one homogeneous row.

Public helpers
--------------
assemble_curl_system(alg, field)      -> ConstraintSystem
anti_rotor(alg, mode)                 -> ParamSymMatrix
curl_polynomials(field, M)            -> cleared curl per pair (exact)
curl_residual_numeric(field, M, x, h) -> max |d_i v_j - d_j v_i| by central differences
"""
from __future__ import annotations

import logging
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

import numpy as np
from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex

from app.core.algebra.fields import field_for
from app.core.errors import VerificationError
from app.core.exactcas.linalg import nullspace_exact, rank_exact
from app.core.exactcas.poly import MultiPoly, numeric_evaluator, to_float
from app.models import Algebra, ConstraintSystem, FieldMode, ParamSymMatrix, RationalVectorField

logger = logging.getLogger(__name__)


def upper_positions(n: int) -> Tuple[Tuple[int, int], ...]:
    return tuple((i, j) for i in range(n) for j in range(i, n))


def _position_index(n: int) -> Dict[Tuple[int, int], int]:
    index = {}
    for idx, (i, j) in enumerate(upper_positions(n)):
        index[(i, j)] = idx
        index[(j, i)] = idx
    return index


def _cleared_derivatives(field: RationalVectorField) -> List[List[MultiPoly]]:
    """D[i][k] = d_i p_k * q - p_k * d_i q."""
    q = field.denominator
    R = q.ring
    n = R.ngens
    dq = [q.diff(R.gens[i]) for i in range(n)]
    out = []
    for i in range(n):
        x = R.gens[i]
        out.append([p.diff(x) * q - p * dq[i] for p in field.numerators])
    return out


def _pair_coefficients(
    D: List[List[MultiPoly]], i: int, j: int, index: Dict[Tuple[int, int], int]
) -> Dict[int, MultiPoly]:
    """Cleared curl for pair (i, j), split by the unknown multiplying each part."""
    n = len(D)
    zero = D[0][0].ring.zero
    parts: Dict[int, MultiPoly] = {}
    for k in range(n):
        if D[i][k]:
            u = index[(j, k)]
            parts[u] = parts.get(u, zero) + D[i][k]
        if D[j][k]:
            u = index[(i, k)]
            parts[u] = parts.get(u, zero) - D[j][k]
    return {u: p for u, p in parts.items() if p}


def _normalize_row(row: List[object]) -> Tuple[object, ...]:
    lead = next(c for c in row if c)
    return tuple(c / lead for c in row)


def assemble_curl_system(alg: Algebra, field: RationalVectorField) -> ConstraintSystem:
    n = alg.dim
    unknowns = upper_positions(n)
    index = _position_index(n)
    D = _cleared_derivatives(field)

    rows: List[Tuple[object, ...]] = []
    seen = set()
    pairs = 0
    for i in range(n):
        for j in range(i + 1, n):
            pairs += 1
            parts = _pair_coefficients(D, i, j, index)
            monoms = set()
            for p in parts.values():
                monoms.update(p.keys())
            for monom in sorted(monoms, key=grlex, reverse=True):
                row = [QQ.zero] * len(unknowns)
                for u, p in parts.items():
                    row[u] = p.get(monom, QQ.zero)
                if not any(row):
                    continue
                key = _normalize_row(row)
                if key in seen:
                    continue
                seen.add(key)
                rows.append(key)
    logger.info("[skewer] %s %s: %d pairs, %d distinct rows", alg.name, field.mode.label, pairs, len(rows))
    return ConstraintSystem(n=n, unknowns=unknowns, rows=rows, pair_count=pairs)


def _symmetric_from_vector(n: int, vec: Sequence[object]) -> Tuple[Tuple[object, ...], ...]:
    M = [[QQ.zero] * n for _ in range(n)]
    for idx, (i, j) in enumerate(upper_positions(n)):
        M[i][j] = vec[idx]
        M[j][i] = vec[idx]
    return tuple(tuple(row) for row in M)


def curl_polynomials(field: RationalVectorField, M) -> Dict[Tuple[int, int], MultiPoly]:
    """Cleared curl polynomial of M f for every pair i < j."""
    D = _cleared_derivatives(field)
    n = len(D)
    R = field.denominator.ring
    out = {}
    for i in range(n):
        for j in range(i + 1, n):
            acc = R.zero
            for k in range(n):
                if M[j][k]:
                    acc += D[i][k] * M[j][k]
                if M[i][k]:
                    acc -= D[j][k] * M[i][k]
            out[(i, j)] = acc
    return out


def _canonical_basis(system: ConstraintSystem) -> List[List[object]]:
    # free parameters sit at the earliest upper-triangle positions: eliminate
    # on the column-reversed system, then flip back
    N = len(system.unknowns)
    reversed_rows = [list(reversed(row)) for row in system.rows]
    basis = nullspace_exact(reversed_rows, N)
    return [list(reversed(v)) for v in reversed(basis)]


@lru_cache(maxsize=128)
def anti_rotor(alg: Algebra, mode: FieldMode = FieldMode("inverse", -1)) -> ParamSymMatrix:
    field = field_for(alg, mode)
    system = assemble_curl_system(alg, field)
    basis = _canonical_basis(system)
    n = alg.dim
    gens = [_symmetric_from_vector(n, v) for v in basis]
    for q, g in enumerate(gens):
        bad = [pair for pair, poly in curl_polynomials(field, g).items() if poly]
        if bad:
            raise VerificationError(
                f"{alg.name}: generator {q} leaves a nonzero curl on pairs {bad}"
            )
    logger.info(
        "[skewer] %s %s: rank %d of %d unknowns, m = %d",
        alg.name,
        mode.label,
        rank_exact(system.rows, len(system.unknowns)),
        len(system.unknowns),
        len(gens),
    )
    return ParamSymMatrix.from_generators(n, gens)


# ------ floating-point cross-check ------ #


def curl_residual_numeric(
    field: RationalVectorField, M, point: Sequence[float], h: float = 1e-5
) -> float:
    """
    Largest |d_i v_j - d_j v_i| / scale at ``point`` for v = M f, with central
    differences of step h; scale is max(1, max |dv|).
    """
    n = len(field.numerators)
    num = [numeric_evaluator(p) for p in field.numerators]
    den = numeric_evaluator(field.denominator)
    Mf = np.array([[to_float(QQ.convert(c)) for c in row] for row in M])

    def v(x):
        f = np.array([e(x) for e in num]) / den(x)
        return Mf @ f

    x0 = np.asarray(point, dtype=float)
    J = np.zeros((n, n))
    for i in range(n):
        step = np.zeros(n)
        step[i] = h
        J[:, i] = (v(x0 + step) - v(x0 - step)) / (2 * h)
    scale = max(1.0, float(np.max(np.abs(J))))
    return float(np.max(np.abs(J - J.T))) / scale
