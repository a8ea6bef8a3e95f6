"""
Algebras given by structure constants c[i][j][k]  (e_i e_j = sum_k c[i][j][k] e_k).

Public helpers
--------------
make_algebra(name, structure, unit)  -> Algebra (validated, unit discovered)
validate(alg)                        -> ValidationReport
left_regular_rep(alg)                -> n x n matrix of linear MultiPoly
multiply(alg, u, v)                  -> product of coordinate vectors
transform(alg, K)                    -> Algebra with elements K s
"""
from __future__ import annotations

import logging
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np
from sympy.polys.domains import QQ

from app.core.errors import DomainError, UsageError
from app.core.exactcas.linalg import inverse_exact, matmul_exact, rank_exact, rref_exact
from app.core.exactcas.poly import MultiPoly, parse_rational, poly_ring, to_float
from app.models import Algebra, ValidationReport

logger = logging.getLogger(__name__)


def _coerce_structure(structure) -> Tuple:
    n = len(structure)
    if n == 0:
        raise UsageError("algebra dimension must be at least 1")
    for i, plane in enumerate(structure):
        if len(plane) != n or any(len(row) != n for row in plane):
            raise UsageError(f"structure array must have shape {n}x{n}x{n} (bad slice {i})")
    return tuple(
        tuple(tuple(parse_rational(v) for v in row) for row in plane) for plane in structure
    )


def _is_associative(C, n: int) -> bool:
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for r in range(n):
                    left = sum((C[i][j][l] * C[l][k][r] for l in range(n)), QQ.zero)
                    right = sum((C[j][k][l] * C[i][l][r] for l in range(n)), QQ.zero)
                    if left != right:
                        return False
    return True


def _find_unit(C, n: int) -> Optional[Tuple]:
    # u e_j = e_j and e_j u = e_j for every j: 2 n^2 equations in u
    rows, rhs = [], []
    for j in range(n):
        for k in range(n):
            rows.append([C[i][j][k] for i in range(n)])
            rhs.append(QQ.one if j == k else QQ.zero)
            rows.append([C[j][i][k] for i in range(n)])
            rhs.append(QQ.one if j == k else QQ.zero)
    aug = [row + [rhs[r]] for r, row in enumerate(rows)]
    rref, pivots = rref_exact(aug, n + 1)
    if n in pivots:
        return None
    if len(pivots) < n:
        raise DomainError("unit is not unique: the unit equations are underdetermined")
    return tuple(rref[r][n] for r in range(n))


def _is_unit(C, n: int, u) -> bool:
    for j in range(n):
        for k in range(n):
            target = QQ.one if j == k else QQ.zero
            if sum((u[i] * C[i][j][k] for i in range(n)), QQ.zero) != target:
                return False
            if sum((u[i] * C[j][i][k] for i in range(n)), QQ.zero) != target:
                return False
    return True


def _inspect(C, n: int, unit=None) -> ValidationReport:
    warnings: List[str] = []
    associative = _is_associative(C, n)
    if not associative:
        warnings.append("algebra is not associative; only star and power modes are reliable")
    if unit is not None:
        if len(unit) != n:
            raise UsageError(f"unit has {len(unit)} entries, expected {n}")
        unit = tuple(parse_rational(v) for v in unit)
        if not _is_unit(C, n, unit):
            raise DomainError("supplied unit is not a two-sided identity")
    else:
        unit = _find_unit(C, n)
    norm_sq = sum((u * u for u in unit), QQ.zero) if unit is not None else None
    if unit is None:
        warnings.append("algebra has no two-sided unit; only power mode is available")
    return ValidationReport(associative, unit is not None, unit, norm_sq, warnings)


def make_algebra(name: str, structure, unit: Optional[Sequence] = None) -> Algebra:
    C = _coerce_structure(structure)
    n = len(C)
    report = _inspect(C, n, unit)
    for w in report.warnings:
        logger.info("[algebra] %s: %s", name, w)
    return Algebra(
        name=name,
        dim=n,
        structure=C,
        unit=report.unit,
        unit_norm_sq=report.unit_norm_sq,
        associative=report.associative,
        unital=report.unital,
    )


def validate(alg: Algebra) -> ValidationReport:
    return _inspect(alg.structure, alg.dim, alg.unit)


def require_unit(alg: Algebra) -> None:
    if not alg.unital or alg.unit is None:
        raise DomainError(f"{alg.name}: operation requires a unital algebra")


# ------ representations ------ #


@lru_cache(maxsize=128)
def _nonzero_triples(alg: Algebra) -> Tuple:
    C, n = alg.structure, alg.dim
    return tuple(
        (i, j, k, C[i][j][k])
        for i in range(n)
        for j in range(n)
        for k in range(n)
        if C[i][j][k]
    )


def left_regular_rep(alg: Algebra) -> List[List[MultiPoly]]:
    """(L_s)_{kj} = sum_i c[i][j][k] x_i, so that L_s y = s y."""
    n = alg.dim
    R = poly_ring(n)
    xs = R.gens
    L = [[R.zero] * n for _ in range(n)]
    for i, j, k, c in _nonzero_triples(alg):
        L[k][j] += xs[i] * c
    return L


def multiply(alg: Algebra, u: Sequence, v: Sequence) -> list:
    """Product of two coordinate vectors (polynomial or rational entries)."""
    zero = u[0] * 0
    out = [zero] * alg.dim
    for i, j, k, c in _nonzero_triples(alg):
        if u[i] and v[j]:
            out[k] = out[k] + u[i] * v[j] * c
    return out


def structure_matrix_numeric(alg: Algebra) -> np.ndarray:
    n = alg.dim
    C = np.zeros((n, n, n))
    for i, j, k, c in _nonzero_triples(alg):
        C[i, j, k] = to_float(c)
    return C


# ------ isomorphic copies ------ #


def transform(alg: Algebra, K) -> Algebra:
    """
    Algebra whose elements are K s: c'(e_i, e_j) = K c(K^-1 e_i, K^-1 e_j).
    For this copy the anti-rotors satisfy u_alg = K^T u_new K.
    """
    n = alg.dim
    if len(K) != n or any(len(row) != n for row in K):
        raise UsageError(f"K must be {n}x{n}")
    Kq = [[parse_rational(v) for v in row] for row in K]
    if rank_exact(Kq) != n:
        raise DomainError("K is singular")
    Kinv = inverse_exact(Kq)
    # product of K^-1 e_a and K^-1 e_b in the old basis, then mapped by K
    new = [[[QQ.zero] * n for _ in range(n)] for _ in range(n)]
    for a in range(n):
        for b in range(n):
            acc = [QQ.zero] * n
            for i, j, k, c in _nonzero_triples(alg):
                w = Kinv[i][a] * Kinv[j][b]
                if w:
                    acc[k] += w * c
            mapped = matmul_exact(Kq, [[x] for x in acc])
            for r in range(n):
                new[a][b][r] = mapped[r][0]
    unit = None
    if alg.unit is not None:
        unit = [row[0] for row in matmul_exact(Kq, [[u] for u in alg.unit])]
    return make_algebra(f"{alg.name}~K", new, unit)
