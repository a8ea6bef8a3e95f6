"""
Exact linear algebra over QQ and over QQ[x1..xn].

Polynomial matrices use fraction-free (Bareiss) elimination with exact
``exquo`` division, so every intermediate entry stays a polynomial.
Rational matrices go through sympy's ``DomainMatrix`` RREF over QQ.
"""
from __future__ import annotations

import logging
from typing import List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from app.core.errors import DomainError, UsageError
from app.core.exactcas.poly import MultiPoly

logger = logging.getLogger(__name__)

PolyMatrix = Sequence[Sequence[MultiPoly]]
QMatrix = Sequence[Sequence[object]]


def _check_square(M) -> int:
    n = len(M)
    if n == 0 or any(len(row) != n for row in M):
        raise UsageError("matrix must be square and non-empty")
    return n


# ---- polynomial matrices ------------------------------------------------


def matrix_det_poly(M: PolyMatrix) -> MultiPoly:
    n = _check_square(M)
    R = M[0][0].ring
    A = [list(row) for row in M]
    sign = 1
    prev = R.one
    for k in range(n - 1):
        if not A[k][k]:
            swap = next((r for r in range(k + 1, n) if A[r][k]), None)
            if swap is None:
                return R.zero
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        pivot = A[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * pivot - A[i][k] * A[k][j]).exquo(prev)
        prev = pivot
    return A[n - 1][n - 1] if sign > 0 else -A[n - 1][n - 1]


def _minor(M: PolyMatrix, row: int, col: int) -> List[List[MultiPoly]]:
    return [
        [M[i][j] for j in range(len(M)) if j != col]
        for i in range(len(M))
        if i != row
    ]


def matrix_adjugate(M: PolyMatrix) -> List[List[MultiPoly]]:
    n = _check_square(M)
    R = M[0][0].ring
    if n == 1:
        return [[R.one]]
    adj = [[R.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            cof = matrix_det_poly(_minor(M, i, j))
            adj[j][i] = cof if (i + j) % 2 == 0 else -cof
    return adj


def fraction_free_solve(
    M: PolyMatrix, b: Sequence[MultiPoly]
) -> Tuple[List[MultiPoly], MultiPoly]:
    """
    Solve M y = b over the fraction field of the polynomial ring.

    Returns ``(y_scaled, d)`` with ``M * y_scaled == d * b`` and ``d = +-det(M)``,
    i.e. ``y_scaled = Adj(M) b`` up to the common sign. Raises DomainError when
    det(M) is the zero polynomial.
    """
    n = _check_square(M)
    if len(b) != n:
        raise UsageError("right-hand side length differs from matrix size")
    R = M[0][0].ring
    A = [list(M[i]) + [b[i]] for i in range(n)]
    prev = R.one
    for k in range(n):
        if not A[k][k]:
            swap = next((r for r in range(k + 1, n) if A[r][k]), None)
            if swap is None:
                raise DomainError("matrix is singular as a polynomial matrix")
            A[k], A[swap] = A[swap], A[k]
        pivot = A[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                A[i][j] = (A[i][j] * pivot - A[i][k] * A[k][j]).exquo(prev)
            A[i][k] = R.zero
        prev = pivot
    d = A[n - 1][n - 1]
    # back substitution on the scaled unknowns y_i = d * x_i (polynomials by Cramer)
    y = [R.zero] * n
    for i in range(n - 1, -1, -1):
        acc = d * A[i][n]
        for j in range(i + 1, n):
            acc -= A[i][j] * y[j]
        y[i] = acc.exquo(A[i][i])
    return y, d


def poly_matmul(A: PolyMatrix, B: PolyMatrix) -> List[List[MultiPoly]]:
    R = A[0][0].ring
    inner = len(B)
    return [
        [sum((A[i][k] * B[k][j] for k in range(inner)), R.zero) for j in range(len(B[0]))]
        for i in range(len(A))
    ]


# ---- rational matrices ----------------------------------------------------


def _to_domain_matrix(A: QMatrix, ncols: int) -> DomainMatrix:
    rows = [[QQ.convert(x) for x in row] for row in A]
    for row in rows:
        if len(row) != ncols:
            raise UsageError("ragged rational matrix")
    return DomainMatrix(rows, (len(rows), ncols), QQ)


def rref_exact(A: QMatrix, ncols: Optional[int] = None) -> Tuple[List[List[object]], Tuple[int, ...]]:
    if not A:
        return [], ()
    ncols = len(A[0]) if ncols is None else ncols
    dm = _to_domain_matrix(A, ncols)
    rref, pivots = dm.rref()
    return rref.to_list(), tuple(pivots)


def rank_exact(A: QMatrix, ncols: Optional[int] = None) -> int:
    if not A:
        return 0
    _, pivots = rref_exact(A, ncols)
    return len(pivots)


def nullspace_exact(A: QMatrix, ncols: Optional[int] = None) -> List[List[object]]:
    """
    Canonical nullspace basis: one vector per free column, carrying a 1 in that
    column and 0 in every other free column, ordered by free-column index.
    """
    if ncols is None:
        if not A:
            raise UsageError("column count required for an empty matrix")
        ncols = len(A[0])
    if not A:
        return [[QQ.one if i == j else QQ.zero for i in range(ncols)] for j in range(ncols)]
    rref, pivots = rref_exact(A, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [QQ.zero] * ncols
        v[f] = QQ.one
        for r, p in enumerate(pivots):
            v[p] = -rref[r][f]
        basis.append(v)
    return basis


def solve_affine(
    A: QMatrix, b: Sequence[object], ncols: int
) -> Optional[Tuple[List[object], List[List[object]]]]:
    """
    Solve A x = b exactly. Returns ``None`` when inconsistent, otherwise the
    minimum-norm particular solution and the canonical nullspace basis.
    """
    if not A:
        return [QQ.zero] * ncols, nullspace_exact([], ncols)
    aug = [list(row) + [b[i]] for i, row in enumerate(A)]
    rref, pivots = rref_exact(aug, ncols + 1)
    if ncols in pivots:
        return None
    rows = [rref[r][:ncols] for r in range(len(pivots))]
    rhs = [rref[r][ncols] for r in range(len(pivots))]
    # x = R^T (R R^T)^{-1} rhs, the solution orthogonal to the nullspace
    if rows:
        gram = [
            [sum((ri[k] * rj[k] for k in range(ncols)), QQ.zero) for rj in rows]
            for ri in rows
        ]
        w = solve_square(gram, rhs)
        particular = [
            sum((rows[r][c] * w[r] for r in range(len(rows))), QQ.zero) for c in range(ncols)
        ]
    else:
        particular = [QQ.zero] * ncols
    return particular, nullspace_exact(A, ncols)


def solve_square(A: QMatrix, b: Sequence[object]) -> List[object]:
    n = len(A)
    aug = [list(A[i]) + [b[i]] for i in range(n)]
    rref, pivots = rref_exact(aug, n + 1)
    if len(pivots) != n or n in pivots:
        raise DomainError("singular rational matrix")
    return [rref[i][n] for i in range(n)]


def inverse_exact(K: QMatrix) -> List[List[object]]:
    n = _check_square(K)
    aug = [list(K[i]) + [QQ.one if i == j else QQ.zero for j in range(n)] for i in range(n)]
    rref, pivots = rref_exact(aug, 2 * n)
    if pivots[:n] != tuple(range(n)):
        raise DomainError("matrix is singular")
    return [row[n:] for row in rref[:n]]


def matmul_exact(A: QMatrix, B: QMatrix) -> List[List[object]]:
    inner = len(B)
    return [
        [sum((QQ.convert(A[i][k]) * QQ.convert(B[k][j]) for k in range(inner)), QQ.zero)
         for j in range(len(B[0]))]
        for i in range(len(A))
    ]


def transpose(A: QMatrix) -> List[List[object]]:
    return [list(col) for col in zip(*A)]


def congruence(K: QMatrix, L: QMatrix) -> List[List[object]]:
    """K^T L K."""
    return matmul_exact(transpose(K), matmul_exact(L, K))


def det_exact(A: QMatrix) -> object:
    n = _check_square(A)
    return _to_domain_matrix(A, n).det()
