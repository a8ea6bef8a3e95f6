"""
Subspace operations on anti-rotors: normalization, membership, equality and
congruence by a change of basis.
"""
from __future__ import annotations

import logging
from typing import List, Sequence

from sympy.polys.domains import QQ

from app.core.algebra.fields import symbolic_inverse
from app.core.algebra.structure import require_unit
from app.core.errors import UsageError, VerificationError
from app.core.exactcas.linalg import congruence, rank_exact, solve_affine
from app.core.exactcas.poly import parse_rational
from app.core.skewer.curl import upper_positions
from app.models import AffineSubspace, Algebra, MembershipResult, ParamSymMatrix, RationalMatrix

logger = logging.getLogger(__name__)


def _combine(gens: Sequence[RationalMatrix], coords: Sequence[object], n: int) -> RationalMatrix:
    return tuple(
        tuple(
            sum((c * g[i][j] for c, g in zip(coords, gens)), QQ.zero)
            for j in range(n)
        )
        for i in range(n)
    )


def normalized_subspace(alg: Algebra, u: ParamSymMatrix) -> AffineSubspace:
    """
    Members M of u with s^T M s^-1 = |1|^2, as a particular member plus the
    homogeneous directions. The particular member is the minimum-norm point
    in parameter coordinates.
    """
    require_unit(alg)
    field = symbolic_inverse(alg)
    R = field.denominator.ring
    xs = R.gens
    n = alg.dim
    gens = u.generators()

    # G_q = sum_{j,k} x_j (u_q)_jk p_k
    polys = []
    for g in gens:
        acc = R.zero
        for j in range(n):
            for k in range(n):
                if g[j][k] and field.numerators[k]:
                    acc += xs[j] * field.numerators[k] * g[j][k]
        polys.append(acc)
    target = field.denominator * alg.unit_norm_sq

    monoms = set(target.keys())
    for p in polys:
        monoms.update(p.keys())
    rows, rhs = [], []
    for monom in sorted(monoms, reverse=True):
        rows.append([p.get(monom, QQ.zero) for p in polys])
        rhs.append(target.get(monom, QQ.zero))

    solved = solve_affine(rows, rhs, len(gens))
    if solved is None:
        if alg.associative:
            raise VerificationError(
                f"{alg.name}: normalization system is inconsistent for a unital associative algebra"
            )
        logger.warning("[skewer] %s: no normalized member", alg.name)
        return AffineSubspace(None, None, consistent=False)

    coords, null = solved
    particular = _combine(gens, coords, n)
    directions = ParamSymMatrix.from_generators(n, [_combine(gens, w, n) for w in null])
    logger.info("[skewer] %s: normalized subspace of dimension %d", alg.name, len(null))
    return AffineSubspace(particular, directions, consistent=True)


def _check_symmetric(L, n: int) -> List[List[object]]:
    if len(L) != n or any(len(row) != n for row in L):
        raise UsageError(f"metric must be {n}x{n}")
    Lq = [[parse_rational(v) for v in row] for row in L]
    for i in range(n):
        for j in range(i + 1, n):
            if Lq[i][j] != Lq[j][i]:
                raise UsageError(f"metric is not symmetric at ({i}, {j})")
    return Lq


def membership_check(u: ParamSymMatrix, L) -> MembershipResult:
    n = u.n
    Lq = _check_symmetric(L, n)
    gens = u.generators()
    positions = upper_positions(n)
    if not gens:
        zero = all(Lq[i][j] == 0 for i, j in positions)
        return MembershipResult(zero, () if zero else None)
    rows = [[g[i][j] for g in gens] for i, j in positions]
    rhs = [Lq[i][j] for i, j in positions]
    solved = solve_affine(rows, rhs, len(gens))
    if solved is None:
        return MembershipResult(False)
    coords, _ = solved
    return MembershipResult(True, tuple(coords))


def subspace_equal(u1: ParamSymMatrix, u2: ParamSymMatrix) -> bool:
    if u1.n != u2.n:
        raise UsageError("anti-rotors of different sizes cannot be compared")
    if u1.param_count != u2.param_count:
        return False
    return all(membership_check(u1, g).member for g in u2.generators())


def congruent(u: ParamSymMatrix, K) -> ParamSymMatrix:
    """The family K^T u K."""
    gens = [
        tuple(tuple(row) for row in congruence(K, [list(r) for r in g]))
        for g in u.generators()
    ]
    return ParamSymMatrix.from_generators(u.n, gens)


def generator_rank(u: ParamSymMatrix) -> int:
    """Dimension of the span of the generators (equals m for anti-rotors)."""
    positions = upper_positions(u.n)
    return rank_exact([[g[i][j] for i, j in positions] for g in u.generators()], len(positions))
