"""
Exact rational vector fields s -> s^{-1} and s -> s^j over QQ(x1..xn).

The inverse is the left-solve inverse L_s^{-1} 1: a fraction-free solve of
L_s y = 1 gives Adj(L_s) 1 and det(L_s) up to sign, and dividing by the
multivariate gcd of all n+1 polynomials leaves the reduced common
denominator (for M_n this brings det(L_s) = det(s)^n down to det(s)).
"""
from __future__ import annotations

import logging
from functools import lru_cache
from typing import List, Sequence

from app.core.algebra.structure import left_regular_rep, multiply, require_unit
from app.core.errors import DomainError, VerificationError
from app.core.exactcas.linalg import fraction_free_solve
from app.core.exactcas.poly import MultiPoly, poly_ring
from app.models import Algebra, FieldMode, RationalVectorField

logger = logging.getLogger(__name__)


def _reduce(numerators: Sequence[MultiPoly], den: MultiPoly):
    g = den
    for p in numerators:
        if p:
            g = g.gcd(p)
    numerators = [p.exquo(g) for p in numerators]
    den = den.exquo(g)
    lc = den.LC
    return [p.quo_ground(lc) for p in numerators], den.quo_ground(lc)


def check_inverse_identity(alg: Algebra, field: RationalVectorField) -> bool:
    """sum_j (L_s)_{kj} p_j == q * 1_k for every k."""
    L = left_regular_rep(alg)
    q = field.denominator
    for k in range(alg.dim):
        lhs = sum((L[k][j] * field.numerators[j] for j in range(alg.dim)), q.ring.zero)
        if lhs != q * alg.unit[k]:
            return False
    return True


@lru_cache(maxsize=64)
def symbolic_inverse(alg: Algebra) -> RationalVectorField:
    require_unit(alg)
    L = left_regular_rep(alg)
    R = L[0][0].ring
    unit = [R.ground_new(u) for u in alg.unit]
    try:
        y, d = fraction_free_solve(L, unit)
    except DomainError as exc:
        raise DomainError(f"{alg.name}: no generic inverse (det(L_s) is identically zero)") from exc
    p, q = _reduce(y, d)
    field = RationalVectorField(tuple(p), q, FieldMode("inverse", -1))
    if not check_inverse_identity(alg, field):
        raise VerificationError(f"{alg.name}: inverse fails L_s p = q 1")
    logger.debug("[fields] %s inverse denominator degree %s", alg.name, max(sum(m) for m in q.monoms()))
    return field


def _power_vector(alg: Algebra, base: List[MultiPoly], j: int) -> List[MultiPoly]:
    out = list(base)
    for _ in range(j - 1):
        out = multiply(alg, out, base)
    return out


@lru_cache(maxsize=64)
def symbolic_power(alg: Algebra, j: int) -> RationalVectorField:
    """s^j = s^(j-1) s for j >= 1; for j < 0, (s^-1)^|j| composed exactly."""
    if j == 0:
        raise DomainError("s^0 is constant; no field to uncurl")
    if j == -1:
        return symbolic_inverse(alg)
    if j < 0:
        if not alg.unital:
            raise DomainError(f"{alg.name}: negative powers need a unital algebra")
        inv = symbolic_inverse(alg)
        nums = _power_vector(alg, list(inv.numerators), -j)
        p, q = _reduce(nums, inv.denominator ** (-j))
        return RationalVectorField(tuple(p), q, FieldMode("power", j))
    R = poly_ring(alg.dim)
    nums = _power_vector(alg, list(R.gens), j)
    return RationalVectorField(tuple(nums), R.one, FieldMode("power", j))


def field_for(alg: Algebra, mode: FieldMode) -> RationalVectorField:
    if mode.kind == "inverse":
        return symbolic_inverse(alg)
    return symbolic_power(alg, mode.exponent)


def star_inverse_matches(alg: Algebra, signs: Sequence[int]) -> bool:
    """
    For an involution s* = diag(signs) s with s s* = N(s) 1, check exactly that
    the left-solve inverse equals s* / N(s).
    """
    require_unit(alg)
    R = poly_ring(alg.dim)
    xs = R.gens
    conj = [x * sg for x, sg in zip(xs, signs)]
    prod = multiply(alg, xs, conj)
    unit_idx = next(i for i, u in enumerate(alg.unit) if u)
    norm = prod[unit_idx].quo_ground(alg.unit[unit_idx])
    if any(prod[k] != norm * alg.unit[k] for k in range(alg.dim)):
        return False
    inv = symbolic_inverse(alg)
    return all(
        inv.numerators[k] * norm == conj[k] * inv.denominator for k in range(alg.dim)
    )
