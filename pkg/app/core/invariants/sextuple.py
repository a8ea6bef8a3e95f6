"""
Rank and determinant invariants of an anti-rotor M_u = sum_q a_q u_q.

Strategy
--------
* det(M_u) is a homogeneous polynomial of degree n in a_1..a_m, computed
  by fraction-free elimination over QQ[a].
* Largest rank: exact (largest nonvanishing minor) up to
  ``Settings.EXACT_RANK_MAX_N``, otherwise the best of five random integer
  evaluations (Schwartz-Zippel), tagged "probabilistic".
* Smallest nonzero rank: exhaustive search of the integer grid
  [-B, B]^m \\ {0}. Certified when it reaches 1, or when det is a definite
  quadratic form (then every nonzero member is nonsingular).
* Sensitive parameters: the number of essential variables of det, i.e. the
  dimension of the span of its first partials.
"""
from __future__ import annotations

import itertools
import logging
from typing import Iterator, List, Optional, Tuple

import numpy as np
from sympy.polys.domains import QQ

from app.config import Settings
from app.core.exactcas.linalg import det_exact, matrix_det_poly, rank_exact
from app.core.exactcas.poly import MultiPoly, linear_poly, poly_ring, total_degree
from app.models import ParamSymMatrix

logger = logging.getLogger(__name__)

settings = Settings()

_SZ_TRIALS = 5
_SZ_RANGE = 10 ** 6
# beyond this many grid points only sparse points (<= 3 nonzero entries) are tried
_GRID_LIMIT = 50_000


def parameter_ring(m: int):
    return poly_ring(max(m, 1), "a")


def symbolic_matrix(u: ParamSymMatrix) -> List[List[MultiPoly]]:
    R = parameter_ring(u.param_count)
    coeffs_pad = R.ngens - u.param_count
    return [
        [linear_poly(R, tuple(e.coeffs) + (QQ.zero,) * coeffs_pad) for e in row]
        for row in u.entries
    ]


def det_polynomial(u: ParamSymMatrix) -> MultiPoly:
    return matrix_det_poly(symbolic_matrix(u))


# ------ largest rank ------ #


def _max_rank_exact(S: List[List[MultiPoly]], det: MultiPoly) -> int:
    n = len(S)
    if det:
        return n
    for r in range(n - 1, 0, -1):
        for rows in itertools.combinations(range(n), r):
            for cols in itertools.combinations(range(n), r):
                minor = [[S[i][j] for j in cols] for i in rows]
                if matrix_det_poly(minor):
                    return r
    return 0


def _max_rank_probabilistic(u: ParamSymMatrix, seed: int) -> int:
    rng = np.random.default_rng(seed)
    best = 0
    for _ in range(_SZ_TRIALS):
        alphas = [QQ(int(v)) for v in rng.integers(-_SZ_RANGE, _SZ_RANGE + 1, size=u.param_count)]
        best = max(best, rank_exact(u.evaluate(alphas)))
    return best


def max_rank(u: ParamSymMatrix, det: MultiPoly, seed: Optional[int] = None) -> Tuple[int, str]:
    if u.param_count == 0:
        return 0, "exact"
    if u.n <= settings.EXACT_RANK_MAX_N:
        return _max_rank_exact(symbolic_matrix(u), det), "exact"
    seed = settings.SEED if seed is None else seed
    return _max_rank_probabilistic(u, seed), "probabilistic"


# ------ smallest nonzero rank ------ #


def _grid(m: int, bound: int) -> Iterator[Tuple[int, ...]]:
    values = range(-bound, bound + 1)
    if (2 * bound + 1) ** m <= _GRID_LIMIT:
        for point in itertools.product(values, repeat=m):
            if any(point):
                yield point
        return
    nonzero = [v for v in values if v]
    for k in range(1, min(3, m) + 1):
        for support in itertools.combinations(range(m), k):
            for vals in itertools.product(nonzero, repeat=k):
                point = [0] * m
                for idx, v in zip(support, vals):
                    point[idx] = v
                yield tuple(point)


def gram_matrix(quad: MultiPoly, size: int) -> List[List[object]]:
    G = [[QQ.zero] * size for _ in range(size)]
    for monom, coeff in quad.terms():
        idx = [v for v, e in enumerate(monom) for _ in range(e)]
        a, b = idx
        if a == b:
            G[a][a] += coeff
        else:
            G[a][b] += coeff / 2
            G[b][a] += coeff / 2
    return G


def is_definite_quadratic(p: MultiPoly, nvars: int) -> bool:
    """Exact test by leading principal minors of the Gram matrix, either sign."""
    if not p or any(sum(m) != 2 for m in p.monoms()):
        return False
    G = gram_matrix(p, nvars)
    minors = [det_exact([row[:k] for row in G[:k]]) for k in range(1, nvars + 1)]
    if all(d > 0 for d in minors):
        return True
    return all((d > 0) if k % 2 == 0 else (d < 0) for k, d in enumerate(minors, start=1))


def min_nonzero_rank(
    u: ParamSymMatrix, det: MultiPoly, bound: Optional[int] = None
) -> Tuple[int, str]:
    bound = settings.RANK_GRID if bound is None else bound
    m = u.param_count
    if m == 0:
        return 0, "certified"
    best = u.n
    exhaustive = (2 * bound + 1) ** m <= _GRID_LIMIT
    for point in _grid(m, bound):
        r = rank_exact(u.evaluate([QQ(v) for v in point]))
        if 0 < r < best:
            best = r
            if best == 1:
                return 1, "certified"
    if total_degree(det) == 2 and is_definite_quadratic(det, m):
        return u.n, "certified"
    if not exhaustive:
        logger.info("[invariants] grid of %d^%d points truncated to sparse points", 2 * bound + 1, m)
    return best, "upper-bound"


# ------ sensitive parameters ------ #


def sensitive_param_count(det: MultiPoly, m: int) -> int:
    if not det or m == 0:
        return 0
    R = det.ring
    partials = [det.diff(R.gens[q]) for q in range(m)]
    monoms = sorted({mon for p in partials for mon in p.keys()})
    if not monoms:
        return 0
    rows = [[p.get(mon, QQ.zero) for mon in monoms] for p in partials]
    return rank_exact(rows, len(monoms))
