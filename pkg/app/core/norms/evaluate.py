"""
Numeric unital norms

    log l(s) = (1 / |1|^2) * integral from 1 to s of [L t^-1] . dt

along a piecewise-linear path (by default the axis staircase, which moves
coordinate 0 first, then 1, ...). t^-1 is the left-solve inverse, obtained
by a dense solve of L_t y = 1. Each segment is screened before it is
integrated: at every candidate point det(L_t) must keep the sign it has at
the unit and the unit margin sigma_min(L_t) / (|t| |C|) must stay away from
zero. Candidates include the extrema of the det polynomial, where a zero
that touches without changing sign shows up.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import Polynomial

from app.config import Settings
from app.core.algebra.structure import require_unit, structure_matrix_numeric
from app.core.errors import DomainError, UsageError
from app.core.exactcas.poly import parse_rational, to_float
from app.core.norms.quadrature import integrate
from app.core.skewer.curl import anti_rotor
from app.core.skewer.subspace import membership_check
from app.models import Algebra, NormEvaluation, ParamSymMatrix

logger = logging.getLogger(__name__)

settings = Settings()

# nodes sampled per segment before integrating
_PROBES = 64
# unit margin at or below this counts as a non-unit
_SINGULAR_RTOL = 1e-9


@dataclass
class NumericAlgebra:
    """Floating-point view of an algebra used by the integrators."""

    C: np.ndarray
    unit: np.ndarray
    norm_sq: float

    @classmethod
    def of(cls, alg: Algebra) -> "NumericAlgebra":
        require_unit(alg)
        return cls(
            structure_matrix_numeric(alg),
            np.array([to_float(u) for u in alg.unit]),
            to_float(alg.unit_norm_sq),
        )

    def left(self, t: np.ndarray) -> np.ndarray:
        # (L_t)_{kj} = sum_i c[i][j][k] t_i
        return np.einsum("ijk,i->kj", self.C, t)

    def multiply(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.einsum("ijk,i,j->k", self.C, a, b)

    def inverse(self, t: np.ndarray) -> np.ndarray:
        return np.linalg.solve(self.left(t), self.unit)

    def det(self, t: np.ndarray) -> float:
        return float(np.linalg.det(self.left(t)))

    def unit_margin(self, t: np.ndarray) -> float:
        """sigma_min(L_t) / (|t| |C|): zero on a non-unit, unchanged when t is scaled."""
        size = np.linalg.norm(t) * np.linalg.norm(self.C)
        if size == 0.0:
            return 0.0
        return float(np.linalg.svd(self.left(t), compute_uv=False)[-1] / size)


def as_float_matrix(L) -> np.ndarray:
    return np.array([[to_float(parse_rational(v)) for v in row] for row in L])


def staircase_path(start: Sequence[float], end: Sequence[float], order: Optional[Sequence[int]] = None):
    order = list(range(len(start))) if order is None else list(order)
    points = [np.array(start, dtype=float)]
    current = np.array(start, dtype=float)
    for k in order:
        if current[k] == end[k]:
            continue
        current = current.copy()
        current[k] = end[k]
        points.append(current)
    return points


def _segment_det(num: NumericAlgebra, a: np.ndarray, b: np.ndarray) -> Polynomial:
    """det(L_t) along a -> b, exactly a polynomial of degree <= n in the segment parameter."""
    n = len(a)
    nodes = 0.5 - 0.5 * np.cos(np.pi * (np.arange(n + 1) + 0.5) / (n + 1))
    values = [num.det(a + x * (b - a)) for x in nodes]
    return Polynomial.fit(nodes, values, deg=n, domain=[0.0, 1.0])


def _segment_candidates(num: NumericAlgebra, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Samples, interior extrema of det and the closest approach to 0."""
    d = b - a
    parts = [np.linspace(0.0, 1.0, _PROBES), [np.clip(-(a @ d) / (d @ d), 0.0, 1.0)]]
    if len(a) >= 2:
        # a zero that touches without a sign change sits at an extremum
        crit = _segment_det(num, a, b).deriv().roots()
        keep = (np.abs(crit.imag) < 1e-3) & (crit.real >= 0.0) & (crit.real <= 1.0)
        parts.append(crit[keep].real)
    return np.concatenate(parts)


def _check_segment(num: NumericAlgebra, a: np.ndarray, b: np.ndarray, sign: float) -> None:
    if not np.any(b - a):
        return
    for x in _segment_candidates(num, a, b):
        t = a + x * (b - a)
        if np.sign(num.det(t)) != sign or num.unit_margin(t) <= _SINGULAR_RTOL:
            raise DomainError(
                f"path crosses a non-unit near {np.round(t, 6).tolist()}; supply a custom path"
            )


def log_norm(
    num: NumericAlgebra,
    Lf: np.ndarray,
    s: Sequence[float],
    tol: float,
    path: Optional[List[np.ndarray]] = None,
) -> Tuple[float, float, List[np.ndarray]]:
    """(log l(s), error estimate, path) for a float metric."""
    s = np.asarray(s, dtype=float)
    if path is None:
        path = staircase_path(num.unit, s)
    else:
        path = [np.asarray(p, dtype=float) for p in path]
        if not np.allclose(path[0], num.unit) or not np.allclose(path[-1], s):
            raise UsageError("custom path must start at the unit and end at s")
    sign = np.sign(num.det(num.unit))
    total, error = 0.0, 0.0
    for a, b in zip(path[:-1], path[1:]):
        _check_segment(num, a, b, sign)
        direction = b - a

        def integrand(tau, a=a, direction=direction):
            t = a + tau * direction
            return float(direction @ (Lf @ num.inverse(t)))

        seg = integrate(integrand, 0.0, 1.0, tol / max(1, len(path) - 1))
        logger.debug("[norm] segment %s -> %s panels=%d", a.tolist(), b.tolist(), seg.panels)
        total += seg.value
        error += seg.error
    return total / num.norm_sq, error / num.norm_sq, path


def eval_norm(
    alg: Algebra,
    L,
    s: Sequence,
    tol: Optional[float] = None,
    u: Optional[ParamSymMatrix] = None,
    path: Optional[Sequence[Sequence[float]]] = None,
    check_membership: bool = True,
) -> NormEvaluation:
    tol = settings.TOLERANCE if tol is None else tol
    if len(s) != alg.dim:
        raise UsageError(f"point has {len(s)} coordinates, expected {alg.dim}")
    coords = None
    if check_membership:
        u = anti_rotor(alg) if u is None else u
        found = membership_check(u, L)
        if not found.member:
            raise DomainError("metric is not in the anti-rotor; the norm integral would be path-dependent")
        coords = found.coordinates
    num = NumericAlgebra.of(alg)
    Lf = as_float_matrix(L)
    point = [to_float(parse_rational(v)) if not isinstance(v, float) else v for v in s]
    log_value, err, used = log_norm(num, Lf, point, tol, None if path is None else list(path))
    return NormEvaluation(
        value=float(np.exp(log_value)),
        log_value=log_value,
        path=tuple(tuple(float(x) for x in p) for p in used),
        quadrature_error_estimate=err,
        metric_coordinates=coords,
        flagged=err > tol,
    )
