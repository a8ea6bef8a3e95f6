"""
Adaptive Gauss-Legendre quadrature with interval halving.

A panel is accepted when the fixed-order rule on the whole panel and the
sum over its two halves agree within the panel's share of the tolerance;
the error estimate is the sum of those differences.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import special

logger = logging.getLogger(__name__)

_ORDER = 10
_NODES, _WEIGHTS = special.roots_legendre(_ORDER)
_MAX_DEPTH = 40


@dataclass
class QuadratureResult:
    value: float
    error: float
    panels: int


def gauss_legendre(f: Callable[[float], float], a: float, b: float) -> float:
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    values = np.array([f(mid + half * x) for x in _NODES])
    return float(half * np.dot(_WEIGHTS, values))


def integrate(f: Callable[[float], float], a: float, b: float, tol: float) -> QuadratureResult:
    if a == b:
        return QuadratureResult(0.0, 0.0, 0)
    whole = gauss_legendre(f, a, b)
    return _refine(f, a, b, whole, tol, 0)


def _refine(f, a: float, b: float, whole: float, tol: float, depth: int) -> QuadratureResult:
    mid = 0.5 * (a + b)
    left = gauss_legendre(f, a, mid)
    right = gauss_legendre(f, mid, b)
    diff = abs(left + right - whole)
    if diff <= tol or depth >= _MAX_DEPTH:
        if depth >= _MAX_DEPTH and diff > tol:
            logger.warning("[norm] quadrature depth limit on [%g, %g], diff=%.3g", a, b, diff)
        return QuadratureResult(left + right, diff, 2)
    lhs = _refine(f, a, mid, left, tol / 2, depth + 1)
    rhs = _refine(f, mid, b, right, tol / 2, depth + 1)
    return QuadratureResult(lhs.value + rhs.value, lhs.error + rhs.error, lhs.panels + rhs.panels)
