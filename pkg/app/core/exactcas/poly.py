"""
Exact rationals and multivariate polynomials over QQ.

Strategy
--------
* BigRational is the ground element of sympy's ``QQ`` domain (always
  reduced, positive denominator).
* MultiPoly is a ``PolyElement`` of a ``QQ[x1..xn]`` ring with graded-lex
  order; sympy stores no zero coefficients and caches rings, so two
  polynomials are comparable exactly when their rings are equal.

Public helpers
--------------
poly_ring(nvars, prefix)           -> PolyRing
parse_rational(value)              -> QQ element
format_rational(q)                 -> "p/q" string
poly_arith(a, b, op)               -> MultiPoly
poly_derivative(p, var)            -> MultiPoly
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence

import numpy as np
from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing, ring

from app.core.errors import UsageError

MultiPoly = PolyElement

_OPS = ("add", "sub", "mul")


# ------ rationals ------ #


def parse_rational(value) -> object:
    """Accept int, "p/q" / decimal strings, Fractions, QQ elements or floats."""
    if isinstance(value, bool):
        raise UsageError(f"not a rational number: {value!r}")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, float):
        # decimal text of the float, not its binary expansion
        value = repr(value)
    if isinstance(value, str):
        try:
            f = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"not a rational number: {value!r}") from exc
        return QQ(f.numerator, f.denominator)
    try:
        return QQ.convert(value)
    except Exception as exc:  # CoercionFailed and friends
        raise UsageError(f"not a rational number: {value!r}") from exc


def to_fraction(q) -> Fraction:
    return Fraction(int(QQ.numer(q)), int(QQ.denom(q)))


def format_rational(q) -> str:
    num, den = int(QQ.numer(q)), int(QQ.denom(q))
    return str(num) if den == 1 else f"{num}/{den}"


def to_float(q) -> float:
    return float(to_fraction(q))


# ------ polynomials ------ #


@lru_cache(maxsize=None)
def poly_ring(nvars: int, prefix: str = "x") -> PolyRing:
    if nvars < 1:
        raise UsageError("polynomial ring needs at least one variable")
    names = [f"{prefix}{i + 1}" for i in range(nvars)]
    R, *_ = ring(names, QQ, grlex)
    return R


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    if op not in _OPS:
        raise UsageError(f"unknown polynomial operation {op!r}")
    if a.ring != b.ring:
        raise UsageError(
            f"variable-count mismatch: {a.ring.ngens} vs {b.ring.ngens}"
        )
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    return a * b


def poly_derivative(p: MultiPoly, var: int) -> MultiPoly:
    if not 0 <= var < p.ring.ngens:
        raise UsageError(f"variable index {var} out of range for {p.ring.ngens} variables")
    return p.diff(p.ring.gens[var])


def total_degree(p: MultiPoly) -> int:
    if not p:
        return -1
    return max(sum(m) for m in p.monoms())


def variables_present(p: MultiPoly) -> List[int]:
    seen = set()
    for monom in p.monoms():
        seen.update(i for i, e in enumerate(monom) if e)
    return sorted(seen)


def linear_poly(R: PolyRing, coeffs: Sequence[object]) -> MultiPoly:
    """sum_i coeffs[i] * x_i."""
    out = R.zero
    for c, x in zip(coeffs, R.gens):
        if c:
            out += x * QQ.convert(c)
    return out


def numeric_evaluator(p: MultiPoly):
    """Float evaluator x -> p(x) for a 1-D numpy array x."""
    if not p:
        return lambda x: 0.0
    monoms = np.array(p.monoms(), dtype=int)
    coeffs = np.array([to_float(c) for c in p.coeffs()], dtype=float)

    def evaluate(x) -> float:
        x = np.asarray(x, dtype=float)
        return float(coeffs @ np.prod(x[None, :] ** monoms, axis=1))

    return evaluate
