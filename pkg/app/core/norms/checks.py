"""
Floating-point verification battery for unital norms.

Every check returns a CheckReport; none raises on a failed comparison so the
caller decides whether a failure is fatal (the CLI maps FAIL to exit 3).
Thresholds: 10 * tol for quadrature-vs-quadrature comparisons, 1e-8 for the
comparisons that go through a central-difference gradient, and 1e-5
relative for the gradient itself.
"""
from __future__ import annotations

import logging
from typing import Optional, Sequence

import numpy as np

from app.config import Settings
from app.core.algebra.fields import star_inverse_matches
from app.core.algebra.registry import metadata, star_signs
from app.core.errors import DomainError, UsageError
from app.core.exactcas.poly import parse_rational, to_float
from app.core.norms.evaluate import NumericAlgebra, as_float_matrix, log_norm, staircase_path
from app.core.skewer.curl import anti_rotor
from app.core.skewer.subspace import normalized_subspace
from app.models import Algebra, CheckReport, NormPair

logger = logging.getLogger(__name__)

settings = Settings()

_FD_TOL = 1e-13
_GRADIENT_THRESHOLD = 1e-8
_DUALITY_RELATIVE = 1e-5


def _threshold(tol: Optional[float]) -> float:
    return settings.check_threshold if tol is None else 10.0 * tol


def _tol(tol: Optional[float]) -> float:
    return settings.TOLERANCE if tol is None else tol


def _point(s) -> np.ndarray:
    return np.array([v if isinstance(v, float) else to_float(parse_rational(v)) for v in s])


def _gradient(fn, x: np.ndarray, h: float) -> np.ndarray:
    g = np.zeros_like(x)
    for i in range(len(x)):
        step = np.zeros_like(x)
        step[i] = h
        g[i] = (fn(x + step) - fn(x - step)) / (2 * h)
    return g


# ------ path, scaling, inversion ------ #


def check_path_independence(alg: Algebra, L, s, tol: Optional[float] = None) -> CheckReport:
    num = NumericAlgebra.of(alg)
    Lf = as_float_matrix(L)
    x = _point(s)
    forward, _, _ = log_norm(num, Lf, x, _tol(tol))
    backward_path = staircase_path(num.unit, x, reversed(range(alg.dim)))
    backward, _, _ = log_norm(num, Lf, x, _tol(tol), backward_path)
    diff = abs(forward - backward)
    passed = diff <= _threshold(tol)
    logger.info("[check] path %s diff=%.3g %s", alg.name, diff, "ok" if passed else "FAIL")
    return CheckReport(
        "path",
        passed,
        {"forward": forward, "reversed": backward, "difference": diff},
    )


def check_homogeneity(
    alg: Algebra, L, s, tol: Optional[float] = None, factors: Sequence[float] = (0.9, 1.1)
) -> CheckReport:
    num = NumericAlgebra.of(alg)
    Lf = as_float_matrix(L)
    x = _point(s)
    exponent = float(num.unit @ Lf @ num.unit) / num.norm_sq
    base, _, _ = log_norm(num, Lf, x, _tol(tol))
    worst = 0.0
    for a in factors:
        scaled, _, _ = log_norm(num, Lf, a * x, _tol(tol))
        worst = max(worst, abs((scaled - base) - exponent * np.log(a)))
    passed = worst <= _threshold(tol)
    return CheckReport("homogeneity", passed, {"exponent": exponent, "max_deviation": worst})


def check_reciprocity(
    alg: Algebra, L, s, tol: Optional[float] = None, h: Optional[float] = None
) -> CheckReport:
    """
    l(s^-1) l(s) = 1 and, when L is nonsingular, the unit-direction identities
    w = |1|^2 L^-1 grad l(s^-1) satisfies l(w) = 1 and l(s) w = s.
    """
    h = settings.FD_STEP if h is None else h
    num = NumericAlgebra.of(alg)
    Lf = as_float_matrix(L)
    x = _point(s)
    x_inv = num.inverse(x)
    log_s, _, _ = log_norm(num, Lf, x, _tol(tol))
    log_inv, _, _ = log_norm(num, Lf, x_inv, _tol(tol))
    product_dev = abs(log_s + log_inv)
    details = {"log_product": log_s + log_inv}
    passed = product_dev <= _threshold(tol)

    if abs(np.linalg.det(Lf)) > 1e-12:
        def norm_at(y):
            return float(np.exp(log_norm(num, Lf, y, _FD_TOL)[0]))

        grad = _gradient(norm_at, x_inv, h)
        w = num.norm_sq * np.linalg.solve(Lf, grad)
        unit_dev = abs(norm_at(w) - 1.0)
        recon_dev = float(np.max(np.abs(np.exp(log_s) * w - x)))
        details.update({"unit_direction_deviation": unit_dev, "reconstruction_deviation": recon_dev})
        passed = passed and unit_dev <= _GRADIENT_THRESHOLD and recon_dev <= _GRADIENT_THRESHOLD
    else:
        details["unit_direction"] = "skipped (singular metric)"
    return CheckReport("reciprocity", passed, details)


def check_duality(alg: Algebra, L, s, h: Optional[float] = None) -> CheckReport:
    """grad(|1|^2 log l)(s) against L s^-1, relative error."""
    h = settings.FD_STEP if h is None else h
    num = NumericAlgebra.of(alg)
    Lf = as_float_matrix(L)
    x = _point(s)

    def scaled_log(y):
        return num.norm_sq * log_norm(num, Lf, y, _FD_TOL)[0]

    grad = _gradient(scaled_log, x, h)
    exact = Lf @ num.inverse(x)
    rel = float(np.max(np.abs(grad - exact)) / max(1.0, float(np.max(np.abs(exact)))))
    return CheckReport("duality", rel <= _DUALITY_RELATIVE, {"relative_error": rel})


# ------ group structure ------ #


def combine_pairs(p1: NormPair, p2: NormPair) -> NormPair:
    """(L1, l1) * (L2, l2) = (L1 + L2, l1 l2)."""
    if p1.algebra != p2.algebra:
        raise UsageError("norm pairs belong to different algebras")
    n = p1.algebra.dim
    metric = tuple(
        tuple(parse_rational(p1.metric[i][j]) + parse_rational(p2.metric[i][j]) for j in range(n))
        for i in range(n)
    )
    return NormPair(p1.algebra, metric)


def check_group_law(alg: Algebra, L1, L2, s, tol: Optional[float] = None) -> CheckReport:
    num = NumericAlgebra.of(alg)
    x = _point(s)
    combined = combine_pairs(NormPair(alg, L1), NormPair(alg, L2))
    logs = [log_norm(num, as_float_matrix(M), x, _tol(tol))[0] for M in (L1, L2, combined.metric)]
    dev = abs(logs[2] - logs[0] - logs[1])
    return CheckReport("group", dev <= 2 * _threshold(tol), {"deviation": dev})


def check_multiplicativity(alg: Algebra, L, s1, s2, tol: Optional[float] = None) -> CheckReport:
    num = NumericAlgebra.of(alg)
    Lf = as_float_matrix(L)
    a, b = _point(s1), _point(s2)
    la = log_norm(num, Lf, a, _tol(tol))[0]
    lb = log_norm(num, Lf, b, _tol(tol))[0]
    lab = log_norm(num, Lf, num.multiply(a, b), _tol(tol))[0]
    dev = abs(lab - la - lb)
    return CheckReport(
        "multiplicative", dev <= _threshold(tol), {"deviation": dev}, informational=True
    )


# ------ special norms ------ #


def special_metric(alg: Algebra):
    """Registry metric if one is recorded, else the minimum-norm normalized member."""
    explicit = metadata(alg.name).get("special", {}).get("metric")
    if explicit is not None:
        return [[parse_rational(v) for v in row] for row in explicit]
    sub = normalized_subspace(alg, anti_rotor(alg))
    if not sub.consistent:
        raise DomainError(f"{alg.name}: no normalized uncurling metric")
    return sub.particular


def _representation_log(alg: Algebra, num: NumericAlgebra, x: np.ndarray, spec: dict) -> float:
    omega = spec.get("omega", "left_regular")
    if omega == "left_regular":
        _, logdet = np.linalg.slogdet(num.left(x))
        return logdet / alg.dim
    if omega == "matrix_columns":
        k = int(round(np.sqrt(alg.dim)))
        _, logdet = np.linalg.slogdet(x.reshape((k, k), order="F"))
        return logdet / k
    if omega == "diagonal":
        idx = spec.get("indices", [])
        return float(np.mean(np.log(np.abs(x[idx]))))
    if omega == "star":
        signs = np.array(star_signs(alg), dtype=float)
        prod = num.multiply(x, signs * x)
        lead = int(np.argmax(np.abs(num.unit)))
        return 0.5 * float(np.log(prod[lead] / num.unit[lead]))
    raise UsageError(f"unknown special-norm representation {omega!r}")


def check_special_vs_det(
    alg: Algebra, tol: Optional[float] = None, points: int = 20, seed: Optional[int] = None
) -> CheckReport:
    spec = metadata(alg.name).get("special")
    if not spec:
        raise DomainError(f"{alg.name}: no special-norm representation recorded")
    L = special_metric(alg)
    num = NumericAlgebra.of(alg)
    Lf = as_float_matrix(L)
    rng = np.random.default_rng(settings.SEED if seed is None else seed)
    worst = 0.0
    for _ in range(points):
        x = num.unit + rng.uniform(-0.1, 0.1, size=alg.dim)
        got = log_norm(num, Lf, x, _tol(tol))[0]
        want = _representation_log(alg, num, x, spec)
        worst = max(worst, abs(got - want))
    passed = worst <= max(_threshold(tol), _GRADIENT_THRESHOLD)
    return CheckReport("special", passed, {"omega": spec.get("omega"), "max_deviation": worst})


def check_star_inverse(alg: Algebra) -> CheckReport:
    signs = star_signs(alg)
    if signs is None:
        raise DomainError(f"{alg.name}: no involution recorded")
    ok = star_inverse_matches(alg, signs)
    return CheckReport("star", ok, {"signs": signs})
