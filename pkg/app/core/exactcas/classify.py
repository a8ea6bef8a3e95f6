"""
Term-class summary of the antiderivative of a univariate rational function.

Strategy
--------
1. Reduce num/den, split off the polynomial part (any nonzero quotient
   integrates to a polynomial, i.e. a rational term).
2. Hermite-reduce the proper part (sympy's Horowitz-Ostrogradsky
   ``ratint_ratpart``); a nonzero rational part means a pole of order >= 2.
3. Factor the squarefree log-part denominator over QQ and look at the
   partial-fraction numerator of each irreducible factor f:
     - real roots of f        -> log terms (residues are real and nonzero)
     - quadratic f, no real root, numerator B t + C:
         B != 0 -> log, C - B b/2 != 0 -> arctan
     - degree >= 3 complex roots: certified isolation rectangles plus
       mpmath interval evaluation of the residue. Up to degree 4 a root
       separation bound on the residue sums and differences turns an
       interval straddling zero into an exact zero; above that a part
       that cannot be separated from zero is reported as undecided.

Public helpers
--------------
univariate_real_factor_classify(num, den, var) -> TermClasses
family_class_rows(nums, den, var)               -> ClassRows (same steps, linear in the parameters)
"""
from __future__ import annotations

import logging
from typing import List, Tuple

from mpmath import iv, mp, polyroots
from sympy import Poly, Symbol, cancel, fraction, resultant
from sympy.integrals.rationaltools import ratint_ratpart
from sympy.polys.domains import QQ
from sympy.polys.rootisolation import dup_isolate_complex_roots_sqf

from app.core.errors import DomainError, UsageError
from app.core.exactcas.poly import MultiPoly
from app.models import ClassRows, TermClasses

logger = logging.getLogger(__name__)

_T, _Y, _Z = Symbol("t"), Symbol("y"), Symbol("z")
_REFINE_BITS = (8, 16, 32, 64, 128, 256)
_EXACT_MAX_DEG = 4


def _to_univariate(p: MultiPoly, var: int) -> Poly:
    terms = {}
    for monom, coeff in p.terms():
        if any(e for i, e in enumerate(monom) if i != var):
            raise UsageError(f"polynomial depends on variables other than x{var + 1}")
        terms[(monom[var],)] = coeff
    if not terms:
        return Poly(0, _T, domain=QQ)
    return Poly.from_dict(terms, _T, domain=QQ)


def univariate_real_factor_classify(num: MultiPoly, den: MultiPoly, var: int) -> TermClasses:
    if not den:
        raise DomainError("denominator is identically zero")
    N = _to_univariate(num, var)
    D = _to_univariate(den, var)
    return classify_poly_ratio(N, D)


def classify_poly_ratio(N: Poly, D: Poly) -> TermClasses:
    out = TermClasses()
    if N.is_zero:
        return out
    g = N.gcd(D)
    N, D = N.exquo(g), D.exquo(g)
    Q, R = N.div(D)
    if not Q.is_zero:
        out.has_rational = True
    if R.is_zero:
        return out

    if D.gcd(D.diff(_T)).degree() > 0:
        rat_part, log_part = ratint_ratpart(R, D, _T)
        if rat_part != 0:
            out.has_rational = True
        if log_part == 0:
            return out
        C_expr, V_expr = fraction(cancel(log_part))
        C = Poly(C_expr, _T, domain=QQ)
        V = Poly(V_expr, _T, domain=QQ)
    else:
        C, V = R, D

    _, factors = V.factor_list()
    for f, _mult in factors:
        f = f.monic()
        cofactor = V.exquo(f)
        numer = (C * cofactor.invert(f)).rem(f)
        if numer.is_zero:
            continue
        cls = _classify_factor(f, numer)
        logger.debug(
            "[classify] factor deg=%d log=%s arctan=%s undecided=%s",
            f.degree(), cls.has_log, cls.has_arctan, cls.undecided,
        )
        out = out.merge(cls)
    return out


def _classify_factor(f: Poly, numer: Poly) -> TermClasses:
    """Contribution of numer/f with f monic irreducible over QQ."""
    deg = f.degree()
    if deg == 1:
        return TermClasses(has_log=True)
    real_count = int(f.count_roots())
    out = TermClasses(has_log=real_count > 0)
    if real_count == deg:
        return out
    if deg == 2:
        # numer = B t + C over t^2 + b t + c
        B = numer.coeff_monomial(_T)
        C = numer.coeff_monomial(1)
        b = f.coeff_monomial(_T)
        if B != 0:
            out.has_log = True
        if C - B * b / 2 != 0:
            out.has_arctan = True
        return out
    # residue at a root alpha is numer(alpha) / f'(alpha) = h(alpha)
    h = (numer * f.diff(_T).invert(f)).rem(f)
    return out.merge(_classify_complex_residues(f, h))


def _rational_interval(lo, hi):
    a = iv.mpf(int(QQ.numer(lo))) / int(QQ.denom(lo))
    b = iv.mpf(int(QQ.numer(hi))) / int(QQ.denom(hi))
    return iv.mpf([a, b])


def _eval_box(coeffs: List, box) -> Tuple:
    (ax, ay), (bx, by) = box
    z = iv.mpc(_rational_interval(ax, bx), _rational_interval(ay, by))
    acc = iv.mpc(0, 0)
    for c in coeffs:
        acc = acc * z + iv.mpf(int(QQ.numer(c))) / int(QQ.denom(c))
    return acc.real, acc.imag


# ------ exact zero tests ------ #


def _nonzero_root_gap(P: Poly):
    """
    Half of a lower bound on |z| over the nonzero roots of P, as a point interval.
    None when every root of P is zero.
    """
    coeffs = [QQ.convert(c) for c in reversed(P.rep.to_list())]
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    if len(coeffs) <= 1:
        return None
    a0 = abs(coeffs[0])
    top = max(abs(c) for c in coeffs[1:])
    bound = a0 / (a0 + top) / 2
    return _rational_interval(bound, bound).a


def _residue_gaps(f: Poly, h: Poly):
    """
    Gaps (re_gap, im_gap) below which |Re h(alpha)| and |Im h(alpha)| must be zero.

    With g the polynomial whose roots are the residues h(alpha_i), the values
    2 Re h(alpha) = h(alpha) + h(conj alpha) are roots of res_y(g(y), g(z - y))
    and 2i Im h(alpha) are roots of res_y(g(y), g(y - z)).
    """
    g = resultant(f.as_expr(), _Y - h.as_expr(), _T)
    sums = Poly(resultant(g, g.subs(_Y, _Z - _Y), _Y), _Z, domain=QQ)
    diffs = Poly(resultant(g, g.subs(_Y, _Y - _Z), _Y), _Z, domain=QQ)
    gaps = []
    for P in (sums, diffs):
        gap = _nonzero_root_gap(P)
        gaps.append(iv.mpf("inf") if gap is None else gap)
    return gaps[0], gaps[1]


def _part_state(part, gap):
    """True when part is nonzero, False when exactly zero, None while open."""
    if 0 not in part:
        return True
    if gap is not None and (part.b - part.a) < gap:
        return False
    return None


def _classify_complex_residues(f: Poly, h: Poly) -> TermClasses:
    f_coeffs = [QQ.convert(c) for c in f.rep.to_list()]
    h_coeffs = [QQ.convert(c) for c in h.rep.to_list()]
    log_seen = arc_seen = False
    pending = True
    saved_dps, iv.dps = iv.dps, 60
    try:
        if f.degree() <= _EXACT_MAX_DEG:
            re_gap, im_gap = _residue_gaps(f, h)
        else:
            re_gap = im_gap = None
        for bits in _REFINE_BITS:
            boxes = dup_isolate_complex_roots_sqf(f_coeffs, QQ, eps=QQ(1, 2 ** bits))
            log_open = arc_open = False
            for box in boxes:
                re, im = _eval_box(h_coeffs, box)
                re_state = _part_state(re, re_gap)
                im_state = _part_state(im, im_gap)
                log_seen = log_seen or re_state is True
                arc_seen = arc_seen or im_state is True
                log_open = log_open or re_state is None
                arc_open = arc_open or im_state is None
            pending = (log_open and not log_seen) or (arc_open and not arc_seen)
            if not pending:
                break
    finally:
        iv.dps = saved_dps
    if pending:
        logger.warning(
            "[classify] residue sign undecided for degree-%d factor", f.degree()
        )
    return TermClasses(has_log=log_seen, has_arctan=arc_seen, undecided=pending)


# ------ parameter families ------ #


def _coeff_rows(polys: List[Poly]) -> List[List]:
    """Row i holds the t^i coefficients across polys; zero rows dropped."""
    length = max((p.degree() for p in polys if not p.is_zero), default=-1) + 1
    rows = []
    for i in range(length):
        row = [QQ.convert(p.nth(i)) for p in polys]
        if any(row):
            rows.append(row)
    return rows


def _mp_value(coeffs: List, z):
    acc = mp.mpf(0)
    for c in coeffs:
        acc = acc * z + mp.mpf(int(QQ.numer(c))) / int(QQ.denom(c))
    return acc


def _numeric_residue_rows(f: Poly, numers: List[Poly], real_count: int) -> ClassRows:
    rows = ClassRows(numeric=True)
    f_coeffs = [QQ.convert(c) for c in f.rep.to_list()]
    df_coeffs = [QQ.convert(c) for c in f.diff(_T).rep.to_list()]
    n_coeffs = [[QQ.convert(c) for c in p.rep.to_list()] for p in numers]
    saved_dps, mp.dps = mp.dps, 50
    try:
        start = [mp.mpf(int(QQ.numer(c))) / int(QQ.denom(c)) for c in f_coeffs]
        roots = sorted(polyroots(start, maxsteps=200, extraprec=100), key=lambda z: abs(mp.im(z)))
        for z in roots[:real_count]:
            d = _mp_value(df_coeffs, mp.re(z))
            rows.log.append([float(_mp_value(c, mp.re(z)) / d) for c in n_coeffs])
        for z in roots[real_count:]:
            if mp.im(z) <= 0:
                continue
            d = _mp_value(df_coeffs, z)
            res = [_mp_value(c, z) / d for c in n_coeffs]
            rows.log.append([float(mp.re(v)) for v in res])
            rows.arctan.append([float(mp.im(v)) for v in res])
    finally:
        mp.dps = saved_dps
    logger.debug("[classify] floating residue rows for degree-%d factor", f.degree())
    return rows


def _factor_rows(f: Poly, numers: List[Poly]) -> ClassRows:
    """Rows of sum_q alpha_q numers[q] / f with f monic irreducible over QQ."""
    rows = ClassRows()
    if all(p.is_zero for p in numers):
        return rows
    deg = f.degree()
    real_count = deg if deg == 1 else int(f.count_roots())
    if real_count == deg:
        # residues at the real roots are an invertible image of the numerators
        rows.log = _coeff_rows(numers)
        return rows
    if deg == 2:
        b = QQ.convert(f.nth(1))
        B = [QQ.convert(p.nth(1)) for p in numers]
        arc = [QQ.convert(p.nth(0)) - Bq * b / 2 for p, Bq in zip(numers, B)]
        rows.log = [B] if any(B) else []
        rows.arctan = [arc] if any(arc) else []
        return rows
    return _numeric_residue_rows(f, numers, real_count)


def family_class_rows(nums: List[MultiPoly], den: MultiPoly, var: int) -> ClassRows:
    """
    Rows for the family sum_q alpha_q nums[q] / den.

    The shared denominator is never reduced against a numerator, so division,
    Hermite reduction and partial fractions all stay linear in alpha.
    """
    if not den:
        raise DomainError("denominator is identically zero")
    D = _to_univariate(den, var)
    Ns = [_to_univariate(n, var) for n in nums]
    out = ClassRows()
    if all(N.is_zero for N in Ns):
        return out

    quotients, remainders = zip(*(N.div(D) for N in Ns))
    out.rational.extend(_coeff_rows(list(quotients)))

    B, V, _ = D.cofactors(D.diff(_T))
    if B.degree() > 0:
        zero = Poly(0, _T, domain=QQ)
        hermite, logs = [], []
        for R in remainders:
            if R.is_zero:
                hermite.append(zero)
                logs.append(zero)
                continue
            rat_part, log_part = ratint_ratpart(R, D, _T)
            hermite.append(Poly(cancel(rat_part * B.as_expr()), _T, domain=QQ))
            logs.append(Poly(cancel(log_part * V.as_expr()), _T, domain=QQ))
        out.rational.extend(_coeff_rows(hermite))
    else:
        logs, V = list(remainders), D

    _, factors = V.factor_list()
    for f, _mult in factors:
        f = f.monic()
        inv = V.exquo(f).invert(f)
        out.extend(_factor_rows(f, [(C * inv).rem(f) for C in logs]))
    return out
