"""
(tau_rat, tau_log, tau_arc): the dimension of the space of anti-rotor
parameters that reach a rational, logarithmic or arctangent term of the
axis-path norm integral.

The axis path from 1 to s moves one coordinate at a time, so on segment k
only x_k varies and the other coordinates sit at the unit's values. The
integrand of a member sum_q alpha_q u_q on that segment is
sum_q alpha_q [u_q s^-1]_k, a univariate rational function in x_k over one
shared denominator. Each class is a set of linear conditions on alpha, and
tau_X is the rank of those conditions, so it does not depend on which basis
of the anti-rotor is chosen.
"""
from __future__ import annotations

import logging
from typing import List, Tuple

import numpy as np

from app.core.algebra.fields import symbolic_inverse
from app.core.algebra.structure import require_unit
from app.core.exactcas.classify import family_class_rows, univariate_real_factor_classify
from app.core.exactcas.linalg import rank_exact
from app.core.exactcas.poly import to_float
from app.models import Algebra, ClassRows, ParamSymMatrix, TermClasses

logger = logging.getLogger(__name__)


def axis_family(alg: Algebra, generators, k: int):
    """([num_q], den) of [u_q s^-1]_k on the k-th axis segment, one num per generator."""
    field = symbolic_inverse(alg)
    R = field.denominator.ring
    fixed = [(R.gens[i], alg.unit[i]) for i in range(alg.dim) if i != k]
    nums = []
    for generator in generators:
        num = R.zero
        for l in range(alg.dim):
            if generator[k][l] and field.numerators[l]:
                num += field.numerators[l] * generator[k][l]
        nums.append(num.subs(fixed) if fixed and num else num)
    den = field.denominator.subs(fixed) if fixed else field.denominator
    return nums, den


def generator_classes(alg: Algebra, generator) -> TermClasses:
    """Classes one generator reaches, segment by segment."""
    classes = TermClasses()
    for k in range(alg.dim):
        (num,), den = axis_family(alg, [generator], k)
        if not num:
            continue
        classes = classes.merge(univariate_real_factor_classify(num, den, k))
    return classes


def class_rows(alg: Algebra, u: ParamSymMatrix) -> ClassRows:
    require_unit(alg)
    generators = u.generators()
    rows = ClassRows()
    if not generators:
        return rows
    for k in range(alg.dim):
        nums, den = axis_family(alg, generators, k)
        if not any(nums):
            continue
        found = family_class_rows(nums, den, k)
        logger.debug(
            "[tau] %s k=%d rows rat=%d log=%d arc=%d",
            alg.name, k, len(found.rational), len(found.log), len(found.arctan),
        )
        rows.extend(found)
    return rows


def _rank(rows: List[List], ncols: int, numeric: bool) -> int:
    if not rows:
        return 0
    if numeric:
        M = np.array([[v if isinstance(v, float) else to_float(v) for v in row] for row in rows])
        return int(np.linalg.matrix_rank(M))
    return rank_exact(rows, ncols)


def tau_triple(alg: Algebra, u: ParamSymMatrix) -> Tuple[Tuple[int, int, int], bool, List[str]]:
    """Raw triple, undecided flag and warnings."""
    rows = class_rows(alg, u)
    m = u.param_count
    triple = (
        _rank(rows.rational, m, rows.numeric),
        _rank(rows.log, m, rows.numeric),
        _rank(rows.arctan, m, rows.numeric),
    )
    warnings: List[str] = []
    if rows.numeric:
        warnings.append("tau ranks use floating residues of a factor of degree >= 3")
    logger.info(
        "[tau] %s raw=(%d, %d, %d)%s", alg.name, *triple, " undecided" if rows.numeric else ""
    )
    return triple, rows.numeric, warnings
