import numpy as np
import pytest

from app.core.algebra.registry import registry
from app.core.algebra.structure import transform
from app.core.harness.tables import SMALL_UNITAL, THREE_DIM, TWO_DIM
from app.core.harness.trials import random_invertible
from app.core.invariants import build_report, compare, epimorphism_dim_check, is_simple, sextuple
from app.core.invariants.sextuple import (
    _max_rank_probabilistic,
    det_polynomial,
    is_definite_quadratic,
    max_rank,
    min_nonzero_rank,
    parameter_ring,
    sensitive_param_count,
)
from app.core.invariants.tau import generator_classes, tau_triple
from app.core.invariants.variety import variety_summary
from app.core.skewer import anti_rotor
from app.models import ParamSymMatrix, TermClasses


@pytest.mark.parametrize("name", list(THREE_DIM))
def test_three_dimensional_invariants(name):
    row = THREE_DIM[name]
    report = build_report(registry(name))
    assert report.sextuple == row["sextuple"]
    assert report.tau_reduced == row["reduced"]
    assert not report.tau_undecided


@pytest.mark.parametrize("name", list(TWO_DIM))
def test_two_dimensional_triples(name):
    report = build_report(registry(name))
    assert report.tau_reduced == TWO_DIM[name]["reduced"]


def test_complex_ranks():
    report = build_report(registry("complex"))
    assert report.max_rank == 2
    assert report.max_rank_method == "exact"
    assert report.min_nonzero_rank == 2
    assert report.min_rank_certainty == "certified"
    assert report.variety.dim == 0
    assert report.variety.component_count == 1


def test_complex_det_polynomial():
    u = anti_rotor(registry("complex"))
    a, b = parameter_ring(2).gens
    assert det_polynomial(u) == -(a**2) - b**2


def test_definite_quadratic():
    a, b = parameter_ring(2).gens
    assert is_definite_quadratic(a**2 + b**2, 2)
    assert is_definite_quadratic(-(a**2) - 3 * b**2, 2)
    assert not is_definite_quadratic(a**2 - b**2, 2)
    assert not is_definite_quadratic(a**2, 2)
    assert not is_definite_quadratic(a**2 * b, 2)


def test_sensitive_count_is_essential_variables():
    a, b, c = parameter_ring(3).gens
    assert sensitive_param_count(-a * c**2, 3) == 2
    assert sensitive_param_count(a * b * c, 3) == 3
    assert sensitive_param_count(parameter_ring(3).zero, 3) == 0
    # (a + b)^2 depends on a single linear combination
    assert sensitive_param_count((a + b) ** 2, 3) == 1


def test_variety_conventions():
    R = parameter_ring(3)
    a, b, c = R.gens
    assert (variety_summary(R.zero, 3, 0).dim, variety_summary(R.zero, 3, 0).component_count) == (3, 0)
    linear = variety_summary(a * b * c, 3, 3)
    assert (linear.dim, linear.component_count) == (2, 3)
    mixed = variety_summary(-a * (b**2 + c**2), 3, 3)
    assert (mixed.dim, mixed.component_count) == (2, 2)
    odd = variety_summary(a**3 + b**3 + c**3 - 3 * a * b * c + a * b, 3, 3)
    assert not odd.supported


def test_variety_quadric_sharing_variables():
    a, b, c = parameter_ring(3).gens
    apart = variety_summary((a + b) * ((a - b) ** 2 + c**2), 3, 3)
    assert (apart.dim, apart.component_count) == (2, 2)
    # the kernel a = b, c = 0 lies inside a - b = 0
    inside = variety_summary((a - b) * ((a - b) ** 2 + c**2), 3, 3)
    assert (inside.dim, inside.component_count) == (2, 1)
    assert not variety_summary(a * (b**2 - 2 * c**2), 3, 3).supported


@pytest.mark.parametrize("name", ["real-complex", "real-dual"])
def test_variety_survives_change_of_basis(name):
    alg = registry(name)
    base = build_report(alg).variety
    rng = np.random.default_rng(9)
    for _ in range(3):
        moved = build_report(transform(alg, random_invertible(alg.dim, rng))).variety
        assert moved.supported
        assert (moved.dim, moved.component_count) == (base.dim, base.component_count)


def test_probabilistic_rank_agrees_with_exact():
    u = anti_rotor(registry("real-dual"))
    det = det_polynomial(u)
    exact, method = max_rank(u, det)
    assert method == "exact"
    assert _max_rank_probabilistic(u, seed=7) == exact == 3


def test_min_rank_reaches_one_on_small_grid():
    u = anti_rotor(registry("real-triple"))
    rank, certainty = min_nonzero_rank(u, det_polynomial(u), 1)
    assert rank == 1
    assert certainty == "certified"


def test_zero_parameter_family():
    u = ParamSymMatrix.from_generators(2, [])
    report = sextuple(u)
    assert report.m == 0
    assert report.max_rank == 0


@pytest.mark.parametrize(
    "a, b, label",
    [
        ("complex", "dual", "not-isomorphic"),
        ("complex", "split-complex", "not-isomorphic"),
        ("split-complex", "dual", "not-isomorphic"),
        ("split-complex", "real-pair", "indistinguishable"),
        ("complex", "real-triple", "not-isomorphic"),
    ],
)
def test_compare(a, b, label):
    verdict = compare(build_report(registry(a)), build_report(registry(b)))
    assert verdict.label == label
    assert bool(verdict.reasons) == (label == "not-isomorphic")


def test_split_vs_dual_witness_mentions_tau():
    verdict = compare(build_report(registry("split-complex")), build_report(registry("dual")))
    assert any("tau" in r for r in verdict.reasons)


def test_epimorphism_dimension_check():
    quaternion = build_report(registry("quaternion"))
    reals = build_report(registry("reals:4"))
    assert is_simple(quaternion)
    assert not is_simple(reals)
    verdict = epimorphism_dim_check(quaternion, reals)
    assert verdict.label == "no-epimorphism"
    assert "A is simple" in verdict.reasons
    assert epimorphism_dim_check(reals, quaternion).label == "not-excluded"


# ------ basis independence ------ #


@pytest.mark.parametrize("name", SMALL_UNITAL)
def test_transformed_copy_is_indistinguishable(name):
    alg = registry(name)
    base = build_report(alg)
    assert not base.tau_undecided
    rng = np.random.default_rng(5)
    for _ in range(3):
        moved = transform(alg, random_invertible(alg.dim, rng))
        report = build_report(moved)
        assert report.tau_raw == base.tau_raw
        verdict = compare(base, report)
        assert verdict.label == "indistinguishable", verdict.reasons


def test_tau_ignores_the_anti_rotor_basis():
    alg = registry("complex")
    u = anti_rotor(alg)
    a, b = u.generators()
    mixed = [[[a[i][j] + b[i][j] for j in range(2)] for i in range(2)],
             [[a[i][j] - 2 * b[i][j] for j in range(2)] for i in range(2)]]
    assert tau_triple(alg, ParamSymMatrix.from_generators(2, mixed))[0] == tau_triple(alg, u)[0] == (0, 1, 1)
    # each generator alone reaches both classes, the span still has one of each
    assert generator_classes(alg, mixed[0]) == TermClasses(has_log=True, has_arctan=True)
