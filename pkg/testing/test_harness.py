import numpy as np
import pytest
from sympy.polys.domains import QQ

from app.core.algebra.registry import registry
from app.core.errors import UsageError
from app.core.exactcas.linalg import det_exact
from app.core.harness import antirotor_type_survey, case_names, random_isomorphism_trials, run_selftest, scoreboard
from app.core.harness.selftest import select
from app.core.harness.tables import SMALL_UNITAL, SPLIT_TO_PAIR
from app.core.harness.trials import certified_fields, random_invertible
from app.core.invariants import build_report


# ------ isomorphism trials ------ #


def test_trials_on_complex():
    tally = random_isomorphism_trials(registry("complex"), count=10, seed=1, invariants=True)
    assert tally.ok
    assert tally.passed == 10


def test_trials_with_identity_and_fixed_matrix():
    eye = [[QQ(1), QQ(0)], [QQ(0), QQ(1)]]
    assert random_isomorphism_trials(registry("dual"), matrices=[eye]).passed == 1
    split = [[QQ(v) for v in row] for row in SPLIT_TO_PAIR]
    assert random_isomorphism_trials(registry("split-complex"), matrices=[split], invariants=True).ok


@pytest.mark.parametrize("name", SMALL_UNITAL)
def test_trials_compare_tau(name):
    alg = registry(name)
    assert "tau" in certified_fields(build_report(alg))
    tally = random_isomorphism_trials(alg, count=4, seed=11, invariants=True)
    assert tally.ok, tally.failures


def test_trials_respect_dimension_cap():
    with pytest.raises(UsageError):
        random_isomorphism_trials(registry("reals:5"), count=1)


def test_random_invertible_is_seeded():
    a = random_invertible(3, np.random.default_rng(4))
    b = random_invertible(3, np.random.default_rng(4))
    assert a == b
    assert det_exact(a) != 0


# ------ field-type survey ------ #


def test_survey_on_complex():
    result = antirotor_type_survey(registry("complex"), [3, -1, 2])
    assert result.labels[0] == "inverse"
    assert result.dims == [2, 2, 2]
    assert result.all_equal
    single = antirotor_type_survey(registry("complex"), [2])
    assert single.equal == [[True]]


@pytest.mark.parametrize("powers", [[0], [1], [5], [-4]])
def test_survey_rejects_powers(powers):
    with pytest.raises(UsageError):
        antirotor_type_survey(registry("complex"), powers)


def test_survey_on_nonunital():
    nil = registry("nilpotent-3")
    with pytest.raises(UsageError):
        antirotor_type_survey(nil, [-2, 2])
    result = antirotor_type_survey(nil, [2, 3, 4])
    assert result.dims == [3, 4, 6]
    assert not result.all_equal


# ------ self-test runner ------ #


def test_select():
    assert [c.name for c in select(["controls"])] == [
        "dual-identity-path",
        "complex-vs-dual",
        "complex-vs-split",
        "split-vs-pair",
    ]
    assert len(select(None)) == len(case_names())
    assert [c.name for c in select(["dual", " "])] == ["dual"]
    with pytest.raises(UsageError):
        select(["no-such-case"])


def test_run_selftest_controls():
    results = run_selftest(only=["controls"], workers=1, progress=False)
    assert all(r.passed for r in results), [r.detail for r in results if not r.passed]
    df = scoreboard(results)
    assert list(df.columns) == ["group", "case", "status", "detail"]
    assert set(df["status"]) == {"PASS"}
    assert "seconds" in scoreboard(results, timing=True).columns


def test_run_selftest_two_dimensional_rows():
    results = run_selftest(only=["complex", "split-complex", "real-pair", "dual", "split-to-pair"], progress=False)
    assert [r.name for r in results] == ["complex", "split-complex", "real-pair", "dual", "split-to-pair"]
    assert all(r.passed for r in results)


@pytest.mark.slow
def test_full_selftest():
    results = run_selftest(workers=2, progress=False)
    failed = [(r.name, r.detail) for r in results if not r.passed]
    assert not failed
