import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from sympy.polys.domains import QQ

from app.core.algebra.fields import symbolic_inverse, symbolic_power
from app.core.algebra.registry import registry, transpose_operator
from app.core.algebra.structure import transform
from app.core.errors import DomainError, UsageError
from app.core.exactcas.linalg import det_exact
from app.core.harness.tables import THREE_DIM, TWO_DIM, hankel_generators
from app.core.skewer import (
    anti_rotor,
    assemble_curl_system,
    congruent,
    curl_polynomials,
    curl_residual_numeric,
    generator_rank,
    membership_check,
    normalized_subspace,
    subspace_equal,
    upper_positions,
)
from app.models import FieldMode, ParamSymMatrix


def family(n, gens):
    return ParamSymMatrix.from_generators(n, gens)


@pytest.mark.parametrize("name", list(TWO_DIM))
def test_two_dimensional_table(name):
    u = anti_rotor(registry(name))
    assert u.param_count == 2
    assert subspace_equal(u, family(2, TWO_DIM[name]["generators"]))


@pytest.mark.parametrize("name", list(THREE_DIM))
def test_three_dimensional_table(name):
    row = THREE_DIM[name]
    u = anti_rotor(registry(name))
    assert u.param_count == len(row["generators"])
    assert subspace_equal(u, family(3, row["generators"]))


def test_complex_canonical_generators():
    u = anti_rotor(registry("complex"))
    assert u.generators() == [
        ((QQ(1), QQ(0)), (QQ(0), QQ(-1))),
        ((QQ(0), QQ(1)), (QQ(1), QQ(0))),
    ]


def test_curl_system_shape():
    alg = registry("complex")
    system = assemble_curl_system(alg, symbolic_inverse(alg))
    assert system.unknowns == upper_positions(2) == ((0, 0), (0, 1), (1, 1))
    assert system.pair_count == 1
    assert system.row_count >= 1


def test_generators_have_zero_curl():
    alg = registry("real-complex")
    field = symbolic_inverse(alg)
    for g in anti_rotor(alg).generators():
        assert not any(curl_polynomials(field, g).values())
        assert curl_residual_numeric(field, g, [1.1, 0.9, 0.2]) < 1e-6


def test_identity_on_dual_curls():
    alg = registry("dual")
    field = symbolic_inverse(alg)
    identity = [[1, 0], [0, 1]]
    assert any(curl_polynomials(field, identity).values())
    assert curl_residual_numeric(field, identity, [1.5, 0.7]) > 1e-3


def test_membership():
    u = anti_rotor(registry("complex"))
    found = membership_check(u, [[2, 3], [3, -2]])
    assert found.member
    assert found.coordinates == (QQ(2), QQ(3))
    assert not membership_check(u, [[1, 0], [0, 1]]).member
    with pytest.raises(UsageError):
        membership_check(u, [[1, 2], [3, 4]])


def test_complex_normalized_subspace():
    alg = registry("complex")
    sub = normalized_subspace(alg, anti_rotor(alg))
    assert sub.consistent
    assert family(2, [sub.particular]).generator(0) == ((QQ(1), QQ(0)), (QQ(0), QQ(-1)))
    assert subspace_equal(sub.directions, family(2, [[[0, 1], [1, 0]]]))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_toeplitz_is_hankel(n):
    alg = registry(f"toeplitz:{n}")
    gens = hankel_generators(n)
    u = anti_rotor(alg)
    assert subspace_equal(u, family(n, gens))
    sub = normalized_subspace(alg, u)
    assert family(n, [sub.particular]).generator(0) == family(n, [gens[0]]).generator(0)


def test_matrix_2_is_transpose():
    u = anti_rotor(registry("matrix:2"))
    assert u.param_count == 1
    assert subspace_equal(u, family(4, [transpose_operator(2)]))


@pytest.mark.slow
def test_matrix_3_is_transpose():
    u = anti_rotor(registry("matrix:3"))
    assert u.param_count == 1
    assert subspace_equal(u, family(9, [transpose_operator(3)]))


def test_quaternion_antirotor():
    u = anti_rotor(registry("quaternion"))
    metric = np.diag([1, -1, -1, -1]).astype(int).tolist()
    assert subspace_equal(u, family(4, [metric]))


@pytest.mark.parametrize("name", ["complex", "dual", "toeplitz:3", "real-complex"])
@pytest.mark.parametrize("j", [2, 3, -2])
def test_power_modes_agree_with_inverse(name, j):
    alg = registry(name)
    assert subspace_equal(anti_rotor(alg), anti_rotor(alg, FieldMode("power", j)))


def test_nilpotent_power_dimensions():
    alg = registry("nilpotent-3")
    dims = [anti_rotor(alg, FieldMode("power", j)).param_count for j in (2, 3, 4)]
    assert dims == [3, 4, 6]
    with pytest.raises(DomainError):
        anti_rotor(alg)


def test_power_field_is_polynomial():
    field = symbolic_power(registry("nilpotent-3"), 2)
    assert field.denominator == field.denominator.ring.one


def test_generator_rank_equals_dimension():
    u = anti_rotor(registry("real-triple"))
    assert generator_rank(u) == u.param_count == 3


@settings(max_examples=10, deadline=None)
@given(st.lists(st.integers(min_value=-3, max_value=3), min_size=4, max_size=4))
def test_congruence_under_change_of_basis(entries):
    K = [[QQ(entries[0]), QQ(entries[1])], [QQ(entries[2]), QQ(entries[3])]]
    assume(det_exact(K) != 0)
    for name in ("complex", "dual"):
        alg = registry(name)
        moved = transform(alg, K)
        assert subspace_equal(anti_rotor(alg), congruent(anti_rotor(moved), K))
