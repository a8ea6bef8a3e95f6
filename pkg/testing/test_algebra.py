import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from sympy.polys.domains import QQ

from app.core.algebra.fields import (
    check_inverse_identity,
    star_inverse_matches,
    symbolic_inverse,
    symbolic_power,
)
from app.core.algebra.registry import (
    hankel_metric,
    metadata,
    registry,
    registry_names,
    star_signs,
    transpose_operator,
)
from app.core.algebra.structure import make_algebra, multiply, transform, validate
from app.core.errors import DomainError, UsageError
from app.core.exactcas.linalg import det_exact, inverse_exact
from app.core.exactcas.poly import poly_ring

SMALL = [
    "complex",
    "split-complex",
    "real-pair",
    "dual",
    "real-triple",
    "real-complex",
    "real-dual",
    "toeplitz:3",
    "square-zero-3",
    "semidirect-3",
    "triangular-3",
    "quaternion",
    "matrix:2",
    "heisenberg-4",
]


@pytest.mark.parametrize("name", SMALL + ["toeplitz:5", "reals:4", "triangular-5"])
def test_registry_algebras_are_associative_and_unital(name):
    report = validate(registry(name))
    assert report.associative
    assert report.unital


@pytest.mark.parametrize("name", ["spin:2", "spin:3", "cayley-dickson:3"])
def test_non_associative_registry_algebras(name):
    alg = registry(name)
    assert not alg.associative
    assert alg.unital


def test_unit_discovery():
    tri = registry("triangular-3")
    assert tri.unit == (QQ(1), QQ(1), QQ(0))
    assert tri.unit_norm_sq == 2
    assert registry("complex").unit == (QQ(1), QQ(0))
    assert registry("matrix:2").unit_norm_sq == 2


def test_nonunital_algebra():
    nil = registry("nilpotent-3")
    assert not nil.unital
    assert nil.unit is None
    with pytest.raises(DomainError):
        symbolic_inverse(nil)


def test_aliases_and_family_names():
    assert registry("C") == registry("complex")
    assert registry("toeplitz").dim == 3
    assert registry("matrix:3").dim == 9
    assert registry("cayley-dickson:3").dim == 8
    assert "toeplitz:<n>" in registry_names()


@pytest.mark.parametrize("bad", ["no-such-algebra", "toeplitz:0", "toeplitz:x", "complex:2"])
def test_registry_rejects(bad):
    with pytest.raises(UsageError):
        registry(bad)


def test_make_algebra_shape_check():
    with pytest.raises(UsageError):
        make_algebra("bad", [[[1, 0], [0, 1]], [[0, 1]]])


def test_complex_inverse():
    field = symbolic_inverse(registry("complex"))
    x, y = field.denominator.ring.gens
    assert field.denominator == x**2 + y**2
    assert field.numerators == (x, -y)


def test_matrix_inverse_denominator_is_det():
    field = symbolic_inverse(registry("matrix:2"))
    a, b, c, d = field.denominator.ring.gens
    # index q*n + p holds entry (p, q): s = [[a, c], [b, d]]
    assert field.denominator in (a * d - b * c, b * c - a * d)


@pytest.mark.parametrize("name", SMALL)
def test_inverse_identity(name):
    alg = registry(name)
    assert check_inverse_identity(alg, symbolic_inverse(alg))


@pytest.mark.parametrize("name", ["toeplitz:3", "quaternion", "real-complex"])
@pytest.mark.parametrize("j", [2, 3])
def test_power_recursion(name, j):
    alg = registry(name)
    R = poly_ring(alg.dim)
    lower = symbolic_power(alg, j)
    upper = symbolic_power(alg, j + 1)
    assert list(upper.numerators) == multiply(alg, list(lower.numerators), list(R.gens))


def test_negative_power_times_square_is_one():
    alg = registry("complex")
    inv2 = symbolic_power(alg, -2)
    R = inv2.denominator.ring
    x, y = R.gens
    square = multiply(alg, [x, y], [x, y])
    product = multiply(alg, list(inv2.numerators), square)
    assert product == [inv2.denominator, R.zero]


@pytest.mark.parametrize("name", ["spin:2", "spin:3", "cayley-dickson:2", "cayley-dickson:3", "quaternion"])
def test_star_inverse(name):
    alg = registry(name)
    assert star_inverse_matches(alg, star_signs(alg))


def test_metadata_and_distinguished_matrices():
    assert metadata("matrix:2")["special"]["omega"] == "matrix_columns"
    assert star_signs(registry("complex")) is None
    T = transpose_operator(2)
    # vec([[a, c], [b, d]]) = (a, b, c, d); transpose swaps b and c
    assert [row.index(1) for row in T] == [0, 2, 1, 3]
    assert hankel_metric(3, [1, 2, 3]) == [[1, 2, 3], [2, 3, 0], [3, 0, 0]]
    with pytest.raises(UsageError):
        hankel_metric(3, [1, 2])


def test_transform_split_to_pair():
    moved = transform(registry("split-complex"), [[1, -1], [1, 1]])
    assert moved.structure == registry("real-pair").structure
    assert moved.unit == (QQ(1), QQ(1))


def test_transform_rejects_singular_and_misshapen():
    with pytest.raises(DomainError):
        transform(registry("complex"), [[1, 2], [2, 4]])
    with pytest.raises(UsageError):
        transform(registry("complex"), [[1, 0, 0], [0, 1, 0], [0, 0, 1]])


matrices3 = st.lists(st.integers(min_value=-3, max_value=3), min_size=9, max_size=9)


@given(matrices3)
def test_transform_round_trip(entries):
    K = [[QQ(entries[3 * i + j]) for j in range(3)] for i in range(3)]
    assume(det_exact(K) != 0)
    alg = registry("toeplitz:3")
    back = transform(transform(alg, K), inverse_exact(K))
    assert back.structure == alg.structure
    assert back.unit == alg.unit
