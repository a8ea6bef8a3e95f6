import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate as sp_integrate
from sympy.polys.domains import QQ

from app.core.errors import DomainError, UsageError
from app.core.exactcas.classify import family_class_rows, univariate_real_factor_classify
from app.core.exactcas.linalg import (
    det_exact,
    inverse_exact,
    matrix_adjugate,
    matrix_det_poly,
    nullspace_exact,
    poly_matmul,
    rank_exact,
    solve_affine,
)
from app.core.exactcas.poly import (
    format_rational,
    linear_poly,
    parse_rational,
    poly_arith,
    poly_derivative,
    poly_ring,
    total_degree,
    variables_present,
)

small_ints = st.integers(min_value=-4, max_value=4)


# ------ rationals ------ #


@pytest.mark.parametrize(
    "raw, text",
    [("3/4", "3/4"), ("6/8", "3/4"), (5, "5"), ("-2/1", "-2"), (0.1, "1/10"), ("0", "0")],
)
def test_parse_and_format_rational(raw, text):
    assert format_rational(parse_rational(raw)) == text


@pytest.mark.parametrize("bad", ["abc", "1/0", True, None])
def test_parse_rational_rejects(bad):
    with pytest.raises(UsageError):
        parse_rational(bad)


# ------ polynomials ------ #


def test_poly_arith_examples():
    R = poly_ring(2)
    x, y = R.gens
    assert poly_arith(x + 1, x - 1, "mul") == x**2 - 1
    assert poly_arith(x**2 * y, R.zero, "add") == x**2 * y
    assert poly_arith(x**2 * y + 2 * x * y, y, "mul") == x**2 * y**2 + 2 * x * y**2


def test_poly_arith_variable_count_mismatch():
    x = poly_ring(1).gens[0]
    y = poly_ring(2).gens[1]
    with pytest.raises(UsageError):
        poly_arith(x, y, "add")
    with pytest.raises(UsageError):
        poly_arith(x, x, "div")


def test_poly_derivative_examples():
    R = poly_ring(2)
    x, y = R.gens
    assert poly_derivative(x**2 * y, 0) == 2 * x * y
    assert poly_derivative(x**2, 1) == R.zero
    assert poly_derivative(x**3 - 3 * x * y**2, 0) == 3 * x**2 - 3 * y**2
    with pytest.raises(UsageError):
        poly_derivative(x, 2)


def test_degree_and_support():
    R = poly_ring(3)
    x, y, z = R.gens
    p = x * z**2 + 3
    assert total_degree(p) == 3
    assert total_degree(R.zero) == -1
    assert variables_present(p) == [0, 2]


# ------ polynomial matrices ------ #


def test_matrix_det_poly_examples():
    R = poly_ring(2)
    x, y = R.gens
    assert matrix_det_poly([[x, R.one], [R.one, x]]) == x**2 - 1
    assert matrix_det_poly([[x, -y], [y, x]]) == x**2 + y**2


def test_det_of_toeplitz_left_rep():
    R = poly_ring(3)
    x1, x2, x3 = R.gens
    L = [[x1, R.zero, R.zero], [x2, x1, R.zero], [x3, x2, x1]]
    assert matrix_det_poly(L) == x1**3


def test_matrix_adjugate_examples():
    R = poly_ring(4)
    a, b, c, d = R.gens
    assert matrix_adjugate([[a, b], [c, d]]) == [[d, -b], [-c, a]]
    eye = [[R.one if i == j else R.zero for j in range(3)] for i in range(3)]
    assert matrix_adjugate(eye) == eye
    x, y = a, b
    assert matrix_adjugate([[x, -y], [y, x]]) == [[x, y], [-y, x]]


@given(st.lists(st.lists(small_ints, min_size=3, max_size=3), min_size=9, max_size=9))
def test_adjugate_identity(coeffs):
    R = poly_ring(3)
    M = [[linear_poly(R, coeffs[3 * i + j]) for j in range(3)] for i in range(3)]
    det = matrix_det_poly(M)
    product = poly_matmul(M, matrix_adjugate(M))
    for i in range(3):
        for j in range(3):
            assert product[i][j] == (det if i == j else R.zero)


# ------ rational matrices ------ #


def test_nullspace_examples():
    basis = nullspace_exact([[1, 1]])
    assert basis == [[QQ(-1), QQ(1)]]
    zero = nullspace_exact([[0, 0, 0], [0, 0, 0]])
    assert zero == [[QQ(int(i == j)) for i in range(3)] for j in range(3)]


@given(st.lists(st.lists(small_ints, min_size=4, max_size=4), min_size=1, max_size=5))
def test_rank_nullity(rows):
    basis = nullspace_exact(rows, 4)
    assert rank_exact(rows, 4) + len(basis) == 4
    for v in basis:
        for row in rows:
            assert sum(QQ(a) * b for a, b in zip(row, v)) == 0


def test_solve_affine_minimum_norm():
    particular, null = solve_affine([[1, 1]], [2], 2)
    assert particular == [QQ(1), QQ(1)]
    assert len(null) == 1
    assert solve_affine([[1, 1], [1, 1]], [1, 2], 2) is None


def test_inverse_exact():
    K = [[QQ(1), QQ(-1)], [QQ(1), QQ(1)]]
    assert inverse_exact(K) == [[QQ(1, 2), QQ(1, 2)], [QQ(-1, 2), QQ(1, 2)]]
    assert det_exact(K) == 2
    with pytest.raises(DomainError):
        inverse_exact([[QQ(1), QQ(2)], [QQ(2), QQ(4)]])


# ------ real-factor classification ------ #


def _classes(num, den):
    R = poly_ring(1)
    t = R.gens[0]
    c = univariate_real_factor_classify(num(t, R), den(t, R), 0)
    flags = (c.has_rational, c.has_log, c.has_arctan, c.undecided)
    assert all(isinstance(x, bool) for x in flags)
    return flags


@pytest.mark.parametrize(
    "num, den, expected",
    [
        (lambda t, R: R.one, lambda t, R: t**2 + 1, (False, False, True, False)),
        (lambda t, R: t, lambda t, R: t**2 + 1, (False, True, False, False)),
        (lambda t, R: R.one, lambda t, R: t, (False, True, False, False)),
        (lambda t, R: R.one, lambda t, R: t**2, (True, False, False, False)),
        (lambda t, R: t**2, lambda t, R: R.one, (True, False, False, False)),
        (lambda t, R: R.one, lambda t, R: t**2 - 2, (False, True, False, False)),
        (lambda t, R: R.one, lambda t, R: (t**2 + 1) ** 2, (True, False, True, False)),
        (lambda t, R: R.one, lambda t, R: t**3 - 2, (False, True, True, False)),
        # residues with an exactly zero real or imaginary part
        (lambda t, R: t, lambda t, R: t**4 + 1, (False, False, True, False)),
        (lambda t, R: t**3, lambda t, R: t**4 + 1, (False, True, False, False)),
        (lambda t, R: t, lambda t, R: t**4 - 2, (False, True, False, False)),
        (lambda t, R: R.one, lambda t, R: t**4 + 1, (False, True, True, False)),
        (lambda t, R: t**2, lambda t, R: t**3 - 2, (False, True, False, False)),
    ],
)
def test_univariate_classification(num, den, expected):
    assert _classes(num, den) == expected


# integrand num/den and flags checked against a closed-form antiderivative
_ORACLE_CASES = [
    ("1", "t**2 + 1"),
    ("t", "t**2 + 1"),
    ("1", "(t**2 + 1)**2"),
    ("1", "t**3 - 2"),
    ("t**2", "t**3 - 2"),
    ("t", "t**4 + 1"),
    ("1", "t**4 + 1"),
    ("t", "t**4 - 2"),
    ("t**3 + 1", "(t**2 + 1)*(t - 3)"),
]


def _ring_poly(R, expr, t):
    return R.from_dict(sp.Poly(expr, t).as_dict())


@pytest.mark.parametrize("num, den", _ORACLE_CASES)
def test_classification_matches_antiderivative(num, den):
    t = sp.Symbol("t", real=True)
    N = sp.expand(sp.sympify(num, locals={"t": t}))
    D = sp.expand(sp.sympify(den, locals={"t": t}))
    F = sp.integrate(N / D, t)
    assert not F.has(sp.RootSum)

    # the closed form is right: compare against adaptive quadrature on [0, 1]
    f = sp.lambdify(t, N / D, "math")
    want, _ = sp_integrate.quad(f, 0, 1, epsabs=1e-12, epsrel=1e-12)
    got = complex(sp.N(F.subs(t, 1) - F.subs(t, 0), 30))
    assert got.real == pytest.approx(want, abs=1e-9)

    R = poly_ring(1)
    cls = univariate_real_factor_classify(_ring_poly(R, N, t), _ring_poly(R, D, t), 0)
    assert not cls.undecided
    assert cls.has_log == F.has(sp.log)
    assert cls.has_arctan == F.has(sp.atan)
    rest = F.replace(sp.log, lambda *a: 0).replace(sp.atan, lambda *a: 0)
    assert cls.has_rational == (sp.simplify(sp.diff(rest, t)) != 0)


def test_family_rows_split_log_and_arctan():
    R = poly_ring(1)
    t = R.gens[0]
    rows = family_class_rows([R.one, t], t**2 + 1, 0)
    assert rows.rational == []
    assert rows.log == [[0, 1]]
    assert rows.arctan == [[1, 0]]
    assert not rows.numeric


def test_family_rows_hermite_part():
    R = poly_ring(1)
    t = R.gens[0]
    rows = family_class_rows([R.one, t], (t**2 + 1) ** 2, 0)
    assert rank_exact(rows.rational, 2) == 2
    assert rows.log == []
    assert rows.arctan == [[QQ(1, 2), 0]]


def test_family_rows_floating_for_irreducible_cubic():
    R = poly_ring(1)
    t = R.gens[0]
    rows = family_class_rows([R.one, t**2], t**3 - 2, 0)
    assert rows.numeric
    assert len(rows.log) == 2 and len(rows.arctan) == 1
    # t^2 / (t^3 - 2) has real residues 1/3 everywhere
    assert rows.arctan[0][1] == pytest.approx(0.0, abs=1e-12)
    assert rows.arctan[0][0] != pytest.approx(0.0, abs=1e-6)


def test_classification_zero_denominator():
    R = poly_ring(1)
    with pytest.raises(DomainError):
        univariate_real_factor_classify(R.one, R.zero, 0)
