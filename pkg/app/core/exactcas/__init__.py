from .poly import (  # noqa: F401
    MultiPoly,
    format_rational,
    parse_rational,
    poly_arith,
    poly_derivative,
    poly_ring,
)
from .linalg import (  # noqa: F401
    matrix_adjugate,
    matrix_det_poly,
    nullspace_exact,
    rank_exact,
)
from .classify import univariate_real_factor_classify  # noqa: F401
