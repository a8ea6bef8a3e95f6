from .curl import (  # noqa: F401
    anti_rotor,
    assemble_curl_system,
    curl_polynomials,
    curl_residual_numeric,
    upper_positions,
)
from .subspace import (  # noqa: F401
    congruent,
    generator_rank,
    membership_check,
    normalized_subspace,
    subspace_equal,
)
