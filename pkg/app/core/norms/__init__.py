from .evaluate import NumericAlgebra, eval_norm, staircase_path  # noqa: F401
from .checks import (  # noqa: F401
    check_duality,
    check_group_law,
    check_homogeneity,
    check_multiplicativity,
    check_path_independence,
    check_reciprocity,
    check_special_vs_det,
    check_star_inverse,
    combine_pairs,
    special_metric,
)
