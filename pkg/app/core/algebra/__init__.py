from .structure import (  # noqa: F401
    left_regular_rep,
    make_algebra,
    multiply,
    require_unit,
    transform,
    validate,
)
from .fields import field_for, symbolic_inverse, symbolic_power  # noqa: F401
from .registry import (  # noqa: F401
    hankel_metric,
    metadata,
    registry,
    registry_names,
    star_signs,
    transpose_operator,
)
