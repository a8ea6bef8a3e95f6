from .trials import antirotor_type_survey, random_isomorphism_trials  # noqa: F401
from .selftest import case_names, run_selftest, scoreboard  # noqa: F401
