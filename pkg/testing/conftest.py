import hypothesis
import numpy as np
import pytest

from app.core.algebra.registry import registry

np.seterr(all="warn")

hypothesis.settings.register_profile("fast", max_examples=5)
hypothesis.settings.register_profile("debugger", report_multiple_bugs=False)
hypothesis.settings.register_profile("ci", max_examples=25, deadline=None)
hypothesis.settings.load_profile("ci")


@pytest.fixture
def reg():
    """Registry lookup, so tests read ``reg("complex")``."""
    return registry


@pytest.fixture
def complex_alg():
    return registry("complex")


@pytest.fixture
def dual_alg():
    return registry("dual")


@pytest.fixture
def tol():
    return 1e-8
