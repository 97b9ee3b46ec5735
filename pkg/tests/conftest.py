import math

import pytest

from fe_ivp.initial import InitialData


def rel_close(a: float, b: float, rtol: float) -> bool:
    return math.isclose(a, b, rel_tol=rtol, abs_tol=rtol)


@pytest.fixture
def data():
    """Shorthand: data("[1,2)", "x") -> InitialData."""
    return InitialData.single
