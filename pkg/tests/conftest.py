import numpy as np
import pytest
from hypothesis import strategies as st

from boolspec.core import BooleanFunction, from_points


@st.composite
def boolean_functions(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    value = draw(st.integers(0, (1 << (1 << n)) - 1))
    return BooleanFunction.from_int(n, value)


@pytest.fixture
def ball3():
    """Hamming ball of radius 1 around 0 in F_2^3."""
    return from_points(3, [0, 1, 2, 4])


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)
