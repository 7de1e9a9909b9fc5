import os
import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from tenselat.frames import Frame  # noqa: E402
from tenselat.order import validate_lattice  # noqa: E402
from tenselat.random_instances import random_frame, random_fss, random_lattice  # noqa: E402
from tenselat.worked_examples import diamond_fss, swap_frame, two_chain  # noqa: E402

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


# structures are drawn through seeds so shrinking stays meaningful and cheap
seeds = st.integers(min_value=0, max_value=2**32 - 1)


@st.composite
def lattices(draw, max_size=6):
    return random_lattice(np.random.default_rng(draw(seeds)), max_size)


@st.composite
def fsss(draw, max_size=6):
    rng = np.random.default_rng(draw(seeds))
    return random_fss(rng, random_lattice(rng, max_size))


@st.composite
def frames(draw, max_nodes=3):
    return random_frame(np.random.default_rng(draw(seeds)), max_nodes)


@pytest.fixture
def H5():
    return diamond_fss()


@pytest.fixture
def L2():
    return two_chain()


@pytest.fixture
def J3():
    return swap_frame()


@pytest.fixture
def square():
    """The 2x2 Boolean lattice ``0 < p, q < 1``."""
    return validate_lattice(["0", "p", "q", "1"], [("0", "p"), ("0", "q"), ("p", "1"), ("q", "1")])


@pytest.fixture
def pentagon():
    """N5: ``0 < x < y < 1`` and ``0 < z < 1``."""
    return validate_lattice(
        ["0", "x", "y", "z", "1"], [("0", "x"), ("x", "y"), ("y", "1"), ("0", "z"), ("z", "1")]
    )


@pytest.fixture
def loop_frame():
    return Frame(["t"], [("t", "t")])
