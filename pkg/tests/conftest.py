import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from netcoord import graph


@st.composite
def graphs(draw, min_n=2, max_n=8, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    if connected:
        seed = draw(st.integers(0, 2**32 - 1))
        m = draw(st.integers(n - 1, len(pairs)))
        return graph.random_connected_graph(n, m, seed)
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return graph.new_from_edges(n, [e for e, keep in zip(pairs, mask) if keep])


thetas = st.floats(-1.0, 2.0, allow_nan=False)
betas = st.floats(0.0, 3.0, allow_nan=False)


@pytest.fixture
def triangle():
    return graph.complete_graph(3)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
